"""Symmetric-function calculus on squared variables.

Expands products f(x_1)...f(x_m) of an even series by weight, and rewrites
even symmetric polynomials in elementary-symmetric coordinates of the squared
variables (the classical leading-term subtraction algorithm).  Each x_i has
topological degree 2, so x_i^2 has degree 4 and the elementary symmetric
polynomial of the squares sigma_j gets degree 4j.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .errors import DomainError
from .poly import Exponents, GeneratorTable, GradedPoly, RingMap
from .series import EvenPowerSeries

__all__ = [
    "elementary_map",
    "elementary_table",
    "product_expand",
    "symmetry_witness",
    "to_elementary",
    "variable_table",
]

VARIABLE_DEGREE = 2


def variable_table(n_vars: int) -> GeneratorTable:
    """The ring Q[x_1..x_n] with every x_i of degree 2."""
    if n_vars < 1:
        raise DomainError(f"need at least one variable, got {n_vars}")
    return GeneratorTable(tuple((f"x{i}", VARIABLE_DEGREE) for i in range(1, n_vars + 1)))


def elementary_table(n_vars: int) -> GeneratorTable:
    """The ring Q[s_1..s_n] with s_j standing for sigma_j(x_1^2..x_n^2), degree 4j."""
    return GeneratorTable(tuple((f"s{j}", 4 * j) for j in range(1, n_vars + 1)))


def product_expand(f: EvenPowerSeries, n_vars: int, max_weight: int) -> GradedPoly:
    """Expand f(x_1)*...*f(x_{n_vars}) keeping terms of degree <= max_weight.

    The series variable is substituted by each x_i of degree 2, so the x^(2k)
    coefficient contributes monomials of degree 4k; the series must therefore
    be truncated at order >= max_weight/2.
    """
    if max_weight < 0 or max_weight % 2 != 0:
        raise DomainError(f"max_weight must be a non-negative even integer, got {max_weight}")
    if 2 * f.truncation_order < max_weight:
        raise DomainError(
            f"series truncated at order {f.truncation_order} cannot reach weight {max_weight}"
        )
    table = variable_table(n_vars)
    result = GradedPoly.constant(table, 1)
    for i in range(n_vars):
        factor_terms: dict[Exponents, Fraction] = {}
        for k, coeff in enumerate(f.coeffs):
            if coeff == 0 or 4 * k > max_weight:
                continue
            exps = [0] * n_vars
            exps[i] = 2 * k
            factor_terms[tuple(exps)] = coeff
        product = result * GradedPoly(table, factor_terms)
        result = GradedPoly(
            table,
            {e: c for e, c in product.items() if table.term_degree(e) <= max_weight},
        )
    return result


def symmetry_witness(s: GradedPoly) -> tuple[int, int] | None:
    """Return a transposition (i, j) of variables that fails to fix s, if any."""
    n = s.table.arity
    terms = {e: c for e, c in s.items()}
    for i in range(n - 1):
        j = i + 1
        for e, c in terms.items():
            swapped = list(e)
            swapped[i], swapped[j] = swapped[j], swapped[i]
            if terms.get(tuple(swapped), Fraction(0)) != c:
                return (i + 1, j + 1)
    return None


def _elementary_polynomials(table: GeneratorTable) -> list[GradedPoly]:
    # e_j evaluated on the squared variables, as polynomials in the x_i.
    n = table.arity
    out = []
    for j in range(1, n + 1):
        terms: dict[Exponents, Fraction] = {}
        for subset in combinations(range(n), j):
            exps = [0] * n
            for i in subset:
                exps[i] = 2
            terms[tuple(exps)] = Fraction(1)
        out.append(GradedPoly(table, terms))
    return out


def elementary_map(n_vars: int) -> RingMap:
    """The substitution s_j -> sigma_j(x_1^2..x_n^2) as a graded ring map."""
    x_table = variable_table(n_vars)
    return RingMap(elementary_table(n_vars), x_table, _elementary_polynomials(x_table))


def to_elementary(s: GradedPoly) -> GradedPoly:
    """Rewrite an even symmetric polynomial in the s_j coordinates.

    Uses leading-term subtraction: the lex-leading exponent of a symmetric
    polynomial is non-increasing, which pins down a unique product of
    elementary symmetric polynomials to peel off.  Substituting the sigma_j
    back recovers the input exactly.
    """
    n = s.table.arity
    for e, _ in s.items():
        if any(x % 2 != 0 for x in e):
            raise DomainError(f"polynomial is not even: odd exponent in {e}")
    witness = symmetry_witness(s)
    if witness is not None:
        raise DomainError(f"polynomial is not symmetric: swapping x{witness[0]},x{witness[1]} changes it")

    sigma = elementary_table(n)
    elementary = _elementary_polynomials(s.table)
    result = GradedPoly.zero(sigma)
    remaining = s
    while not remaining.is_zero():
        lead = max(e for e, _ in remaining.items())
        coeff = remaining.coefficient(lead)
        halved = [x // 2 for x in lead]
        if any(halved[i] < halved[i + 1] for i in range(n - 1)):
            raise AssertionError(f"leading exponent {lead} of a symmetric polynomial must be sorted")
        sig_exps = tuple(
            halved[j] - (halved[j + 1] if j + 1 < n else 0) for j in range(n)
        )
        result = result + GradedPoly.monomial(sigma, sig_exps, coeff)
        peel = GradedPoly.constant(s.table, coeff)
        for j, m in enumerate(sig_exps):
            if m:
                peel = peel * elementary[j] ** m
        remaining = remaining - peel
    return result
