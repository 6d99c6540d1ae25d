"""Rational cohomology of BSO(d), basis monomials, Whitney sums and the
modified Hirzebruch classes.

The ring of BSO(d) is Q[p_1..p_{(d-1)/2}] for d odd and
Q[p_1..p_{d/2-1}, e] for d even, with deg p_i = 4i and deg e = d; when d is
even the class p_{d/2} equals e^2 and is never stored as a generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import factorial

from .errors import DomainError
from .poly import GeneratorTable, GradedPoly, RingMap, change_table
from .series import bernoulli, tanh_quotient_series, x_coth_x_series
from .symfunc import product_expand, to_elementary

__all__ = [
    "BSORing",
    "BasisMonomial",
    "LTildeClass",
    "bso_ring",
    "enumerate_basis",
    "l_classical",
    "l_tilde",
    "l_tilde_leading_coefficient",
    "p_to_ltilde_basis",
    "pontryagin_table",
    "product_table",
    "total_pontryagin_class",
    "whitney_p",
]

# Default guard against runaway expansions: 4 * (half dimension) * 6.
DEGREE_CAP_FACTOR = 24


def pontryagin_table(count: int, degree_cap: int | None = None) -> GeneratorTable:
    return GeneratorTable(
        tuple((f"p{i}", 4 * i) for i in range(1, count + 1)), degree_cap=degree_cap
    )


@dataclass(frozen=True)
class BSORing:
    """The cohomology ring of BSO(d) with its generator table."""

    d: int
    table: GeneratorTable

    @property
    def pontryagin_count(self) -> int:
        return (self.d - 1) // 2 if self.d % 2 else self.d // 2 - 1

    @property
    def has_euler(self) -> bool:
        return self.d % 2 == 0


def bso_ring(d: int, degree_cap: int | None = -1) -> BSORing:
    """Generator table of H*(BSO(d); Q).  The default degree cap is 24*(d//2)."""
    if d < 2:
        raise DomainError(f"rank must be at least 2, got {d}")
    if degree_cap == -1:
        degree_cap = DEGREE_CAP_FACTOR * (d // 2)
    if d % 2:
        gens = tuple((f"p{i}", 4 * i) for i in range(1, (d - 1) // 2 + 1))
    else:
        gens = tuple((f"p{i}", 4 * i) for i in range(1, d // 2)) + (("e", d),)
    return BSORing(d, GeneratorTable(gens, degree_cap=degree_cap))


@dataclass(frozen=True)
class BasisMonomial:
    """A monomial e^a * p_1^{b_1} ... p_{n-1}^{b_{n-1}} in H*(BSO(2n); Q).

    The alias p_n = e^2 is resolved before construction, so p_n never occurs.
    """

    n: int
    e_exp: int
    p_exps: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"half-dimension must be >= 1, got {self.n}")
        if len(self.p_exps) != self.n - 1:
            raise DomainError(
                f"expected {self.n - 1} Pontryagin exponents, got {len(self.p_exps)}"
            )
        if self.e_exp < 0 or any(b < 0 for b in self.p_exps):
            raise DomainError("exponents must be non-negative")

    @classmethod
    def unit(cls, n: int) -> BasisMonomial:
        return cls(n, 0, (0,) * (n - 1))

    @classmethod
    def euler(cls, n: int, power: int = 1) -> BasisMonomial:
        return cls(n, power, (0,) * (n - 1))

    @classmethod
    def pontryagin(cls, n: int, i: int, power: int = 1) -> BasisMonomial:
        """p_i^power, folding p_n to e^2."""
        if i < 1 or i > n:
            raise DomainError(f"p{i} does not exist for half-dimension {n}")
        if i == n:
            return cls(n, 2 * power, (0,) * (n - 1))
        exps = [0] * (n - 1)
        exps[i - 1] = power
        return cls(n, 0, tuple(exps))

    @classmethod
    def from_p_vector(cls, n: int, p_vector: tuple[int, ...], e_exp: int = 0) -> BasisMonomial:
        """Build e^a * p_1^{i_1}..p_n^{i_n}, folding any p_n factor into e^2."""
        if len(p_vector) not in (n - 1, n):
            raise DomainError(f"p-vector length must be {n - 1} or {n}, got {len(p_vector)}")
        extra = 2 * p_vector[n - 1] if len(p_vector) == n else 0
        return cls(n, e_exp + extra, tuple(p_vector[: n - 1]))

    @property
    def degree(self) -> int:
        return 2 * self.n * self.e_exp + sum(4 * i * b for i, b in enumerate(self.p_exps, start=1))

    def is_unit(self) -> bool:
        return self.e_exp == 0 and not any(self.p_exps)

    def is_euler(self) -> bool:
        return self.e_exp == 1 and not any(self.p_exps)

    def times(self, other: BasisMonomial) -> BasisMonomial:
        if other.n != self.n:
            raise DomainError("cannot multiply basis monomials of different half-dimensions")
        return BasisMonomial(
            self.n,
            self.e_exp + other.e_exp,
            tuple(a + b for a, b in zip(self.p_exps, other.p_exps)),
        )

    def times_euler(self, power: int = 1) -> BasisMonomial:
        return BasisMonomial(self.n, self.e_exp + power, self.p_exps)

    def to_poly(self, table: GeneratorTable) -> GradedPoly:
        """The monomial as an element of a ring containing e and p_1..p_{n-1}."""
        exps = [0] * table.arity
        if self.e_exp:
            exps[table.index("e")] = self.e_exp
        for i, b in enumerate(self.p_exps, start=1):
            if b:
                exps[table.index(f"p{i}")] = b
        return GradedPoly.monomial(table, tuple(exps))

    def render(self) -> str:
        parts = []
        if self.e_exp == 1:
            parts.append("e")
        elif self.e_exp > 1:
            parts.append(f"e^{self.e_exp}")
        for i, b in enumerate(self.p_exps, start=1):
            if b == 1:
                parts.append(f"p{i}")
            elif b > 1:
                parts.append(f"p{i}^{b}")
        return "*".join(parts) if parts else "1"

    def sort_key(self):
        return (self.degree, tuple(-x for x in (self.e_exp, *self.p_exps)))

    def __str__(self) -> str:
        return self.render()


def enumerate_basis(n: int, max_degree: int) -> list[BasisMonomial]:
    """All basis monomials of degree <= max_degree, in canonical order."""
    if n < 1:
        raise DomainError(f"half-dimension must be >= 1, got {n}")
    out: list[BasisMonomial] = []

    def extend(i: int, exps: list[int], remaining: int):
        if i == n:
            for a in range(remaining // (2 * n) + 1):
                out.append(BasisMonomial(n, a, tuple(exps)))
            return
        for b in range(remaining // (4 * i) + 1):
            exps.append(b)
            extend(i + 1, exps, remaining - 4 * i * b)
            exps.pop()

    extend(1, [], max_degree)
    out.sort(key=BasisMonomial.sort_key)
    return out


@dataclass(frozen=True)
class LTildeClass:
    """A modified Hirzebruch class: homogeneous of degree 4i in p_1..p_n."""

    i: int
    n: int
    poly: GradedPoly


def l_tilde_leading_coefficient(i: int, n: int) -> Fraction:
    """Coefficient of p_i in the i-th modified class for half-dimension n."""
    return Fraction(2**n * (2 ** (2 * i - 1) - 1)) * bernoulli(i) / factorial(2 * i)


def _series_to_pontryagin(series_factory, i: int, m: int) -> GradedPoly:
    # Weight-4i part of prod_{j<=m} f(x_j), rewritten in p_1..p_m.  The sigma_j
    # coordinate is renamed to p_j; both carry degree 4j, so the exponent
    # vectors transfer unchanged.
    f = series_factory(2 * i)
    expansion = product_expand(f, m, 4 * i)
    component = expansion.homogeneous_component(4 * i)
    in_sigma = to_elementary(component)
    return GradedPoly(pontryagin_table(m), {e: c for e, c in in_sigma.items()})


@cache
def l_tilde(i: int, n: int) -> LTildeClass:
    """The i-th modified Hirzebruch class of BSO(2n), from the series x/tanh(x/2).

    Only min(n, 2i) expansion variables are needed: the weight-4i symmetric
    component is stable once the variable count reaches its sigma-degree, and
    each omitted factor contributes its constant term 2, applied analytically
    as the 2^(n-m) prefactor.
    """
    if i < 0:
        raise DomainError(f"class index must be >= 0, got {i}")
    if n < 1:
        raise DomainError(f"half-dimension must be >= 1, got {n}")
    target = pontryagin_table(n)
    if i == 0:
        return LTildeClass(0, n, GradedPoly.constant(target, 2**n))
    m = min(n, 2 * i)
    poly = _series_to_pontryagin(tanh_quotient_series, i, m)
    poly = change_table(poly, target) * Fraction(2 ** (n - m))
    return LTildeClass(i, n, poly)


@cache
def l_classical(i: int) -> GradedPoly:
    """The classical Hirzebruch polynomial in p_1..p_i, from the series x/tanh(x)."""
    if i < 1:
        raise DomainError(f"class index must be >= 1, got {i}")
    return change_table(_series_to_pontryagin(x_coth_x_series, i, i), pontryagin_table(i))


def p_to_ltilde_basis(n: int, max_i: int) -> RingMap:
    """Change of basis writing each p_i (i <= max_i) in the modified classes.

    Inverts the triangular system given by the leading-coefficient formula;
    composing with the modified classes themselves is the identity.
    """
    if max_i < 1 or max_i > n:
        raise DomainError(f"need 1 <= max_i <= n, got max_i={max_i}, n={n}")
    p_table = pontryagin_table(max_i)
    lt_table = GeneratorTable(tuple((f"L{i}", 4 * i) for i in range(1, max_i + 1)))
    images: list[GradedPoly] = []
    for i in range(1, max_i + 1):
        li = change_table(l_tilde(i, n).poly, p_table)
        lead = li.coefficient(tuple(1 if j == i else 0 for j in range(1, max_i + 1)))
        assert lead == l_tilde_leading_coefficient(i, n) and lead != 0
        # The remainder involves only lower Pontryagin classes, which already
        # have images; substituting them makes the system triangular.
        rest = change_table(li - GradedPoly.generator(p_table, f"p{i}") * lead,
                            pontryagin_table(i - 1))
        rest_in_lt = RingMap(pontryagin_table(i - 1), lt_table, images[: i - 1])(rest)
        images.append((GradedPoly.generator(lt_table, f"L{i}") - rest_in_lt) / lead)
    return RingMap(p_table, lt_table, images)


def product_table(a: GeneratorTable, b: GeneratorTable) -> GeneratorTable:
    """Tensor-product table: generators of ``a`` primed once, of ``b`` twice."""
    cap = None
    if a.degree_cap is not None and b.degree_cap is not None:
        cap = a.degree_cap + b.degree_cap
    return GeneratorTable(
        tuple((f"{name}'", deg) for name, deg in a.generators)
        + tuple((f"{name}''", deg) for name, deg in b.generators),
        degree_cap=cap,
    )


def total_pontryagin_class(ring: BSORing, target: GeneratorTable, suffix: str = "") -> GradedPoly:
    """The class 1 + p_1 + ... + top inside ``target``, generators suffixed.

    For even rank the top class p_{d/2} is supplied by e^2.
    """
    total = GradedPoly.constant(target, 1)
    for i in range(1, ring.pontryagin_count + 1):
        total = total + GradedPoly.generator(target, f"p{i}{suffix}")
    if ring.has_euler:
        total = total + GradedPoly.generator(target, f"e{suffix}") ** 2
    return total


def whitney_p(f1: BSORing, f2: BSORing) -> RingMap:
    """Restriction along the block-sum inclusion SO(d1) x SO(d2) -> SO(d1+d2).

    Pontryagin generators map to the graded components of p(V1)p(V2); over Q
    the Euler class maps to e(V1)e(V2), which is zero whenever a factor has
    odd rank.
    """
    source = bso_ring(f1.d + f2.d)
    target = product_table(f1.table, f2.table)
    total = total_pontryagin_class(f1, target, "'") * total_pontryagin_class(f2, target, "''")
    images = [
        total.homogeneous_component(4 * i) for i in range(1, source.pontryagin_count + 1)
    ]
    if source.has_euler:
        if f1.has_euler and f2.has_euler:
            images.append(
                GradedPoly.generator(target, "e'") * GradedPoly.generator(target, "e''")
            )
        else:
            images.append(GradedPoly.zero(target))
    return RingMap(source.table, target, images)
