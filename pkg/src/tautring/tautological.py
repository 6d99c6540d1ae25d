"""Presentations of the tautological rings modulo nilpotents, the normal-form
rewriter, and the relation auditor.

For the connected sum of g copies of S^n x S^n (n odd where it matters, with
chi = 2-2g) the ring of kappa classes modulo its nilradical is free on

* kappa_{e p_1} .. kappa_{e p_n}        at genus 0 (any parity, and exactly),
* nothing                               at genus 1,
* kappa_{e p_1} .. kappa_{e p_(n-1)}    at genus > 1,

with the pointed flavor matching the closed one away from genus 1, where it
is instead free on the section classes p_1 .. p_(n-1); the framed-disc flavor
retains constants only.  Every kappa leaf rewrites to a polynomial in the
free generators; the auditor replays candidate relations inside the bundle
models and reports the exact residual.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .charclass import BasisMonomial, enumerate_basis
from .errors import DomainError, UnsupportedCaseError, UnsupportedParityError
from .expr import Cls, Const, Kappa, KappaExpr, Power, Product, Sum, evaluate
from .models import (
    BundleModel,
    liegroup_model,
    pointed_liegroup_model,
    pointed_sphere_model,
    sphere_model,
)
from .poly import GeneratorTable, GradedPoly

__all__ = [
    "AuditReport",
    "TautPresentation",
    "audit",
    "builtin_relation_suite",
    "krull_dimension",
    "normal_form",
    "poly_to_expr",
    "presentation",
]


@dataclass(frozen=True)
class TautPresentation:
    """A free polynomial presentation of one tautological ring mod nilradical.

    ``leaves`` holds, for each free generator, the kappa- or section-class
    expression it stands for; this is what evaluation in a model substitutes.
    """

    n: int
    g: int
    flavor: str
    table: GeneratorTable
    leaves: tuple[KappaExpr, ...]

    @property
    def chi(self) -> Fraction:
        return Fraction(2 - 2 * self.g)

    def generator_poly(self, index: int) -> GradedPoly:
        return GradedPoly.generator(self.table, self.table.names[index])


def _kappa_generator_names(count: int) -> tuple[tuple[str, int], ...]:
    return tuple((f"K[e*p{i}]", 4 * i) for i in range(1, count + 1))


def presentation(n: int, g: int, flavor: str = "closed") -> TautPresentation:
    """The presentation for (n, g, flavor); undefined combinations raise."""
    if n < 1:
        raise DomainError(f"half-dimension must be >= 1, got {n}")
    if g < 0:
        raise DomainError(f"genus must be >= 0, got {g}")
    if flavor not in ("closed", "pointed", "disc"):
        raise DomainError(f"unknown flavor {flavor!r}")
    if flavor == "pointed" and g == 0:
        raise UnsupportedCaseError(
            "the pointed genus-zero presentation is left undefined: the genus-zero "
            "model has a non-nilpotent fibrewise Euler class, which contradicts the "
            "rewrite rules; run the relation auditor to see the failing instances"
        )
    if flavor in ("closed", "pointed") and g >= 1 and n % 2 == 0:
        raise UnsupportedParityError(
            f"the {flavor} presentation at genus {g} requires an odd half-dimension, got n={n}"
        )

    def kappa_leaf(i: int) -> KappaExpr:
        return Kappa(BasisMonomial.pontryagin(n, i).times_euler())

    if flavor == "disc" or (g == 1 and flavor == "closed"):
        gens: tuple = ()
        leaves: tuple[KappaExpr, ...] = ()
    elif flavor == "pointed" and g == 1:
        gens = tuple((f"p{i}", 4 * i) for i in range(1, n))
        leaves = tuple(Cls(BasisMonomial.pontryagin(n, i)) for i in range(1, n))
    else:
        count = n if g == 0 else n - 1
        gens = _kappa_generator_names(count)
        leaves = tuple(kappa_leaf(i) for i in range(1, count + 1))
    return TautPresentation(n, g, flavor, GeneratorTable(gens), leaves)


def krull_dimension(pres: TautPresentation) -> int:
    """Number of free generators of the presentation."""
    return pres.table.arity


def _kappa_image(c: BasisMonomial, pres: TautPresentation) -> GradedPoly:
    n, g, chi = pres.n, pres.g, pres.chi
    table = pres.table
    if pres.flavor == "disc":
        # Only the fibre Euler characteristic survives.
        return GradedPoly.constant(table, chi) if c.is_euler() else GradedPoly.zero(table)
    if g == 1:
        return GradedPoly.zero(table)
    a = c.e_exp
    if a % 2 == 0:
        # Pure Pontryagin monomials (e^2 = p_n) die: exactly at genus 0,
        # modulo nilpotents otherwise.
        return GradedPoly.zero(table)
    if g > 1 and a >= 3:
        # kappa of e^3 is nilpotent for positive genus.
        return GradedPoly.zero(table)
    exps = list(c.p_exps)
    if g == 0:
        exps.append((a - 1) // 2)  # fold e^(2k) into p_n^k; p_n is admissible here
    weight = sum(exps)
    term = GradedPoly.constant(table, chi ** (1 - weight))
    for i, b in enumerate(exps, start=1):
        if b:
            term = term * pres.generator_poly(i - 1) ** b
    return term


def _cls_image(c: BasisMonomial, pres: TautPresentation) -> GradedPoly:
    if pres.flavor != "pointed":
        raise DomainError(f"section classes do not exist in the {pres.flavor} flavor")
    if pres.g == 1:
        if c.e_exp:
            return GradedPoly.zero(pres.table)
        term = GradedPoly.constant(pres.table, 1)
        for i, b in enumerate(c.p_exps, start=1):
            if b:
                term = term * pres.generator_poly(i - 1) ** b
        return term
    # g > 1: divide the kappa rewrite of e*c by chi.
    return _kappa_image(c.times_euler(), pres) / pres.chi


def normal_form(x: KappaExpr, pres: TautPresentation) -> GradedPoly:
    """Rewrite an expression into the free generators of a presentation.

    Each leaf reduces independently to a polynomial in the generators, so the
    rewriting system is confluent by construction; the result is exact at
    genus 0 (closed flavor) and holds modulo nilpotents otherwise.
    """
    for leaf in x.leaves():
        if leaf.mono.n != pres.n:
            raise DomainError(
                f"expression has half-dimension {leaf.mono.n}, presentation expects {pres.n}"
            )
    return evaluate(
        x,
        pres.table,
        lambda c: _kappa_image(c, pres),
        lambda c: _cls_image(c, pres),
    )


def poly_to_expr(poly: GradedPoly, pres: TautPresentation) -> KappaExpr:
    """Re-read a polynomial over the free generators as a kappa expression."""
    terms: list[KappaExpr] = []
    for exps, coeff in poly.items():
        factors: list[KappaExpr] = [Const(coeff)]
        for leaf, e in zip(pres.leaves, exps):
            if e == 1:
                factors.append(leaf)
            elif e > 1:
                factors.append(Power(leaf, e))
        terms.append(Product(tuple(factors)))
    if not terms:
        return Const(Fraction(0))
    return terms[0] if len(terms) == 1 else Sum(tuple(terms))


@dataclass(frozen=True)
class AuditReport:
    """Outcome of replaying one relation inside one bundle model."""

    relation: KappaExpr
    model_kind: str
    n: int
    g: int
    verdict: str
    witness: GradedPoly
    family: str = ""
    instance: str = ""
    note: str = ""

    @property
    def verified(self) -> bool:
        return self.verdict == "verified"


def audit(relation: KappaExpr, model: BundleModel, family: str = "", instance: str = "",
          note_if_refuted: str = "") -> AuditReport:
    """Evaluate a relation in a model and report the exact residual."""
    for leaf in relation.leaves():
        if leaf.mono.n != model.n:
            raise DomainError(
                f"relation has half-dimension {leaf.mono.n}, model expects {model.n}"
            )
        if isinstance(leaf, Cls) and not model.pointed:
            raise DomainError(f"relation uses section classes, but the {model.kind} model is not pointed")
    witness = evaluate(relation, model.target, model.kappa, model.cls if model.pointed else None)
    verified = witness.is_zero()
    return AuditReport(
        relation=relation,
        model_kind=model.kind,
        n=model.n,
        g=model.g,
        verdict="verified" if verified else "refuted",
        witness=witness,
        family=family,
        instance=instance,
        note="" if verified else note_if_refuted,
    )


def _scaled(coefficient: Fraction, node: KappaExpr) -> KappaExpr:
    return node if coefficient == 1 else Product((Const(coefficient), node))


def _pointed_quadratic(c: BasisMonomial, chi: Fraction) -> KappaExpr:
    # chi^2 c - chi k[e c] - chi c[e] k[c] + k[e^2] k[c]
    n = c.n
    return Sum(
        (
            _scaled(chi**2, Cls(c)),
            _scaled(-chi, Kappa(c.times_euler())),
            _scaled(-chi, Product((Cls(BasisMonomial.euler(n)), Kappa(c)))),
            Product((Kappa(BasisMonomial.euler(n, 2)), Kappa(c))),
        )
    )


def _euler_square(n: int, chi: Fraction) -> KappaExpr:
    # (chi - 2) chi c[e] + k[e^2]
    return Sum(
        (
            _scaled((chi - 2) * chi, Cls(BasisMonomial.euler(n))),
            Kappa(BasisMonomial.euler(n, 2)),
        )
    )


def _chi_rewrite(c: BasisMonomial, chi: Fraction) -> KappaExpr:
    # chi c - k[e c]
    return Sum((_scaled(chi, Cls(c)), _scaled(Fraction(-1), Kappa(c.times_euler()))))


def _kappa_product(n: int, index_vector: tuple[int, ...], chi: Fraction, printed: bool) -> KappaExpr:
    # chi^(|I| - 1) k[e p_I] = prod_j k[e p_j]^(i_j); the printed variant uses
    # exponent |I|, which fails its own base case |I| = 1 and both models.
    weight = sum(index_vector)
    exponent = weight if printed else weight - 1
    monomial = BasisMonomial.from_p_vector(n, index_vector, e_exp=1)
    product_factors = []
    for j, i_j in enumerate(index_vector, start=1):
        if i_j:
            leaf = Kappa(BasisMonomial.pontryagin(n, j).times_euler())
            product_factors.append(leaf if i_j == 1 else Power(leaf, i_j))
    return Sum(
        (
            _scaled(chi**exponent, Kappa(monomial)),
            Product((Const(Fraction(-1)), *product_factors)),
        )
    )


def _index_vectors(count: int, max_weight: int):
    """All exponent vectors of length ``count`` with 1 <= sum <= max_weight."""
    vector = [0] * count

    def extend(i: int, remaining: int):
        if i == count:
            if sum(vector) >= 1:
                yield tuple(vector)
            return
        for b in range(remaining + 1):
            vector[i] = b
            yield from extend(i + 1, remaining - b)
        vector[i] = 0

    yield from extend(0, max_weight)


GENUS_ZERO_REWRITE_NOTE = (
    "expected failure in the genus-zero model: there the fibrewise Euler class "
    "restricts to the non-nilpotent class e, so the rewrite chi*c = k[e*c] cannot "
    "hold for monomials with an odd Euler exponent"
)
PRINTED_EXPONENT_NOTE = (
    "expected failure: the exponent |I| overcounts by one; both models satisfy "
    "the |I|-1 form, which also matches the base case |I| = 1"
)


def builtin_relation_suite(n: int, g: int, max_degree: int = 16,
                           max_product_weight: int = 4) -> list[AuditReport]:
    """Audit the built-in relation families in every applicable model.

    Pointed families run over all basis monomials of degree <= max_degree;
    the kappa-product family runs over index vectors of weight <= the given
    bound.  Refutations are reported as data, with a note when the failure is
    a documented expectation.
    """
    closed = sphere_model(n) if g == 0 else liegroup_model(n, g)
    pointed = pointed_sphere_model(n) if g == 0 else pointed_liegroup_model(n, g)
    chi = Fraction(2 - 2 * g)
    reports: list[AuditReport] = []

    for c in enumerate_basis(n, max_degree):
        reports.append(
            audit(_pointed_quadratic(c, chi), pointed, family="pointed_quadratic",
                  instance=c.render())
        )
        reports.append(
            audit(
                _chi_rewrite(c, chi),
                pointed,
                family="chi_rewrite",
                instance=c.render(),
                note_if_refuted=GENUS_ZERO_REWRITE_NOTE if g == 0 else "",
            )
        )
    reports.append(audit(_euler_square(n, chi), pointed, family="euler_square", instance="e"))

    # At genus 0 the kappa-product family may include the top index (p_n reads
    # e^2 there); at positive genus its kappa image vanishes, so nontrivial
    # instances range over p_1..p_(n-1).
    index_count = n if g == 0 else n - 1
    for vector in _index_vectors(index_count, max_product_weight):
        instance = "I=(" + ",".join(str(b) for b in vector) + ")"
        reports.append(
            audit(_kappa_product(n, vector, chi, printed=False), closed,
                  family="kappa_product", instance=instance)
        )
        reports.append(
            audit(_kappa_product(n, vector, chi, printed=True), closed,
                  family="kappa_product_printed", instance=instance,
                  note_if_refuted=PRINTED_EXPONENT_NOTE)
        )
    return reports
