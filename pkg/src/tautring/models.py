"""Exact evaluation targets for kappa classes.

Two families of models and their pointed variants:

* the genus-zero sphere bundle BSO(2n) -> BSO(2n+1), whose pushforward is
  computed algebraically from the free {1, e} basis decomposition, and
* the genus-g model over BSO(n) x BSO(n), where the vertical tangent bundle
  pulls back from V1 + V2 and the fibre has Euler characteristic chi = 2-2g.

Each model assigns a concrete polynomial to every kappa class (and to every
tangential class in the pointed variants), so candidate relations can be
confirmed or refuted by exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .charclass import BSORing, BasisMonomial, bso_ring, product_table, total_pontryagin_class
from .errors import DomainError, TableMismatchError
from .poly import GradedPoly, RingMap

__all__ = [
    "BundleModel",
    "GysinContext",
    "MODEL_KINDS",
    "bundle_model",
    "gysin_context",
    "gysin_push",
    "liegroup_kappa",
    "liegroup_model",
    "pointed_class",
    "pointed_liegroup_model",
    "pointed_sphere_model",
    "sphere_kappa",
    "sphere_model",
]

MODEL_KINDS = ("sphere", "liegroup", "pointed_sphere", "pointed_liegroup")


@dataclass(frozen=True)
class GysinContext:
    """The sphere bundle BSO(2n) -> BSO(2n+1) and its pullback map.

    The pullback sends p_i to p_i for i < n and p_n to e^2; pushing forward
    integrates over the fibre, lowering degree by 2n.
    """

    n: int
    total: BSORing
    base: BSORing
    pullback: RingMap


def gysin_context(n: int) -> GysinContext:
    if n < 1:
        raise DomainError(f"half-dimension must be >= 1, got {n}")
    total = bso_ring(2 * n)
    base = bso_ring(2 * n + 1)
    images = [
        GradedPoly.generator(total.table, f"p{i}") for i in range(1, n)
    ] + [GradedPoly.generator(total.table, "e") ** 2]
    pullback = RingMap(base.table, total.table, images)
    return GysinContext(n, total, base, pullback)


def gysin_push(ctx: GysinContext, x: GradedPoly) -> GradedPoly:
    """Fibre integration: write x = F + e*G and return 2*G with e^2 read as p_n.

    The projection formula holds by construction: multiplying x by a pullback
    multiplies G by the same class.
    """
    if x.table != ctx.total.table:
        raise TableMismatchError("polynomial is not over the total ring of the context")
    _, odd = x.parity_split("e")
    e_idx = ctx.total.table.index("e")
    n = ctx.n
    terms = {}
    for exps, coeff in odd.items():
        # Remaining e-exponent is even; e^(2k) is the pullback of p_n^k.
        new = list(exps[:e_idx]) + [0] * (ctx.base.table.arity - e_idx)
        new[ctx.base.table.index(f"p{n}")] = exps[e_idx] // 2
        terms[tuple(new)] = 2 * coeff
    return GradedPoly(ctx.base.table, terms)


class BundleModel:
    """An immutable evaluation target mapping kappa classes to polynomials."""

    def __init__(self, kind: str, n: int, g: int):
        if kind not in MODEL_KINDS:
            raise DomainError(f"unknown model kind {kind!r}")
        if n < 1:
            raise DomainError(f"half-dimension must be >= 1, got {n}")
        if g < 0:
            raise DomainError(f"genus must be >= 0, got {g}")
        if kind in ("sphere", "pointed_sphere") and g != 0:
            raise DomainError(f"the {kind} model only exists at genus 0, got g={g}")
        self.kind = kind
        self.n = n
        self.g = g
        self.pointed = kind.startswith("pointed")
        self.chi = Fraction(2 - 2 * g)
        if kind in ("sphere", "pointed_sphere"):
            self._ctx = gysin_context(n)
            self.target = self._ctx.base.table if kind == "sphere" else self._ctx.total.table
        else:
            if n < 2:
                raise DomainError("the Lie-group model needs half-dimension >= 2")
            factor = bso_ring(n)
            self.target = product_table(factor.table, factor.table)
            total = total_pontryagin_class(factor, self.target, "'") * total_pontryagin_class(
                factor, self.target, "''"
            )
            # p_i(V1 + V2) for i = 1..n; the top one vanishes when n is odd.
            self._p_images = tuple(
                total.homogeneous_component(4 * i) for i in range(1, n + 1)
            )
            if factor.has_euler:
                self._euler_image = GradedPoly.generator(self.target, "e'") * GradedPoly.generator(
                    self.target, "e''"
                )
            else:
                self._euler_image = GradedPoly.zero(self.target)

    def __repr__(self) -> str:
        return f"BundleModel({self.kind}, n={self.n}, g={self.g})"

    def _check(self, c: BasisMonomial):
        if c.n != self.n:
            raise DomainError(
                f"monomial has half-dimension {c.n}, model expects {self.n}"
            )

    def _pontryagin_product(self, p_exps: tuple[int, ...], extra_top: int = 0) -> GradedPoly:
        out = GradedPoly.constant(self.target, 1)
        for i, b in enumerate(p_exps, start=1):
            if b:
                out = out * self._p_images[i - 1] ** b
        if extra_top:
            out = out * self._p_images[self.n - 1] ** extra_top
        return out

    def kappa(self, c: BasisMonomial) -> GradedPoly:
        """Image of the kappa class of c; homogeneous of degree deg(c) - 2n."""
        self._check(c)
        if self.kind in ("sphere", "pointed_sphere"):
            pushed = gysin_push(self._ctx, c.to_poly(self._ctx.total.table))
            if self.kind == "sphere":
                return pushed
            return self._ctx.pullback(pushed)
        a = c.e_exp
        if a % 2 == 0:
            # The integrand is a pullback, and the fibre dimension is positive.
            return GradedPoly.zero(self.target)
        # e^(2k+1) contributes the pullback of p_n(V1+V2)^k times one fibrewise
        # Euler class, whose pushforward is chi.
        return self.chi * self._pontryagin_product(c.p_exps, extra_top=(a - 1) // 2)

    def cls(self, c: BasisMonomial) -> GradedPoly:
        """Image of the tangential class of c; only pointed models carry one."""
        if not self.pointed:
            raise DomainError(f"the {self.kind} model has no section classes")
        self._check(c)
        if self.kind == "pointed_sphere":
            return c.to_poly(self.target)
        out = self._euler_image**c.e_exp if c.e_exp else GradedPoly.constant(self.target, 1)
        return out * self._pontryagin_product(c.p_exps)


def bundle_model(kind: str, n: int, g: int = 0) -> BundleModel:
    return BundleModel(kind, n, g)


def sphere_model(n: int) -> BundleModel:
    return BundleModel("sphere", n, 0)


def pointed_sphere_model(n: int) -> BundleModel:
    return BundleModel("pointed_sphere", n, 0)


def liegroup_model(n: int, g: int) -> BundleModel:
    return BundleModel("liegroup", n, g)


def pointed_liegroup_model(n: int, g: int) -> BundleModel:
    return BundleModel("pointed_liegroup", n, g)


def sphere_kappa(n: int, c: BasisMonomial) -> GradedPoly:
    """Kappa image in the genus-zero sphere model, in Q[p_1..p_n]."""
    return sphere_model(n).kappa(c)


def liegroup_kappa(n: int, g: int, c: BasisMonomial) -> GradedPoly:
    """Kappa image in the genus-g Lie-group model over BSO(n) x BSO(n)."""
    return liegroup_model(n, g).kappa(c)


def pointed_class(model: BundleModel, c: BasisMonomial) -> GradedPoly:
    """Tangential-class image in a pointed model."""
    return model.cls(c)
