"""Sparse multivariate polynomials over exact rationals with graded generators.

A polynomial is a dict from exponent vectors (one entry per generator, in
table order) to nonzero Fraction coefficients.  Each generator carries a
positive even degree, so every term has a well-defined total degree.  Values
are immutable after construction and all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import DomainError, ResourceLimitError, TableMismatchError

__all__ = ["GeneratorTable", "GradedPoly", "RingMap", "apply_map", "change_table", "parity_split"]

Exponents = tuple[int, ...]


@dataclass(frozen=True)
class GeneratorTable:
    """Ordered list of (name, degree) pairs naming the ring's generators.

    ``degree_cap``, when set, bounds the total degree any product is allowed
    to reach; exceeding it raises instead of truncating.  The cap is working
    metadata and does not take part in table equality.
    """

    generators: tuple[tuple[str, int], ...]
    degree_cap: int | None = field(default=None, compare=False)

    def __post_init__(self):
        names = [name for name, _ in self.generators]
        if len(set(names)) != len(names):
            raise DomainError(f"generator names must be unique, got {names}")
        for name, degree in self.generators:
            if degree <= 0 or degree % 2 != 0:
                raise DomainError(f"generator {name!r} must have positive even degree, got {degree}")

    @property
    def arity(self) -> int:
        return len(self.generators)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.generators)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(degree for _, degree in self.generators)

    def index(self, name: str) -> int:
        for i, (gen, _) in enumerate(self.generators):
            if gen == name:
                return i
        raise DomainError(f"unknown generator {name!r}")

    def degree_of(self, name: str) -> int:
        return self.generators[self.index(name)][1]

    def term_degree(self, exponents: Exponents) -> int:
        return sum(e * d for e, d in zip(exponents, self.degrees))

    def __contains__(self, name: str) -> bool:
        return any(gen == name for gen, _ in self.generators)


def _term_key(degrees: tuple[int, ...]):
    def key(exponents: Exponents):
        return (sum(e * d for e, d in zip(exponents, degrees)), sum(exponents), exponents)

    return key


class GradedPoly:
    """Immutable sparse polynomial over a :class:`GeneratorTable`."""

    __slots__ = ("table", "_terms")

    def __init__(self, table: GeneratorTable, terms: Mapping[Exponents, Fraction] | Iterable):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponents, Fraction] = {}
        for exponents, coeff in items:
            exponents = tuple(exponents)
            if len(exponents) != table.arity:
                raise DomainError(
                    f"exponent vector {exponents} does not match table arity {table.arity}"
                )
            if any(e < 0 for e in exponents):
                raise DomainError(f"negative exponent in {exponents}")
            value = clean.get(exponents, Fraction(0)) + Fraction(coeff)
            if value == 0:
                clean.pop(exponents, None)
            else:
                clean[exponents] = value
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("GradedPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, table: GeneratorTable) -> GradedPoly:
        return cls(table, {})

    @classmethod
    def constant(cls, table: GeneratorTable, value) -> GradedPoly:
        return cls(table, {(0,) * table.arity: Fraction(value)})

    @classmethod
    def generator(cls, table: GeneratorTable, name: str) -> GradedPoly:
        exps = [0] * table.arity
        exps[table.index(name)] = 1
        return cls(table, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, table: GeneratorTable, exponents: Exponents, coeff=1) -> GradedPoly:
        return cls(table, {tuple(exponents): Fraction(coeff)})

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def items(self) -> list[tuple[Exponents, Fraction]]:
        """Terms in canonical order: by total degree, then exponent sum, then exponents."""
        key = _term_key(self.table.degrees)
        return sorted(self._terms.items(), key=lambda kv: key(kv[0]))

    def __iter__(self) -> Iterator[tuple[Exponents, Fraction]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, exponents: Exponents) -> Fraction:
        return self._terms.get(tuple(exponents), Fraction(0))

    def constant_coefficient(self) -> Fraction:
        return self.coefficient((0,) * self.table.arity)

    def total_degree(self) -> int | None:
        """Largest term degree, or None for the zero polynomial."""
        if not self._terms:
            return None
        return max(self.table.term_degree(e) for e in self._terms)

    def homogeneous_degree(self) -> int | None:
        """The common degree of all terms, or None if zero or inhomogeneous."""
        degrees = {self.table.term_degree(e) for e in self._terms}
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def is_homogeneous_of_degree(self, degree: int) -> bool:
        return all(self.table.term_degree(e) == degree for e in self._terms)

    def homogeneous_component(self, degree: int) -> GradedPoly:
        keep = {e: c for e, c in self._terms.items() if self.table.term_degree(e) == degree}
        return GradedPoly(self.table, keep)

    def degrees_present(self) -> list[int]:
        return sorted({self.table.term_degree(e) for e in self._terms})

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> GradedPoly:
        if isinstance(other, GradedPoly):
            if other.table != self.table:
                raise TableMismatchError(
                    f"tables differ: {self.table.names} vs {other.table.names}"
                )
            return other
        return GradedPoly.constant(self.table, other)

    def __add__(self, other) -> GradedPoly:
        other = self._coerce(other)
        terms = dict(self._terms)
        for e, c in other._terms.items():
            value = terms.get(e, Fraction(0)) + c
            if value == 0:
                terms.pop(e, None)
            else:
                terms[e] = value
        return GradedPoly(self.table, terms)

    __radd__ = __add__

    def __neg__(self) -> GradedPoly:
        return GradedPoly(self.table, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> GradedPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> GradedPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> GradedPoly:
        if not isinstance(other, GradedPoly):
            q = Fraction(other)
            if q == 0:
                return GradedPoly.zero(self.table)
            return GradedPoly(self.table, {e: q * c for e, c in self._terms.items()})
        other = self._coerce(other)
        cap = self.table.degree_cap
        degrees = self.table.degrees
        terms: dict[Exponents, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if cap is not None:
                    degree = sum(x * d for x, d in zip(e, degrees))
                    if degree > cap:
                        raise ResourceLimitError(
                            f"product term of degree {degree} exceeds the degree cap {cap}"
                        )
                value = terms.get(e, Fraction(0)) + c1 * c2
                if value == 0:
                    terms.pop(e, None)
                else:
                    terms[e] = value
        return GradedPoly(self.table, terms)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> GradedPoly:
        q = Fraction(scalar)
        if q == 0:
            raise DomainError("division by zero")
        return self * (1 / q)

    def __pow__(self, exponent: int) -> GradedPoly:
        if not isinstance(exponent, int) or exponent < 0:
            raise DomainError(f"polynomial powers must be non-negative integers, got {exponent}")
        result = GradedPoly.constant(self.table, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base_needed = e > 1
            if base_needed:
                base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedPoly):
            if isinstance(other, (int, Fraction)):
                return self == GradedPoly.constant(self.table, other)
            return NotImplemented
        return self.table == other.table and self._terms == other._terms

    def __hash__(self):
        return hash((self.table, frozenset(self._terms.items())))

    # -- structure ---------------------------------------------------------

    def parity_split(self, gen: str) -> tuple[GradedPoly, GradedPoly]:
        """Write self = even + gen*odd with both parts even in ``gen``.

        The decomposition is unique: terms with even exponent of ``gen`` form
        the first part, the rest are divided by ``gen`` once.
        """
        idx = self.table.index(gen)
        even: dict[Exponents, Fraction] = {}
        odd: dict[Exponents, Fraction] = {}
        for e, c in self._terms.items():
            if e[idx] % 2 == 0:
                even[e] = c
            else:
                lowered = e[:idx] + (e[idx] - 1,) + e[idx + 1 :]
                odd[lowered] = c
        return GradedPoly(self.table, even), GradedPoly(self.table, odd)

    # -- rendering ---------------------------------------------------------

    def _monomial_text(self, exponents: Exponents) -> str:
        parts = []
        for (name, _), e in zip(self.table.generators, exponents):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces: list[str] = []
        for exponents, coeff in self.items():
            mono = self._monomial_text(exponents)
            magnitude = abs(coeff)
            if not mono:
                body = str(magnitude)
            elif magnitude == 1:
                body = mono
            else:
                body = f"{magnitude}*{mono}"
            if not pieces:
                pieces.append(f"-{body}" if coeff < 0 else body)
            else:
                pieces.append(f"- {body}" if coeff < 0 else f"+ {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"GradedPoly({self})"


def parity_split(x: GradedPoly, gen: str) -> tuple[GradedPoly, GradedPoly]:
    return x.parity_split(gen)


def change_table(x: GradedPoly, table: GeneratorTable) -> GradedPoly:
    """Re-express ``x`` over another table containing every generator it uses.

    Matching is by name; degrees must agree.  Works both for embedding into a
    larger table and restricting to a smaller one.
    """
    positions: list[int | None] = []
    for name, degree in x.table.generators:
        if name in table:
            if table.degree_of(name) != degree:
                raise TableMismatchError(f"generator {name!r} changes degree")
            positions.append(table.index(name))
        else:
            positions.append(None)
    terms: dict[Exponents, Fraction] = {}
    for e, c in x._terms.items():
        new = [0] * table.arity
        for old_idx, exp in enumerate(e):
            if exp == 0:
                continue
            pos = positions[old_idx]
            if pos is None:
                raise TableMismatchError(
                    f"generator {x.table.names[old_idx]!r} is used but absent from the target table"
                )
            new[pos] = exp
        terms[tuple(new)] = c
    return GradedPoly(table, terms)


class RingMap:
    """Graded ring homomorphism given by one homogeneous image per generator."""

    __slots__ = ("source", "target", "images")

    def __init__(self, source: GeneratorTable, target: GeneratorTable, images: Iterable[GradedPoly]):
        images = tuple(images)
        if len(images) != source.arity:
            raise DomainError(
                f"need {source.arity} images for {source.names}, got {len(images)}"
            )
        for (name, degree), image in zip(source.generators, images):
            if image.table != target:
                raise TableMismatchError(f"image of {name!r} lives over the wrong table")
            if not image.is_homogeneous_of_degree(degree):
                raise DomainError(
                    f"image of {name!r} must be homogeneous of degree {degree}, got {image}"
                )
        self.source = source
        self.target = target
        self.images = images

    @classmethod
    def identity(cls, table: GeneratorTable) -> RingMap:
        return cls(table, table, (GradedPoly.generator(table, name) for name in table.names))

    def image_of(self, name: str) -> GradedPoly:
        return self.images[self.source.index(name)]

    def __call__(self, x: GradedPoly) -> GradedPoly:
        if x.table != self.source:
            raise TableMismatchError("polynomial is not over the map's source table")
        power_cache: list[dict[int, GradedPoly]] = [
            {0: GradedPoly.constant(self.target, 1)} for _ in range(self.source.arity)
        ]

        def power(i: int, e: int) -> GradedPoly:
            cached = power_cache[i]
            if e not in cached:
                cached[e] = power(i, e - 1) * self.images[i]
            return cached[e]

        result = GradedPoly.zero(self.target)
        for exponents, coeff in x._terms.items():
            term = GradedPoly.constant(self.target, coeff)
            for i, e in enumerate(exponents):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result


def apply_map(f: RingMap, x: GradedPoly) -> GradedPoly:
    """Apply a graded ring homomorphism to a polynomial over its source."""
    return f(x)
