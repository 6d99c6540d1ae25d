"""Abstract syntax and parser for polynomial expressions in kappa classes.

Grammar (ASCII, whitespace-insensitive)::

    expr     := term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := rational | 'k[' mono ']' | 'c[' mono ']' | factor '^' nat | '(' expr ')'
    mono     := '1' | atom ('*' atom)*
    atom     := 'e' ('^' nat)? | 'p' nat ('^' nat)?
    rational := int ('/' nat)?

The 'c[...]' leaves (section classes) are only admitted in the pointed
flavor.  Monomial indices are validated against the ambient half-dimension
and p_n is folded to e^2 during parsing, so every leaf carries a valid basis
monomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .charclass import BasisMonomial
from .errors import DomainError, ParseError
from .poly import GeneratorTable, GradedPoly

__all__ = [
    "Cls",
    "Const",
    "Kappa",
    "KappaExpr",
    "Power",
    "Product",
    "Sum",
    "FLAVORS",
    "evaluate",
    "expression_degree",
    "parse",
]

FLAVORS = ("closed", "pointed", "disc")


class KappaExpr:
    """Base class of expression nodes; all nodes are immutable."""

    def render(self) -> str:
        raise NotImplementedError

    def leaves(self):
        """Yield every Kappa/Cls node in the tree."""
        yield from ()

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class Const(KappaExpr):
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))

    def render(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class Kappa(KappaExpr):
    mono: BasisMonomial

    def render(self) -> str:
        return f"k[{self.mono.render()}]"

    def leaves(self):
        yield self


@dataclass(frozen=True)
class Cls(KappaExpr):
    mono: BasisMonomial

    def render(self) -> str:
        return f"c[{self.mono.render()}]"

    def leaves(self):
        yield self


def _parenthesize_in_product(child: KappaExpr) -> bool:
    return isinstance(child, Sum) or (isinstance(child, Const) and child.value < 0)


@dataclass(frozen=True)
class Sum(KappaExpr):
    terms: tuple[KappaExpr, ...]

    def render(self) -> str:
        pieces: list[str] = []
        for term in self.terms:
            text = term.render()
            if not pieces:
                pieces.append(text)
            elif text.startswith("-"):
                pieces.append(f"- {text[1:]}")
            else:
                pieces.append(f"+ {text}")
        return " ".join(pieces) if pieces else "0"

    def leaves(self):
        for term in self.terms:
            yield from term.leaves()


@dataclass(frozen=True)
class Product(KappaExpr):
    factors: tuple[KappaExpr, ...]

    def render(self) -> str:
        pieces = []
        for i, factor in enumerate(self.factors):
            text = factor.render()
            if _parenthesize_in_product(factor) and i > 0:
                text = f"({text})"
            elif isinstance(factor, Sum):
                text = f"({text})"
            pieces.append(text)
        return "*".join(pieces) if pieces else "1"

    def leaves(self):
        for factor in self.factors:
            yield from factor.leaves()


@dataclass(frozen=True)
class Power(KappaExpr):
    base: KappaExpr
    exponent: int

    def __post_init__(self):
        if self.exponent < 0:
            raise DomainError(f"negative power {self.exponent} in a kappa expression")

    def render(self) -> str:
        text = self.base.render()
        if not isinstance(self.base, (Kappa, Cls)):
            text = f"({text})"
        return f"{text}^{self.exponent}"

    def leaves(self):
        yield from self.base.leaves()


def evaluate(
    expr: KappaExpr,
    table: GeneratorTable,
    kappa_fn: Callable[[BasisMonomial], GradedPoly],
    cls_fn: Callable[[BasisMonomial], GradedPoly] | None = None,
) -> GradedPoly:
    """Fold an expression into a polynomial by substituting for its leaves."""
    if isinstance(expr, Const):
        return GradedPoly.constant(table, expr.value)
    if isinstance(expr, Kappa):
        return kappa_fn(expr.mono)
    if isinstance(expr, Cls):
        if cls_fn is None:
            raise DomainError("expression contains a section class but no rule for them was given")
        return cls_fn(expr.mono)
    if isinstance(expr, Sum):
        out = GradedPoly.zero(table)
        for term in expr.terms:
            out = out + evaluate(term, table, kappa_fn, cls_fn)
        return out
    if isinstance(expr, Product):
        out = GradedPoly.constant(table, 1)
        for factor in expr.factors:
            out = out * evaluate(factor, table, kappa_fn, cls_fn)
        return out
    if isinstance(expr, Power):
        return evaluate(expr.base, table, kappa_fn, cls_fn) ** expr.exponent
    raise DomainError(f"unknown expression node {type(expr).__name__}")


def expression_degree(expr: KappaExpr, n: int) -> int | None:
    """Formal degree of a homogeneous expression, or None if inhomogeneous.

    Kappa leaves weigh deg(c) - 2n, section classes weigh deg(c); a zero
    constant is homogeneous of every degree and acts as a wildcard.
    """
    WILDCARD = "any"

    def walk(node: KappaExpr):
        if isinstance(node, Const):
            return WILDCARD if node.value == 0 else 0
        if isinstance(node, Kappa):
            return node.mono.degree - 2 * n
        if isinstance(node, Cls):
            return node.mono.degree
        if isinstance(node, Power):
            base = walk(node.base)
            if base is None or base == WILDCARD:
                return base
            return base * node.exponent
        if isinstance(node, Product):
            total = 0
            for factor in node.factors:
                d = walk(factor)
                if d is None:
                    return None
                if d == WILDCARD:
                    return WILDCARD
                total += d
            return total
        if isinstance(node, Sum):
            seen: set[int] = set()
            for term in node.terms:
                d = walk(term)
                if d is None:
                    return None
                if d != WILDCARD:
                    seen.add(d)
            if len(seen) > 1:
                return None
            return seen.pop() if seen else WILDCARD
        raise DomainError(f"unknown expression node {type(node).__name__}")

    degree = walk(expr)
    return None if degree is None or degree == "any" else degree


class _Parser:
    def __init__(self, src: str, n: int, flavor: str):
        if flavor not in FLAVORS:
            raise DomainError(f"unknown flavor {flavor!r}; expected one of {FLAVORS}")
        self.src = src
        self.pos = 0
        self.n = n
        self.flavor = flavor

    def error(self, message: str):
        raise ParseError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        # The NUL sentinel keeps membership tests like `peek() in "+-"` honest
        # at end of input (an empty string is a substring of everything).
        self.skip_ws()
        return self.src[self.pos] if self.pos < len(self.src) else "\x00"

    def take(self, expected: str):
        self.skip_ws()
        if not self.src.startswith(expected, self.pos):
            self.error(f"expected {expected!r}")
        self.pos += len(expected)

    def nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.src) and self.src[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected a number")
        return int(self.src[start : self.pos])

    def rational(self) -> Fraction:
        self.skip_ws()
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        numerator = self.nat()
        if self.peek() == "/":
            self.pos += 1
            denominator = self.nat()
            if denominator == 0:
                self.error("zero denominator")
            return Fraction(sign * numerator, denominator)
        return Fraction(sign * numerator)

    def monomial(self) -> BasisMonomial:
        if self.peek() == "1":
            self.pos += 1
            return BasisMonomial.unit(self.n)
        e_exp = 0
        p_exps = [0] * (self.n - 1)

        def atom():
            nonlocal e_exp
            ch = self.peek()
            if ch == "e":
                self.pos += 1
                power = 1
                if self.peek() == "^":
                    self.pos += 1
                    power = self.nat()
                e_exp += power
            elif ch == "p":
                self.pos += 1
                index_pos = self.pos
                index = self.nat()
                power = 1
                if self.peek() == "^":
                    self.pos += 1
                    power = self.nat()
                if index < 1 or index > self.n:
                    self.pos = index_pos
                    self.error(f"p{index} is out of range for half-dimension {self.n}")
                if index == self.n:
                    e_exp += 2 * power
                else:
                    p_exps[index - 1] += power
            else:
                self.error("expected 'e' or 'p<i>' in a monomial")

        atom()
        while self.peek() == "*":
            self.pos += 1
            atom()
        return BasisMonomial(self.n, e_exp, tuple(p_exps))

    def bracketed_monomial(self) -> BasisMonomial:
        self.take("[")
        mono = self.monomial()
        self.take("]")
        return mono

    def primary(self) -> KappaExpr:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            self.take(")")
            return inner
        if ch in "kK":
            self.pos += 1
            return Kappa(self.bracketed_monomial())
        if ch in "cC":
            if self.flavor != "pointed":
                self.error(f"section classes are not defined in the {self.flavor} flavor")
            self.pos += 1
            return Cls(self.bracketed_monomial())
        if ch.isdigit() or ch in "+-":
            return Const(self.rational())
        self.error("expected a rational, 'k[', 'c[' or '('")

    def factor(self) -> KappaExpr:
        node = self.primary()
        while self.peek() == "^":
            self.pos += 1
            node = Power(node, self.nat())
        return node

    def term(self) -> KappaExpr:
        factors = [self.factor()]
        while self.peek() == "*":
            self.pos += 1
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def expr(self) -> KappaExpr:
        terms = [self.term()]
        while self.peek() in "+-":
            op = self.peek()
            self.pos += 1
            term = self.term()
            if op == "-":
                term = Product((Const(Fraction(-1)), term))
            terms.append(term)
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def parse(self) -> KappaExpr:
        self.skip_ws()
        if self.pos == len(self.src):
            self.error("empty expression")
        node = self.expr()
        self.skip_ws()
        if self.pos != len(self.src):
            self.error("trailing input")
        return node


def parse(src: str, n: int, flavor: str = "closed") -> KappaExpr:
    """Parse a kappa expression, validating monomials for half-dimension n."""
    return _Parser(src, n, flavor).parse()
