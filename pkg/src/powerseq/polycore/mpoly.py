"""Sparse multivariate polynomials with exact scalar coefficients."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .scalars import (
    RadicalElem,
    RatFunc,
    UPoly,
    as_fraction,
    is_rational,
    scalar_inverse,
    scalar_is_zero,
    scalar_text,
)

Exps = tuple[int, ...]


def xvars(n: int) -> tuple[str, ...]:
    """The variable list ``x1, ..., xn``."""
    return tuple(f"x{i}" for i in range(1, n + 1))


def grlex_key(exps: Exps):
    return (sum(exps), exps)


def _norm_coeff(c):
    if isinstance(c, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, (Fraction, RatFunc, RadicalElem)):
        return c
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


class MPoly:
    """Immutable sparse polynomial; terms map exponent tuples to coefficients.

    Variables are ordered; monomials are compared in graded lexicographic
    order with the first variable largest.
    """

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exps, object] | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean: dict[Exps, object] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n:
                raise ValueError(f"exponent tuple {exps} does not match {n} variables")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent in polynomial term")
            c = _norm_coeff(c)
            if not scalar_is_zero(c):
                clean[exps] = c
        self.terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, variables: Sequence[str]) -> "MPoly":
        return cls(variables)

    @classmethod
    def const(cls, c, variables: Sequence[str]) -> "MPoly":
        return cls(variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def var(cls, name: str, variables: Sequence[str]) -> "MPoly":
        variables = tuple(variables)
        if name not in variables:
            raise ValueError(f"unknown variable {name!r}")
        exps = tuple(int(v == name) for v in variables)
        return cls(variables, {exps: 1})

    @classmethod
    def monomial(cls, c, exps: Exps, variables: Sequence[str]) -> "MPoly":
        return cls(variables, {tuple(exps): c})

    @classmethod
    def gens(cls, variables: Sequence[str]) -> list["MPoly"]:
        return [cls.var(v, variables) for v in variables]

    # -- basic queries ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def sorted_terms(self) -> list[tuple[Exps, object]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Exps, object]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=grlex_key)
        return exps, self.terms[exps]

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.variables.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def occurring_variables(self) -> list[str]:
        return [v for i, v in enumerate(self.variables) if any(e[i] for e in self.terms)]

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def coefficients(self) -> list:
        return [c for _, c in self.sorted_terms()]

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.variables != self.variables:
                raise ValueError(
                    f"incompatible variable lists {self.variables} and {other.variables}"
                )
            return other
        if is_rational(other) or isinstance(other, (RatFunc, RadicalElem)):
            return MPoly.const(other, self.variables)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self.variables == other.variables and self.terms == other.terms
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        terms = dict(self.terms)
        for e, c in o.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return MPoly(self.variables, terms)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.terms or not o.terms:
            return MPoly(self.variables)
        terms: dict[Exps, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                terms[e] = terms[e] + p if e in terms else p
        return MPoly(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "MPoly":
        if not isinstance(e, int) or e < 0:
            raise ValueError("polynomial power needs a non-negative integer exponent")
        result = MPoly.const(1, self.variables)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c) -> "MPoly":
        return MPoly(self.variables, {e: v * c for e, v in self.terms.items()})

    # -- calculus and substitution ----------------------------------------
    def diff(self, name: str) -> "MPoly":
        if name not in self.variables:
            raise ValueError(f"unknown variable {name!r}")
        i = self.variables.index(name)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
                terms[e2] = c * e[i]
        return MPoly(self.variables, terms)

    def evaluate(self, point: Sequence):
        """Exact value at ``point`` (one scalar per variable)."""
        if len(point) != len(self.variables):
            raise ValueError(
                f"point has {len(point)} coordinates, polynomial has {len(self.variables)} variables"
            )
        powers: dict[tuple[int, int], object] = {}

        def pw(i, e):
            key = (i, e)
            if key not in powers:
                powers[key] = point[i] ** e
            return powers[key]

        total = Fraction(0)
        for exps, c in self.terms.items():
            term = c
            for i, e in enumerate(exps):
                if e:
                    term = term * pw(i, e)
            total = total + term
        return total

    def substitute(self, mapping: Mapping[str, object], variables: Sequence[str] | None = None) -> "MPoly":
        """Replace variables by polynomials (or scalars) over ``variables``.

        Variables absent from ``mapping`` must exist in the target list.
        """
        target = tuple(variables) if variables is not None else self.variables
        images = []
        for v in self.variables:
            if v in mapping:
                img = mapping[v]
                if not isinstance(img, MPoly):
                    img = MPoly.const(img, target)
                elif img.variables != target:
                    raise ValueError("substitution image over the wrong variables")
            else:
                img = MPoly.var(v, target)
            images.append(img)
        cache: dict[tuple[int, int], MPoly] = {}
        result = MPoly(target)
        for exps, c in self.terms.items():
            term = MPoly.const(c, target)
            for i, e in enumerate(exps):
                if e:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = images[i] ** e
                    term = term * cache[key]
            result = result + term
        return result

    def with_variables(self, variables: Sequence[str]) -> "MPoly":
        """Re-express over a variable list containing every occurring variable."""
        variables = tuple(variables)
        idx = []
        for i, v in enumerate(self.variables):
            if v in variables:
                idx.append(variables.index(v))
            elif any(e[i] for e in self.terms):
                raise ValueError(f"variable {v!r} occurs but is missing from target list")
            else:
                idx.append(None)
        terms = {}
        for exps, c in self.terms.items():
            new = [0] * len(variables)
            for i, e in enumerate(exps):
                if idx[i] is not None:
                    new[idx[i]] = e
            terms[tuple(new)] = c
        return MPoly(variables, terms)

    def map_coefficients(self, fn: Callable) -> "MPoly":
        return MPoly(self.variables, {e: fn(c) for e, c in self.terms.items()})

    def specialize_parameter(self, value) -> "MPoly":
        """Substitute a rational value for the formal parameter of RatFunc coefficients."""
        return self.map_coefficients(
            lambda c: c.specialize(value) if isinstance(c, RatFunc) else c
        )

    def monic(self) -> "MPoly":
        _, lc = self.leading_term()
        return self.scale(scalar_inverse(lc))

    # -- text -------------------------------------------------------------
    def to_text(self) -> str:
        """Canonical form: graded-lex descending, coefficients as num/den."""
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                v + (f"^{e}" if e > 1 else "") for v, e in zip(self.variables, exps) if e
            )
            ctext = scalar_text(c)
            if isinstance(c, RadicalElem):
                ctext = "<" + ctext + ">"
            parts.append(f"{ctext}*{mono}" if mono else ctext)
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"MPoly({self.to_text()!r}, variables={self.variables})"

    @classmethod
    def parse(cls, text: str, variables: Sequence[str], parameter: str = "alpha") -> "MPoly":
        return _Parser(text, tuple(variables), parameter).parse()


# ---------------------------------------------------------------------------

class NotDivisible(ArithmeticError):
    """Signal that a polynomial is not a multiple of the proposed divisor."""


def divide_exact(p: MPoly, g: MPoly) -> MPoly | None:
    """Return h with p == h*g, or None when g does not divide p.

    Single-divisor leading-term reduction: if g | p then every partial
    remainder stays a multiple of g, so its leading monomial is divisible
    by LM(g); the first failure therefore certifies non-divisibility.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.variables != g.variables:
        raise ValueError("incompatible variable lists")
    lm_g, lc_g = g.leading_term()
    inv = scalar_inverse(lc_g)
    rest = p
    quotient: dict[Exps, object] = {}
    while not rest.is_zero():
        lm, lc = rest.leading_term()
        if any(a < b for a, b in zip(lm, lm_g)):
            return None
        shift = tuple(a - b for a, b in zip(lm, lm_g))
        c = lc * inv
        quotient[shift] = quotient[shift] + c if shift in quotient else c
        rest = rest - MPoly.monomial(c, shift, p.variables) * g
    h = MPoly(p.variables, quotient)
    if h * g != p:
        raise AssertionError("exact division failed re-multiplication")
    return h


def divide_exact_or_raise(p: MPoly, g: MPoly) -> MPoly:
    h = divide_exact(p, g)
    if h is None:
        raise NotDivisible(f"{g.to_text()} does not divide {p.to_text()}")
    return h


def poly_arithmetic(p: MPoly, q, op: str) -> MPoly:
    """Dispatch form of the ring operations (``op`` in add/sub/mul/pow)."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "pow":
        if not isinstance(q, int):
            raise TypeError("pow needs an integer exponent")
        return p ** q
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(p: MPoly, var: str) -> MPoly:
    return p.diff(var)


def evaluate(p: MPoly, point: Sequence):
    return p.evaluate(point)


def poly_from_upoly(u: UPoly, name: str | None = None) -> MPoly:
    name = name or u.var
    return MPoly((name,), {(i,): c for i, c in enumerate(u.coeffs)})


def upoly_from_poly(p: MPoly) -> UPoly:
    if len(p.variables) != 1:
        raise ValueError("not a univariate polynomial")
    deg = max(p.total_degree(), 0)
    coeffs = [Fraction(0)] * (deg + 1)
    for (e,), c in p.terms.items():
        coeffs[e] = as_fraction(c)
    return UPoly(coeffs, p.variables[0])


# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^(){}|<>\[\]]))")


class _Parser:
    def __init__(self, text: str, variables: tuple[str, ...], parameter: str):
        self.text = text
        self.variables = variables
        self.parameter = parameter
        self.tokens = self._tokenize(text)
        self.pos = 0

    @staticmethod
    def _tokenize(text: str) -> list[str]:
        out, i = [], 0
        text = text.strip()
        while i < len(text):
            m = _TOKEN.match(text, i)
            if not m or m.end() == i:
                raise ValueError(f"cannot parse polynomial near {text[i:i + 12]!r}")
            tok = m.group(1) or m.group(2) or m.group(3)
            out.append("^" if tok == "**" else tok)
            i = m.end()
            while i < len(text) and text[i].isspace():
                i += 1
        return out

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"expected {expected!r} in {self.text!r}")
        self.pos += 1
        return tok

    def parse(self) -> MPoly:
        if self.text.strip() == "":
            raise ValueError("empty polynomial text")
        p = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing input in {self.text!r}")
        return p

    def expr(self) -> MPoly:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        acc = self.term() if sign == 1 else -self.term()
        while self.peek() in ("+", "-"):
            sign = 1
            while self.peek() in ("+", "-"):
                if self.take() == "-":
                    sign = -sign
            t = self.term()
            acc = acc + t if sign == 1 else acc - t
        return acc

    def term(self) -> MPoly:
        acc = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            f = self.factor()
            if op == "*":
                acc = acc * f
            else:
                if not f.is_constant() or f.is_zero():
                    raise ValueError("division only by nonzero constants")
                acc = acc.scale(scalar_inverse(f.constant_value()))
        return acc

    def factor(self) -> MPoly:
        if self.peek() == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        if self.peek() == "^":
            self.take()
            e = int(self.take())
            base = base ** e
        return base

    def atom(self) -> MPoly:
        tok = self.peek()
        if tok is None:
            raise ValueError(f"unexpected end of {self.text!r}")
        if tok.isdigit():
            self.take()
            return MPoly.const(int(tok), self.variables)
        if tok == "(":
            self.take()
            p = self.expr()
            self.take(")")
            return p
        if tok == "{":
            self.take()
            num = self._param_poly(stop="|")
            self.take("|")
            den = self._param_poly(stop="}")
            self.take("}")
            return MPoly.const(RatFunc(num, den), self.variables)
        if tok[0].isalpha() or tok[0] == "_":
            self.take()
            if tok not in self.variables:
                raise ValueError(f"unknown variable {tok!r}")
            return MPoly.var(tok, self.variables)
        raise ValueError(f"unexpected token {tok!r} in {self.text!r}")

    def _param_poly(self, stop: str) -> UPoly:
        depth, start = 0, self.pos
        while self.peek() is not None and not (self.peek() == stop and depth == 0):
            if self.peek() in ("(", "{"):
                depth += 1
            elif self.peek() in (")", "}"):
                depth -= 1
            self.pos += 1
        sub = _Parser.__new__(_Parser)
        sub.text, sub.variables, sub.parameter = self.text, (self.parameter,), self.parameter
        sub.tokens, sub.pos = self.tokens[start:self.pos], 0
        return upoly_from_poly(sub.parse())


def iter_monomials(n: int, degree: int) -> Iterable[Exps]:
    """All exponent tuples of length n and total degree ``degree``."""
    if n == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in iter_monomials(n - 1, degree - first):
            yield (first,) + rest
