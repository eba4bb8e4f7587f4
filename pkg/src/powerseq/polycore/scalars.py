"""Exact scalar domains: rationals, rational functions in one parameter,
and elements of radical towers Q[b1, ..., bt] / (bi^k - ri).

Rationals are plain :class:`fractions.Fraction` values.  The two richer
domains interoperate with ``int`` and ``Fraction`` through the usual
reflected operators, so polynomial code can stay agnostic of the domain.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence, Union

Rat = Fraction
RationalLike = Union[int, Fraction]


def as_fraction(value) -> Fraction:
    """Coerce ``int``/``Fraction``/``"p/q"`` text to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not a rational: {value!r}")


def frac_text(q: RationalLike) -> str:
    q = as_fraction(q)
    return f"{q.numerator}/{q.denominator}"


def is_rational(value) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def integer_root(n: int, k: int) -> int | None:
    """Exact integer k-th root of ``n >= 0`` or None."""
    if n < 0:
        raise ValueError("negative radicand")
    if n < 2:
        return n
    if k == 2:
        r = isqrt(n)
        return r if r * r == n else None
    r = int(round(n ** (1.0 / k)))
    # float guess is only a starting point for big n
    lo, hi = max(r - 2, 0), r + 2
    if lo ** k > n or hi ** k < n:
        lo, hi = 0, 1 << (n.bit_length() // k + 1)
        while lo < hi:
            mid = (lo + hi) // 2
            if mid ** k < n:
                lo = mid + 1
            else:
                hi = mid
        return lo if lo ** k == n else None
    for c in range(lo, hi + 1):
        if c ** k == n:
            return c
    return None


def rational_root(q: RationalLike, k: int) -> Fraction | None:
    """A rational number r with r**k == q, or None.

    For even k the non-negative root is returned; for odd k the real root.
    """
    q = as_fraction(q)
    if q == 0:
        return Fraction(0)
    sign = 1
    if q < 0:
        if k % 2 == 0:
            return None
        sign = -1
    num = integer_root(abs(q.numerator), k)
    den = integer_root(q.denominator, k)
    if num is None or den is None:
        return None
    return Fraction(sign * num, den)


def rational_roots(q: RationalLike, k: int) -> list[Fraction]:
    """All rational solutions of x**k == q, in decreasing order."""
    r = rational_root(q, k)
    if r is None:
        return []
    if r == 0 or k % 2 == 1:
        return [r]
    return [r, -r]


def squarefree_part(n: int) -> int:
    """Signed squarefree part of a nonzero integer (trial division)."""
    if n == 0:
        raise ValueError("zero has no squarefree part")
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e % 2:
            out *= p
        p += 1 if p == 2 else 2
    return sign * out * n


# ---------------------------------------------------------------------------
# univariate polynomials over Q

class UPoly:
    """Dense univariate polynomial over Q, coefficients lowest degree first."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable[RationalLike] = (), var: str = "t"):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self.var = var

    @classmethod
    def const(cls, c: RationalLike, var: str = "t") -> "UPoly":
        return cls([c], var)

    @classmethod
    def gen(cls, var: str = "t") -> "UPoly":
        return cls([0, 1], var)

    def _lift(self, other) -> "UPoly":
        if isinstance(other, UPoly):
            return other
        if is_rational(other):
            return UPoly([other], self.var)
        return NotImplemented

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other) -> bool:
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("UPoly", self.coeffs))

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UPoly([x + y for x, y in zip(a, b)], self.var)

    __radd__ = __add__

    def __neg__(self) -> "UPoly":
        return UPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return UPoly([], self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "UPoly":
        if e < 0:
            raise ValueError("negative exponent")
        result = UPoly([1], self.var)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other: "UPoly") -> tuple["UPoly", "UPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv = 1 / other.lc()
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] * inv
            if c == 0:
                continue
            quot[i - dq] = c
            for j, b in enumerate(other.coeffs):
                rem[i - dq + j] -= c * b
        return UPoly(quot, self.var), UPoly(rem[:dq], self.var)

    def monic(self) -> "UPoly":
        if self.is_zero():
            return self
        inv = 1 / self.lc()
        return UPoly([c * inv for c in self.coeffs], self.var)

    def gcd(self, other: "UPoly") -> "UPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UPoly":
        return UPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def content(self) -> Fraction:
        """Positive rational c with self/c primitive integral."""
        if self.is_zero():
            return Fraction(0)
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        num = 0
        for c in self.coeffs:
            num = gcd(num, (c * den).numerator)
        return Fraction(num, den)

    def to_text(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if c == 0:
                continue
            if e == 0:
                parts.append(frac_text(c))
            elif e == 1:
                parts.append(f"{frac_text(c)}*{self.var}")
            else:
                parts.append(f"{frac_text(c)}*{self.var}^{e}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"UPoly({self.to_text()})"

    __str__ = to_text


# ---------------------------------------------------------------------------
# rational functions in one formal parameter

class RatFunc:
    """num/den over Q in one parameter, gcd-reduced with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: UPoly, den: UPoly | None = None):
        var = num.var
        if den is None:
            den = UPoly([1], var)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = UPoly([], var), UPoly([1], var)
            return
        g = num.gcd(den)
        if g.degree > 0:
            num, _ = num.divmod(g)
            den, _ = den.divmod(g)
        lc = den.lc()
        if lc != 1:
            num = num * (1 / lc)
            den = den * (1 / lc)
        self.num, self.den = num, den

    @classmethod
    def param(cls, var: str = "alpha") -> "RatFunc":
        return cls(UPoly.gen(var))

    @property
    def var(self) -> str:
        return self.num.var

    def _lift(self, other):
        if isinstance(other, RatFunc):
            return other
        if is_rational(other):
            return RatFunc(UPoly([other], self.var))
        if isinstance(other, UPoly):
            return RatFunc(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def __eq__(self, other) -> bool:
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self.is_constant():
            return hash(self.num(0))
        return hash((self.num, self.den))

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e: int) -> "RatFunc":
        if e < 0:
            return self.inverse() ** (-e)
        return RatFunc(self.num ** e, self.den ** e)

    def specialize(self, value: RationalLike) -> Fraction:
        d = self.den(as_fraction(value))
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at {self.var}={value}")
        return self.num(as_fraction(value)) / d

    def to_text(self) -> str:
        return "{" + self.num.to_text() + "|" + self.den.to_text() + "}"

    def __repr__(self) -> str:
        return f"RatFunc({self.to_text()})"

    __str__ = to_text


# ---------------------------------------------------------------------------
# radical towers

class RadicalElem:
    """Element of Q[beta1..betat] / (beta_i^k_i - r_i) in reduced normal form.

    ``tower`` is a tuple of ``(k_i, r_i)``; terms map exponent tuples (each
    exponent < k_i) to nonzero rationals.  Two elements combine when one
    tower is a prefix of the other.
    """

    __slots__ = ("tower", "terms")

    def __init__(self, tower: Sequence[tuple[int, RationalLike]], terms=None):
        self.tower: tuple[tuple[int, Fraction], ...] = tuple(
            (int(k), as_fraction(r)) for k, r in tower
        )
        for k, r in self.tower:
            if k < 2:
                raise ValueError("radical index must be >= 2")
            if r == 0:
                raise ValueError("zero radicand")
        t = len(self.tower)
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != t:
                raise ValueError("exponent length does not match tower height")
            c = as_fraction(c)
            # reduce beta^k -> r
            red = []
            for (k, r), e in zip(self.tower, exps):
                q, e2 = divmod(e, k)
                if q:
                    c *= r ** q
                red.append(e2)
            key = tuple(red)
            clean[key] = clean.get(key, Fraction(0)) + c
        self.terms = {e: c for e, c in clean.items() if c != 0}

    @classmethod
    def generator(cls, tower, index: int) -> "RadicalElem":
        exps = [0] * len(tower)
        exps[index] = 1
        return cls(tower, {tuple(exps): 1})

    @classmethod
    def constant(cls, tower, c: RationalLike) -> "RadicalElem":
        return cls(tower, {(0,) * len(tower): c})

    @property
    def height(self) -> int:
        return len(self.tower)

    def promote(self, tower) -> "RadicalElem":
        tower = tuple((int(k), as_fraction(r)) for k, r in tower)
        if tower[: len(self.tower)] != self.tower:
            raise ValueError("incompatible radical towers")
        pad = (0,) * (len(tower) - len(self.tower))
        return RadicalElem(tower, {e + pad: c for e, c in self.terms.items()})

    def _coerce(self, other):
        if isinstance(other, RadicalElem):
            if len(other.tower) > len(self.tower):
                return self.promote(other.tower), other
            if len(other.tower) < len(self.tower):
                return self, other.promote(self.tower)
            if other.tower != self.tower:
                raise ValueError("incompatible radical towers")
            return self, other
        if is_rational(other):
            return self, RadicalElem.constant(self.tower, other)
        return None

    def is_zero(self) -> bool:
        return not self.terms

    def as_rational(self) -> Fraction | None:
        """The rational value if this element lies in Q, else None."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1:
            (exps, c), = self.terms.items()
            if not any(exps):
                return c
        return None

    def is_unit_monomial(self) -> bool:
        return len(self.terms) == 1

    def __eq__(self, other) -> bool:
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.terms == b.terms

    def __hash__(self) -> int:
        q = self.as_rational()
        if q is not None:
            return hash(q)
        return hash((self.tower, frozenset(self.terms.items())))

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        terms = dict(a.terms)
        for e, c in b.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return RadicalElem(a.tower, terms)

    __radd__ = __add__

    def __neg__(self) -> "RadicalElem":
        return RadicalElem(self.tower, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b + (-a)

    def __mul__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        terms: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return RadicalElem(a.tower, terms)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "RadicalElem":
        if e < 0:
            return self.inverse() ** (-e)
        result = RadicalElem.constant(self.tower, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "RadicalElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if len(self.terms) == 1:
            (exps, c), = self.terms.items()
            # beta^e * beta^(k-e) = r
            out_exps, scale = [], Fraction(1)
            for (k, r), e in zip(self.tower, exps):
                if e:
                    out_exps.append(k - e)
                    scale /= r
                else:
                    out_exps.append(0)
            return RadicalElem(self.tower, {tuple(out_exps): scale / c})
        return self._inverse_by_linear_solve()

    def _inverse_by_linear_solve(self) -> "RadicalElem":
        from itertools import product

        from .linalg import solve

        basis = list(product(*[range(k) for k, _ in self.tower]))
        index = {b: i for i, b in enumerate(basis)}
        cols = []
        for b in basis:
            img = self * RadicalElem(self.tower, {b: 1})
            col = [Fraction(0)] * len(basis)
            for e, c in img.terms.items():
                col[index[e]] = c
            cols.append(col)
        matrix = [[cols[j][i] for j in range(len(basis))] for i in range(len(basis))]
        rhs = [Fraction(0)] * len(basis)
        rhs[index[(0,) * len(self.tower)]] = Fraction(1)
        sol = solve(matrix, rhs)
        if sol is None:
            raise ZeroDivisionError("element is a zero divisor in the radical algebra")
        return RadicalElem(self.tower, {b: sol[i] for i, b in enumerate(basis)})

    def __truediv__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b * a.inverse()

    def tower_text(self) -> str:
        return ", ".join(
            f"beta{i + 1}^{k}={frac_text(r)}" for i, (k, r) in enumerate(self.tower)
        )

    def to_text(self) -> str:
        if not self.terms:
            body = "0"
        else:
            parts = []
            for exps in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
                mono = "*".join(
                    f"beta{i + 1}" + (f"^{e}" if e > 1 else "")
                    for i, e in enumerate(exps)
                    if e
                )
                c = frac_text(self.terms[exps])
                parts.append(f"{c}*{mono}" if mono else c)
            body = " + ".join(parts)
        return f"{body} [{self.tower_text()}]"

    def __repr__(self) -> str:
        return f"RadicalElem({self.to_text()})"

    __str__ = to_text


Scalar = Union[Fraction, RatFunc, RadicalElem]


def scalar_is_zero(c) -> bool:
    if isinstance(c, (RatFunc, RadicalElem)):
        return c.is_zero()
    return c == 0


def scalar_text(c) -> str:
    if isinstance(c, (RatFunc, RadicalElem)):
        return c.to_text()
    return frac_text(c)


def scalar_inverse(c):
    if isinstance(c, (RatFunc, RadicalElem)):
        return c.inverse()
    return 1 / as_fraction(c)
