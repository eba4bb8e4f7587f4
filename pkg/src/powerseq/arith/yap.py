"""y-arithmetic progressions on the curves y^2 = x^k + b."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Sequence

from ..polycore import as_fraction, integer_root, rational_root, squarefree_part


class NotEquivalent(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass(frozen=True)
class YapRecord:
    """Points (x_j, y_j), j = 1..L, on y^2 = x^k + b with y_j = u + v*j."""

    k: int
    b: Fraction
    points: tuple[tuple[Fraction, Fraction], ...]
    u: Fraction
    v: Fraction

    @classmethod
    def from_xs(cls, k: int, xs: Sequence, u, v) -> "YapRecord":
        u, v = as_fraction(u), as_fraction(v)
        xs = [as_fraction(x) for x in xs]
        ys = [u + v * j for j in range(1, len(xs) + 1)]
        b = ys[0] ** 2 - xs[0] ** k
        return cls(k, b, tuple(zip(xs, ys)), u, v)

    @property
    def xs(self) -> list[Fraction]:
        return [x for x, _ in self.points]

    @property
    def ys(self) -> list[Fraction]:
        return [y for _, y in self.points]

    def scaled(self, lam, mu) -> "YapRecord":
        lam, mu = as_fraction(lam), as_fraction(mu)
        return YapRecord(
            self.k, mu * mu * self.b,
            tuple((lam * x, mu * y) for x, y in self.points),
            mu * self.u, mu * self.v,
        )

    def to_json(self) -> dict:
        def txt(q):
            return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"

        return {
            "k": self.k,
            "b": txt(self.b),
            "u": txt(self.u),
            "v": txt(self.v),
            "x": [txt(x) for x in self.xs],
            "y": [txt(y) for y in self.ys],
        }


@dataclass(frozen=True)
class EquivWitness:
    lam: Fraction
    mu: Fraction
    k: int

    def __post_init__(self):
        if self.mu * self.mu != self.lam ** self.k:
            raise ValueError("witness violates mu^2 = lam^k")

    def to_json(self) -> dict:
        return {"lambda": str(self.lam), "mu": str(self.mu), "k": self.k}


def yap_verify(rec: YapRecord) -> bool:
    if rec.v == 0:
        raise ValueError("v = 0 is not a progression")
    if rec.b == 0:
        raise ValueError("b = 0 is excluded")
    if len(rec.points) < 3:
        return False
    for j, (x, y) in enumerate(rec.points, start=1):
        if y != rec.u + rec.v * j or y * y != x ** rec.k + rec.b:
            return False
    xs = rec.xs
    target = 2 * rec.v * rec.v
    return all(
        xs[j + 2] ** rec.k - 2 * xs[j + 1] ** rec.k + xs[j] ** rec.k == target
        for j in range(len(xs) - 2)
    )


def yap_equivalent(s: YapRecord, t: YapRecord) -> EquivWitness:
    """Witness (lam, mu) with t = (lam x, mu y) applied to s, or NotEquivalent."""
    if s.k != t.k:
        raise NotEquivalent("different exponents")
    if len(s.points) != len(t.points):
        raise NotEquivalent("different lengths")
    k = s.k
    lam = None
    for x, x2 in zip(s.xs, t.xs):
        if x != 0:
            lam = x2 / x
            break
    if lam is None or lam == 0:
        raise NotEquivalent("x-coordinates are not proportional by a nonzero factor")
    if any(x2 != lam * x for x, x2 in zip(s.xs, t.xs)):
        raise NotEquivalent("x-coordinates are not proportional")
    if rational_root(lam ** k, 2) is None:
        raise NotEquivalent("lambda^k is not a rational square")
    mu = t.v / s.v
    if mu * mu != lam ** k:
        raise NotEquivalent("v'/v does not square to lambda^k")
    if t.u != mu * s.u:
        raise NotEquivalent("u' != mu * u")
    if any(y2 != mu * y for y, y2 in zip(s.ys, t.ys)):
        raise NotEquivalent("y-coordinates do not scale by mu")
    if t.b != mu * mu * s.b:
        raise NotEquivalent("b' != mu^2 * b")
    return EquivWitness(lam, mu, k)


def canonical_scaling(rec: YapRecord) -> tuple[Fraction, Fraction]:
    """(lam, mu) taking ``rec`` to its class representative.

    x is made primitive integral; for odd k only square factors of the
    content can be removed, so the squarefree part of the content stays.
    The sign of mu makes v positive.
    """
    xs = rec.xs
    den = 1
    for x in xs:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in xs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        raise ValueError("all x vanish")
    content = Fraction(g, den)
    if rec.k % 2 == 0:
        first = next(v for v in ints if v)
        lam = 1 / content if first > 0 else -1 / content
    else:
        lam = _odd_lambda(content)
    mu = rational_root(lam ** rec.k, 2)
    if mu is None:
        raise AssertionError("canonical scaling is not admissible")
    if rec.v * mu < 0:
        mu = -mu
    return lam, mu


def _odd_lambda(content: Fraction) -> Fraction:
    """Square rational lam with lam * content a squarefree positive integer."""
    # num/den and num*den lie in the same square class
    sf = squarefree_part(content.numerator * content.denominator)
    lam = Fraction(sf) / content
    if rational_root(lam, 2) is None:
        raise AssertionError("odd scaling is not a square")
    return lam


def canonical_form(rec: YapRecord) -> YapRecord:
    lam, mu = canonical_scaling(rec)
    return rec.scaled(lam, mu)


def _kth_root(n: int, k: int) -> int | None:
    if n < 0:
        if k % 2 == 0:
            return None
        r = integer_root(-n, k)
        return None if r is None else -r
    return integer_root(n, k)


def yap_search(
    k: int,
    length: int,
    bounds: dict,
    progress: Callable[[str], None] | None = None,
) -> list[YapRecord]:
    """Integer x with y-AP, v in 1..v_max, |x_1|, |x_2| <= x_max, |b| <= b_max.

    Given x_1, x_2 and v, the window relation fixes every later x^k, and
    u = (x_2^k - x_1^k - 3v^2) / (2v).  Results are reduced to class
    representatives and listed in canonical order.
    """
    if k < 3:
        raise ValueError("k must be >= 3")
    if length < 3:
        raise ValueError("length must be >= 3")
    x_max = int(bounds.get("x_max", 20))
    v_max = int(bounds.get("v_max", bounds.get("y_max", 50)))
    b_max = bounds.get("b_max")
    found: dict[tuple, YapRecord] = {}
    for x1 in range(-x_max, x_max + 1):
        if progress and x1 % 20 == 0:
            progress(f"yap search k={k} length={length}: x1={x1}")
        p1 = x1 ** k
        for x2 in range(-x_max, x_max + 1):
            p2 = x2 ** k
            for v in range(1, v_max + 1):
                xs = [x1, x2]
                ok = True
                prev2, prev1 = p1, p2
                while len(xs) < length:
                    nxt = 2 * prev1 - prev2 + 2 * v * v
                    r = _kth_root(nxt, k)
                    if r is None:
                        ok = False
                        break
                    xs.append(r)
                    prev2, prev1 = prev1, nxt
                if not ok:
                    continue
                u = Fraction(p2 - p1 - 3 * v * v, 2 * v)
                b = (u + v) ** 2 - p1
                if b == 0 or (b_max is not None and abs(b) > b_max):
                    continue
                rec = YapRecord.from_xs(k, xs, u, v)
                rep = canonical_form(rec)
                key = (tuple(rep.xs), rep.v, rep.u)
                if key not in found:
                    found[key] = rep
    return [found[key] for key in sorted(found)]


def yap_dedup(records: Sequence[YapRecord]) -> list[YapRecord]:
    """Keep one representative per equivalence class (checked with yap_equivalent)."""
    reps: list[YapRecord] = []
    for rec in records:
        for rep in reps:
            try:
                yap_equivalent(rep, rec)
                break
            except NotEquivalent:
                continue
        else:
            reps.append(rec)
    return reps
