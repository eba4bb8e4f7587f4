"""Sequences of k-th powers with constant second differences."""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Callable, Iterable, Sequence

from ..polycore import as_fraction, integer_root
from ..surfaces import ProjPoint, SurfaceId, membership

TRIVIAL = "trivial"
DEGENERATE = "degenerate"
NONTRIVIAL = "nontrivial"
NOT_CONSTANT = "not-constant-second-diff"
SHORT = "degenerate-by-length"


class NoFit(ValueError):
    """The values do not have constant second differences."""


def second_diffs(values: Sequence) -> list[Fraction]:
    if len(values) < 3:
        raise ValueError("second differences need at least 3 values")
    v = [as_fraction(x) for x in values]
    return [v[i] - 2 * v[i - 1] + v[i - 2] for i in range(2, len(v))]


def is_constant(values: Sequence) -> Fraction | None:
    d = second_diffs(values)
    return d[0] if all(x == d[0] for x in d) else None


@dataclass
class SeqRecord:
    entries: list[Fraction]
    k: int
    powers: list[Fraction]
    second_diff: Fraction | None
    classification: str
    # x_i = +-(a*i + b) witness for trivial k=2 sequences
    witness: tuple[Fraction, Fraction] | None = None
    meta: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        def txt(q):
            return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"

        data = {
            "entries": [txt(x) for x in self.entries],
            "k": self.k,
            "second_diff": None if self.second_diff is None else txt(self.second_diff),
            "classification": self.classification,
        }
        if self.witness is not None:
            data["a"], data["b"] = txt(self.witness[0]), txt(self.witness[1])
        data.update(self.meta)
        return data


def trivial_witness(entries: Sequence) -> tuple[Fraction, Fraction] | None:
    """(a, b) with |x_i| = |a*i + b| for i = 1..n, if any."""
    x = [as_fraction(e) for e in entries]
    if len(x) < 2:
        return None
    for s2 in (1, -1):
        # x_1 = a + b, s2*x_2 = 2a + b
        a = s2 * x[1] - x[0]
        b = x[0] - a
        if all(abs(xi) == abs(a * i + b) for i, xi in enumerate(x, start=1)):
            return a, b
    return None


def classify(entries: Sequence, k: int) -> SeqRecord:
    if k < 2:
        raise ValueError("k must be >= 2")
    x = [as_fraction(e) for e in entries]
    powers = [xi ** k for xi in x]
    if len(x) < 4:
        d = is_constant(powers) if len(x) >= 3 else None
        return SeqRecord(x, k, powers, d, SHORT)
    d = is_constant(powers)
    if d is None:
        return SeqRecord(x, k, powers, None, NOT_CONSTANT)
    if k == 2:
        w = trivial_witness(x)
        if w is not None:
            return SeqRecord(x, k, powers, d, TRIVIAL, w)
        return SeqRecord(x, k, powers, d, NONTRIVIAL)
    if all(p == powers[0] for p in powers):
        return SeqRecord(x, k, powers, d, DEGENERATE)
    return SeqRecord(x, k, powers, d, NONTRIVIAL)


@dataclass(frozen=True)
class QuadFit:
    a: Fraction
    b: Fraction
    c: Fraction

    def __call__(self, x) -> Fraction:
        x = as_fraction(x)
        return self.a * x * x + self.b * x + self.c

    def is_square(self) -> bool:
        """Is f the square of a linear polynomial over Q?"""
        from ..polycore import rational_root

        if self.a == 0:
            return self.b == 0 and rational_root(self.c, 2) is not None
        return self.b * self.b == 4 * self.a * self.c and rational_root(self.a, 2) is not None

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b), "c": str(self.c)}


def fit_quadratic(powers: Sequence, start: int = 1) -> QuadFit:
    """The quadratic with f(start + i) = powers[i] for all i."""
    p = [as_fraction(x) for x in powers]
    d = is_constant(p)
    if d is None:
        raise NoFit("second differences are not constant")
    a = d / 2
    x0 = Fraction(start)
    # f(x0+1) - f(x0) = a(2x0 + 1) + b
    b = p[1] - p[0] - a * (2 * x0 + 1)
    c = p[0] - a * x0 * x0 - b * x0
    fit = QuadFit(a, b, c)
    if any(fit(start + i) != v for i, v in enumerate(p)):
        raise AssertionError("quadratic fit does not reproduce the data")
    return fit


def sequence_point_bridge(rec: SeqRecord | Sequence, n: int | None = None) -> ProjPoint:
    entries = rec.entries if isinstance(rec, SeqRecord) else [as_fraction(e) for e in rec]
    k = rec.k if isinstance(rec, SeqRecord) else None
    if n is not None and n != len(entries):
        raise ValueError("sequence length does not match n")
    if all(e == 0 for e in entries):
        raise ValueError("zero sequence has no projective point")
    if k is not None and len(entries) >= 3 and is_constant([e ** k for e in entries]) is None:
        raise ValueError("second differences are not constant")
    return ProjPoint(entries)


def point_to_sequence(p: ProjPoint, k: int) -> SeqRecord:
    if len(p.coords) >= 4 and not membership(p, SurfaceId(p.n, k)):
        raise ValueError("point is not on X_{n,k}")
    return classify(list(p.coords), k)


def miain_bound(N: int) -> int:
    """Length beyond which the absolute-bound argument rules out nontrivial squares."""
    if N < 0:
        raise ValueError("N must be >= 0")
    return N + 12


# ---------------------------------------------------------------------------
# searches

def _normal_key(entries: Sequence[int], k: int) -> tuple[int, ...]:
    g = 0
    for e in entries:
        g = gcd(g, e)
    xs = [e // g for e in entries]
    if k % 2 == 0:
        return tuple(abs(e) for e in xs)
    first = next(e for e in xs if e)
    return tuple(-e for e in xs) if first < 0 else tuple(xs)


def _kth_root(n: int, k: int) -> int | None:
    if n < 0:
        if k % 2 == 0:
            return None
        r = integer_root(-n, k)
        return None if r is None else -r
    return integer_root(n, k)


def _extend(prefix: list[int], k: int, D: int, length: int) -> list[int] | None:
    xs = list(prefix)
    while len(xs) < length:
        nxt = 2 * xs[-1] ** k - xs[-2] ** k + D
        r = _kth_root(nxt, k)
        if r is None:
            return None
        xs.append(r)
    return xs


def _collect(found: dict, xs: list[int], k: int, meta: dict | None = None) -> None:
    if not any(xs):
        return
    rec = classify(xs, k)
    if rec.classification != NONTRIVIAL:
        return
    key = _normal_key(xs, k)
    if key not in found:
        norm = classify(list(key), k)
        if meta:
            norm.meta.update(meta)
        found[key] = norm


def search_sequences(
    k: int,
    length: int,
    height: int,
    D=None,
    mode: str = "exhaustive",
    progress: Callable[[str], None] | None = None,
) -> list[SeqRecord]:
    """Nontrivial integer sequences of k-th powers with constant second differences.

    ``mode='exhaustive'`` scans integer entries with |x_i| <= height (for even
    k only non-negative entries, since signs do not matter); a given D fixes
    the recurrence so only the first two entries are free.  ``mode='allison'``
    scans f = a(x^2 + x) + c over |a|, |c| <= height at x = -4..3.
    """
    if height < 1:
        raise ValueError("height must be >= 1")
    if length < 3:
        raise ValueError("length must be >= 3")
    found: dict[tuple[int, ...], SeqRecord] = {}
    if mode == "allison":
        if k != 2 or length != 8:
            raise ValueError("the symmetric family produces 8 squares")
        for a, c, xs in allison_family(height, progress):
            _collect(found, xs, 2, {"family_a": a, "family_c": c})
    elif mode == "exhaustive":
        lo = 0 if k % 2 == 0 else -height
        rng = range(lo, height + 1)
        for x1 in rng:
            if progress and x1 % 50 == 0:
                progress(f"search k={k} length={length}: x1={x1}")
            for x2 in rng:
                if D is not None:
                    xs = _extend([x1, x2], k, int(as_fraction(D)), length)
                    if xs is not None:
                        _collect(found, xs, k)
                    continue
                for x3 in rng:
                    d = x3 ** k - 2 * x2 ** k + x1 ** k
                    xs = _extend([x1, x2, x3], k, d, length)
                    if xs is not None:
                        _collect(found, xs, k)
    else:
        raise ValueError(f"unknown search mode {mode!r}")
    return [found[key] for key in sorted(found)]


def allison_family(height: int, progress: Callable[[str], None] | None = None) -> Iterable[tuple[int, int, list[int]]]:
    """(a, c, roots) with a(x^2+x)+c a square at x = -4..3, |a|, |c| <= height.

    The values there are c+12a, c+6a, c+2a, c, c, c+2a, c+6a, c+12a.
    """
    def sqrt_or_none(n: int) -> int | None:
        if n < 0:
            return None
        r = isqrt(n)
        return r if r * r == n else None

    for s in range(isqrt(height) + 1):
        c = s * s
        if progress and s % 20 == 0:
            progress(f"allison family: c={c}")
        for a in range(-height, height + 1):
            if a == 0:
                continue
            r2 = sqrt_or_none(c + 2 * a)
            if r2 is None:
                continue
            r6 = sqrt_or_none(c + 6 * a)
            if r6 is None:
                continue
            r12 = sqrt_or_none(c + 12 * a)
            if r12 is None:
                continue
            yield a, c, [r12, r6, r2, s, s, r2, r6, r12]


def stderr_progress(message: str) -> None:
    print(message, file=sys.stderr, flush=True)
