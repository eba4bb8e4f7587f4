"""Sequences of polynomials in one variable whose k-th powers have constant second differences."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..polycore import UPoly

CONSTANT_PROPORTIONAL = "constant-proportional"
AP_FORM = "ap-form"
UNRESOLVED = "unresolved"


class NotConstantSecondDiff(ValueError):
    pass


@dataclass
class PolySeq:
    entries: list[UPoly]
    k: int
    classification: str
    second_diff: UPoly
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        data = {
            "k": self.k,
            "entries": [e.to_text() for e in self.entries],
            "second_diff": self.second_diff.to_text(),
            "classification": self.classification,
        }
        data.update(self.witness)
        return data


def _poly(e, var: str) -> UPoly:
    if isinstance(e, UPoly):
        return e
    return UPoly([e], var)


def polynomial_second_diffs(powers: Sequence[UPoly]) -> list[UPoly]:
    return [powers[i] - 2 * powers[i - 1] + powers[i - 2] for i in range(2, len(powers))]


def _proportional(entries: list[UPoly]):
    base = next((e for e in entries if not e.is_zero()), None)
    if base is None:
        return None
    lc = base.lc()
    scalars = []
    for e in entries:
        if e.is_zero():
            scalars.append(Fraction(0))
            continue
        if e * lc != base * e.lc():
            return None
        scalars.append(e.lc() / lc)
    return base, scalars


def _ap_form(entries: list[UPoly]):
    f1, f2 = entries[0], entries[1]
    for e2 in (1, -1):
        # f_1 = a + b, e2 * f_2 = 2a + b
        a = f2 * e2 - f1
        b = f1 - a
        signs = []
        for j, f in enumerate(entries, start=1):
            lin = a * j + b
            if f == lin:
                signs.append(1)
            elif f == -lin:
                signs.append(-1)
            else:
                break
        else:
            return a, b, signs
    return None


def polyseq_classify(entries: Sequence, k: int, var: str = "t") -> PolySeq:
    if len(entries) < 4:
        raise ValueError("need at least 4 entries")
    if k < 2:
        raise ValueError("k must be >= 2")
    polys = [_poly(e, var) for e in entries]
    powers = [p ** k for p in polys]
    diffs = polynomial_second_diffs(powers)
    if any(d != diffs[0] for d in diffs):
        raise NotConstantSecondDiff("second differences of the powers are not constant")
    prop = _proportional(polys)
    if prop is not None:
        h, scalars = prop
        return PolySeq(polys, k, CONSTANT_PROPORTIONAL, diffs[0], {
            "common_factor": h.to_text(),
            "scalars": [str(c) for c in scalars],
        })
    if k == 2:
        ap = _ap_form(polys)
        if ap is not None:
            a, b, signs = ap
            return PolySeq(polys, k, AP_FORM, diffs[0], {
                "a": a.to_text(), "b": b.to_text(), "signs": signs,
            })
    return PolySeq(polys, k, UNRESOLVED, diffs[0])


def ap_family(a: UPoly, b: UPoly, signs: Sequence[int]) -> list[UPoly]:
    return [(a * j + b) * s for j, s in enumerate(signs, start=1)]


def proportional_family(h: UPoly, scalars: Sequence) -> list[UPoly]:
    return [h * Fraction(c) for c in scalars]
