"""Reduction of polynomials in k-th powers modulo linear forms in those powers."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .linalg import rref
from .mpoly import MPoly, xvars


def power_generators(n: int, k: int, family: str) -> list[MPoly]:
    """f_i = y_i - 3y_{i+1} + 3y_{i+2} - y_{i+3} or the g_i family, y_j = x_j^k."""
    if n < 4:
        raise ValueError("generators need n >= 4")
    if k < 1:
        raise ValueError("k must be positive")
    names = xvars(n)
    ys = [MPoly.var(v, names) ** k for v in names]
    out = []
    for i in range(1, n - 2):
        if family == "f":
            p = ys[i - 1] - 3 * ys[i] + 3 * ys[i + 1] - ys[i + 2]
        elif family == "g":
            m = i + 3
            c1, c2, c3 = interpolation_weights(m)
            p = c1 * ys[0] + c2 * ys[1] + c3 * ys[2] - ys[m - 1]
        else:
            raise ValueError(f"unknown generator family {family!r}")
        out.append(p)
    return out


def interpolation_weights(m) -> tuple[Fraction, Fraction, Fraction]:
    """Weights with y_m = c1*y1 + c2*y2 + c3*y3 on any quadratic sequence.

    Lagrange weights of the nodes 1, 2, 3 evaluated at m; ``m`` may be any
    rational (or a RatFunc for the symbolic curve parameter).
    """
    c1 = (m - 3) * (m - 2) * Fraction(1, 2)
    c2 = -((m - 2) * (m - 2) - 1)
    c3 = (m - 2) * (m - 1) * Fraction(1, 2)
    return c1, c2, c3


def _linear_row(form: MPoly, power: int) -> list:
    n = len(form.variables)
    row = [Fraction(0)] * n
    for exps, c in form.terms.items():
        nz = [i for i, e in enumerate(exps) if e]
        if len(nz) != 1 or exps[nz[0]] != power:
            raise ValueError(f"{form.to_text()} is not linear in the {power}-th powers")
        row[nz[0]] = c
    return row


def reduce_linear_in_powers(
    p: MPoly,
    n: int,
    k: int,
    basis: str | Sequence[MPoly] = "f",
    power: int | None = None,
) -> MPoly:
    """Canonical remainder of ``p`` modulo linear forms in y_i = x_i^power.

    ``basis`` is ``'f'``, ``'g'`` (the surface generators of X_{n,k}) or an
    explicit list of forms linear in the y_i.  The forms are row reduced
    with pivots on the highest-index y available; pivot y's are then
    eliminated from ``p`` by substitution.  The result is 0 exactly when
    ``p`` lies in the ideal the forms generate.
    """
    power = k if power is None else power
    if isinstance(basis, str):
        forms = power_generators(n, k, basis)
    else:
        forms = list(basis)
    names = p.variables
    if forms and any(f.variables != names for f in forms):
        forms = [f.with_variables(names) for f in forms]
    for exps in p.terms:
        if any(e % power for e in exps):
            raise ValueError(f"monomial {exps} is not a product of {power}-th powers")
    m = len(names)
    rows, pivots = rref([_linear_row(f, power) for f in forms], range(m - 1, -1, -1)) if forms else ([], [])
    # y-level polynomial
    yp = MPoly(names, {tuple(e // power for e in exps): c for exps, c in p.terms.items()})
    mapping = {}
    for row, col in zip(rows, pivots):
        img = MPoly(names)
        for j, c in enumerate(row):
            if j != col and c != 0:
                img = img - MPoly.var(names[j], names).scale(c)
        mapping[names[col]] = img
    reduced = yp.substitute(mapping) if mapping else yp
    return MPoly(names, {tuple(e * power for e in exps): c for exps, c in reduced.terms.items()})
