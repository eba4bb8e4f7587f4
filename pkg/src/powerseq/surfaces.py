"""The surfaces X_{n,k}: generators, points, lifting, smoothness and genus formulas."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd, prod
from typing import Sequence

from .polycore import (
    MPoly,
    RadicalElem,
    as_fraction,
    interpolation_weights,
    power_generators,
    rational_roots,
    scalar_text,
)
from .polycore import linalg


@dataclass(frozen=True)
class SurfaceId:
    n: int
    k: int

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("X_{n,k} needs n >= 3")
        if self.k < 2:
            raise ValueError("X_{n,k} needs k >= 2")

    @property
    def is_plane(self) -> bool:
        return self.n == 3

    def __str__(self) -> str:
        return f"X_{{{self.n},{self.k}}}"


def _is_rat(c) -> bool:
    return isinstance(c, (int, Fraction)) and not isinstance(c, bool)


def _rational_value(c) -> Fraction | None:
    if _is_rat(c):
        return Fraction(c)
    if isinstance(c, RadicalElem):
        return c.as_rational()
    return None


def _is_zero(c) -> bool:
    return c.is_zero() if isinstance(c, RadicalElem) else c == 0


class ProjPoint:
    """A point of projective space; rational points are kept primitive integral.

    Normalization: when all coordinates are rational they are scaled to
    coprime integers with the first nonzero coordinate positive.  Points
    with radical coordinates keep their coordinates as given.
    """

    __slots__ = ("coords",)

    def __init__(self, coords: Sequence):
        cs = []
        for c in coords:
            if isinstance(c, RadicalElem):
                q = c.as_rational()
                cs.append(q if q is not None else c)
            elif isinstance(c, str):
                cs.append(as_fraction(c))
            else:
                cs.append(Fraction(c))
        if not cs:
            raise ValueError("empty point")
        if all(_is_zero(c) for c in cs):
            raise ValueError("all coordinates vanish")
        if all(_is_rat(c) for c in cs):
            cs = _primitive(cs)
        self.coords = tuple(cs)

    @property
    def n(self) -> int:
        return len(self.coords)

    def is_rational(self) -> bool:
        return all(_is_rat(c) for c in self.coords)

    def normalized(self) -> "ProjPoint":
        return ProjPoint(self.coords)

    def as_ints(self) -> list[int]:
        if not self.is_rational():
            raise ValueError("point has irrational coordinates")
        return [int(c) for c in self.coords]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjPoint):
            return NotImplemented
        if self.n != other.n:
            return False
        # cross-ratio test handles radical coordinates as well
        i = next(j for j, c in enumerate(self.coords) if not _is_zero(c))
        a, b = self.coords[i], other.coords[i]
        return all(x * b == y * a for x, y in zip(self.coords, other.coords))

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coords)
        return hash(self.n)

    def to_text(self) -> str:
        if self.is_rational():
            return ":".join(str(int(c)) for c in self.coords)
        return ":".join(scalar_text(c) for c in self.coords)

    def __repr__(self) -> str:
        return f"[{self.to_text()}]"

    def to_json(self):
        if self.is_rational():
            return [int(c) for c in self.coords]
        return [scalar_text(c) for c in self.coords]


def _primitive(cs: list[Fraction]) -> list[Fraction]:
    den = 1
    for c in cs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in cs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    ints = [v // g for v in ints]
    first = next(v for v in ints if v)
    if first < 0:
        ints = [-v for v in ints]
    return [Fraction(v) for v in ints]


def _as_point(p) -> ProjPoint:
    return p if isinstance(p, ProjPoint) else ProjPoint(p)


# ---------------------------------------------------------------------------

def generators(n: int, k: int, family: str = "f") -> list[MPoly]:
    return power_generators(n, k, family)


def _y_rows(n: int, family: str) -> list[list[Fraction]]:
    """Coefficient rows of the generators as linear forms in y_1..y_n."""
    rows = []
    for i in range(1, n - 2):
        row = [Fraction(0)] * n
        if family == "f":
            for j, c in enumerate((1, -3, 3, -1)):
                row[i - 1 + j] = Fraction(c)
        else:
            c1, c2, c3 = interpolation_weights(i + 3)
            row[0], row[1], row[2] = c1, c2, c3
            row[i + 2] -= 1
        rows.append(row)
    return rows


def ideal_equality_matrices(n: int) -> tuple[list[list[int]], list[list[int]]]:
    """Integer matrices T, B with g = T f and f = B g (rows in y-coordinates).

    Both identities are checked exactly before returning.
    """
    if n < 4:
        raise ValueError("need n >= 4")
    F, G = _y_rows(n, "f"), _y_rows(n, "g")
    # the y_4..y_n block of either family is invertible
    Fb = [row[3:] for row in F]
    Gb = [row[3:] for row in G]
    T = linalg.matmul(Gb, linalg.inverse(Fb))
    B = linalg.matmul(Fb, linalg.inverse(Gb))
    if linalg.matmul(T, F) != G or linalg.matmul(B, G) != F:
        raise AssertionError("generator families do not span the same space")
    for M in (T, B):
        if any(x.denominator != 1 for row in M for x in row):
            raise AssertionError("transformation is not integral")
    return [[int(x) for x in row] for row in T], [[int(x) for x in row] for row in B]


def verify_ideal_equality(n: int) -> bool:
    T, B = ideal_equality_matrices(n)
    F, G = _y_rows(n, "f"), _y_rows(n, "g")
    eye = [[Fraction(int(i == j)) for j in range(n - 3)] for i in range(n - 3)]
    return (
        linalg.matmul(T, F) == G
        and linalg.matmul(B, G) == F
        and linalg.matmul(T, B) == eye
        and linalg.matmul(B, T) == eye
    )


def _f_values(coords: Sequence, k: int) -> list:
    ys = [c ** k for c in coords]
    return [ys[i] - 3 * ys[i + 1] + 3 * ys[i + 2] - ys[i + 3] for i in range(len(ys) - 3)]


def membership(p, s: SurfaceId) -> bool:
    p = _as_point(p)
    if p.n != s.n:
        raise ValueError(f"point has {p.n} coordinates, surface lives in P^{s.n - 1}")
    return all(_is_zero(v) for v in _f_values(p.coords, s.k))


def _require_member(p: ProjPoint, s: SurfaceId) -> None:
    if not membership(p, s):
        raise ValueError(f"{p!r} is not a point of {s}")


def no_three_zeros(p, s: SurfaceId) -> bool:
    p = _as_point(p)
    _require_member(p, s)
    return sum(1 for c in p.coords if _is_zero(c)) < 3


def lift_rhs(coords: Sequence, k: int, m: int):
    """The value c1*x1^k + c2*x2^k + c3*x3^k that x_m^k must equal."""
    c1, c2, c3 = interpolation_weights(m)
    return c1 * coords[0] ** k + c2 * coords[1] ** k + c3 * coords[2] ** k


def lift_point(p, k: int, radical: bool = False) -> list[ProjPoint]:
    """All lifts of a point of X_{n-1,k} to X_{n,k}.

    Over Q the new coordinate is a rational k-th root (possibly none).
    In radical mode an irrational root is adjoined as a new tower
    generator beta with beta^k = RHS; both signs are returned for even k.
    """
    p = _as_point(p)
    s = SurfaceId(max(p.n, 3), k)
    if p.n < 3:
        raise ValueError("need a point with at least 3 coordinates")
    _require_member(p, s)
    m = p.n + 1
    rhs = lift_rhs(p.coords, k, m)
    q = _rational_value(rhs)
    if q is None:
        raise ValueError("lifting needs rational first three coordinates")
    roots = rational_roots(q, k)
    if roots or not radical:
        return [ProjPoint(list(p.coords) + [r]) for r in roots]
    tower = ()
    for c in p.coords:
        if isinstance(c, RadicalElem) and len(c.tower) > len(tower):
            tower = c.tower
    tower = tower + ((k, q),)
    beta = RadicalElem.generator(tower, len(tower) - 1)
    betas = [beta, -beta] if k % 2 == 0 else [beta]
    return [ProjPoint(list(p.coords) + [b]) for b in betas]


def project(p, s: SurfaceId) -> ProjPoint:
    p = _as_point(p)
    if s.n < 4:
        raise ValueError("projection needs n >= 4")
    _require_member(p, s)
    return ProjPoint(p.coords[:-1])


def project_to_plane(p, s: SurfaceId) -> ProjPoint:
    """The composite of all projections down to P^2."""
    p = _as_point(p)
    _require_member(p, s)
    return ProjPoint(p.coords[:3])


# ---------------------------------------------------------------------------

@dataclass
class JacobianReport:
    point: ProjPoint
    rank: int
    expected: int
    minor_witness: tuple[list[int], list[int]]
    witness_det: object = None

    @property
    def smooth(self) -> bool:
        return self.rank == self.expected

    def to_json(self) -> dict:
        return {
            "point": self.point.to_json(),
            "rank": self.rank,
            "expected": self.expected,
            "minor_rows": self.minor_witness[0],
            "minor_cols": self.minor_witness[1],
            "witness_det": None if self.witness_det is None else scalar_text(self.witness_det),
        }


def _unit_factor(c):
    """(scale, rational) with c == scale * rational for a monomial radical element."""
    if _is_rat(c):
        return Fraction(1), Fraction(c)
    if isinstance(c, RadicalElem) and c.is_unit_monomial():
        (exps, coeff), = c.terms.items()
        return RadicalElem(c.tower, {exps: 1}), coeff
    raise ValueError("Jacobian rank needs monomial radical coordinates")


def jacobian_matrix(p, s: SurfaceId) -> list[list]:
    """Exact (n-3) x n matrix of partials of the g generators at p."""
    p = _as_point(p)
    rows = _y_rows(s.n, "g")
    k = s.k
    return [[c * k * x ** (k - 1) for c, x in zip(row, p.coords)] for row in rows]


def jacobian_rank(p, s: SurfaceId) -> JacobianReport:
    p = _as_point(p)
    _require_member(p, s)
    k = s.k
    rows = _y_rows(s.n, "g")
    # column j is k*x_j^(k-1) times a rational column; split off unit scales
    scales, keep = [], []
    for j, x in enumerate(p.coords):
        if _is_zero(x):
            scales.append(None)
            continue
        unit, r = _unit_factor(x)
        scales.append((unit ** (k - 1), k * r ** (k - 1)))
        keep.append(j)
    rat = [[row[j] * scales[j][1] for j in keep] for row in rows]
    r_idx, c_idx = linalg.pivot_rows_and_columns(rat)
    rank = len(c_idx)
    cols = [keep[c] for c in c_idx]
    witness_det = None
    if rank:
        minor = [[rat[i][c] for c in c_idx] for i in r_idx]
        witness_det = linalg.det(minor)
        for j in cols:
            witness_det = scales[j][0] * witness_det
        if isinstance(witness_det, RadicalElem):
            q = witness_det.as_rational()
            witness_det = q if q is not None else witness_det
    return JacobianReport(p, rank, s.n - 3, (r_idx, cols), witness_det)


# ---------------------------------------------------------------------------

def canonical_degree(s: SurfaceId) -> int:
    return s.k * (s.n - 3) - s.n


def general_type(s: SurfaceId) -> bool:
    return s.n > Fraction(3 * s.k, s.k - 1)


def genus_ci(degrees: Sequence[int], ambient: int) -> Fraction:
    if not degrees:
        raise ValueError("empty degree list")
    return Fraction(prod(degrees) * (sum(degrees) - ambient), 2) + 1


GENUS_TYPES = ("a", "a'", "b", "c", "d", "e")


def type_applicable(kind: str, k: int) -> bool:
    if kind == "d":
        return k % 2 == 0
    if kind == "e":
        return k % 2 == 1
    return kind in GENUS_TYPES


def genus_of_type(kind: str, s: SurfaceId) -> Fraction:
    n, k = s.n, s.k
    if kind not in GENUS_TYPES:
        raise ValueError(f"unknown curve type {kind!r}")
    if n < 4:
        raise ValueError("genus table needs n >= 4")
    if not type_applicable(kind, k):
        raise ValueError(f"type ({kind}) does not occur for k = {k}")
    if kind in ("a", "b", "e"):
        return Fraction(k ** (n - 2) * (n * (k - 1) - 2 * k), 2) + 1
    if kind in ("a'", "c"):
        return Fraction(k ** (n - 3) * (n * (k - 1) - 3 * k + 1), 2) + 1
    h = k // 2
    return Fraction(h ** (n - 2) * (n * h - k - n), 2) + 1


def threshold_bound(k: int, g: int) -> Fraction:
    if k < 2:
        raise ValueError("k must be >= 2")
    if g < 0:
        raise ValueError("g must be >= 0")
    return Fraction(4 * max(g, 1) + 1, k - 1) + 5


def threshold_n(k: int, g: int) -> int:
    """Smallest n with n > (4 max(g,1) + 1)/(k-1) + 5.

    For k = 2 this is the smallest n > max(10, 4g+6).
    """
    return floor(threshold_bound(k, g)) + 1


def threshold_n_main2(k: int) -> int:
    """The genus 0/1 threshold: n >= 11 for k = 2, n > 5/(k-1) + 5 otherwise."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if k == 2:
        return 11
    return floor(Fraction(5, k - 1) + 5) + 1


def genus_table(k: int, n_values: Sequence[int]) -> list[tuple[int, int, str, Fraction]]:
    rows = []
    for n in n_values:
        for kind in GENUS_TYPES:
            if type_applicable(kind, k):
                rows.append((k, n, kind, genus_of_type(kind, SurfaceId(n, k))))
    return rows


# ---------------------------------------------------------------------------

def ap_square_point(a: int, b: int, n: int) -> ProjPoint:
    """[a+b : 2a+b : ... : na+b], whose squares have constant second differences."""
    return ProjPoint([a * i + b for i in range(1, n + 1)])


def lift_chain(base: Sequence, n: int, k: int, rng: random.Random | None = None,
               radical: bool = True) -> ProjPoint | None:
    """Lift a P^2 point to X_{n,k}, choosing a random branch at each step."""
    p = ProjPoint(base)
    while p.n < n:
        lifts = lift_point(p, k, radical=radical)
        if not lifts:
            return None
        p = rng.choice(lifts) if rng else lifts[0]
    return p


def sample_points(s: SurfaceId, count: int, seed: int = 0, height: int = 6) -> list[ProjPoint]:
    """Deterministic sample of points on X_{n,k} (radical lifts allowed)."""
    rng = random.Random(seed)
    out: list[ProjPoint] = []
    if s.k == 2:
        for _ in range(count // 4):
            a, b = rng.randint(-height, height), rng.randint(-height, height)
            if any(a * i + b for i in range(1, s.n + 1)):
                out.append(ap_square_point(a, b, s.n))
    while len(out) < count:
        base = [rng.randint(-height, height) for _ in range(3)]
        if not any(base):
            continue
        p = lift_chain(base, s.n, s.k, rng)
        if p is not None:
            out.append(p)
    return out
