"""Catalog of the integral curves of the plane differential and their pullbacks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .polycore import (
    MPoly,
    RadicalElem,
    RatFunc,
    UPoly,
    interpolation_weights,
    power_generators,
    rational_root,
    reduce_linear_in_powers,
    xvars,
)
from .surfaces import ProjPoint, SurfaceId, genus_of_type, threshold_n, type_applicable
from .symdiff import (
    PROJ_VARS,
    IntegralityCertificate,
    certify_projective,
    q_factors,
    q_polynomial,
)

KINDS = ("Calpha", "Cinfinity", "Axis", "TypeIV", "TypeV", "EpsilonCurve", "PullbackRn")
_KIND_ORDER = {kind: i for i, kind in enumerate(KINDS)}


@dataclass(frozen=True)
class CurveSpec:
    """A catalog curve.

    Calpha carries either a rational ``alpha``, the symbolic parameter
    (``symbolic=True``) or an irrational root given by ``minpoly``
    (coefficients low to high) and ``root_sign`` selecting
    (-b + sign*sqrt(disc)) / 2a.
    """

    kind: str
    k: int
    n: int = 3
    alpha: Fraction | None = None
    symbolic: bool = False
    minpoly: tuple[Fraction, ...] | None = None
    root_sign: int = 0
    index: int = 0
    signs: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown curve kind {self.kind!r}")
        if self.k < 2:
            raise ValueError("k must be >= 2")
        if self.kind == "TypeIV" and self.k % 2:
            raise ValueError("type (iv) curves need even k")
        if self.kind == "TypeV" and self.k % 2 == 0:
            raise ValueError("type (v) curve needs odd k")
        if self.kind == "EpsilonCurve" and self.k % 2:
            raise ValueError("epsilon curves need even k")
        if self.kind == "Calpha":
            if self.alpha is None and not self.symbolic and self.minpoly is None:
                raise ValueError("Calpha needs alpha, a minimal polynomial, or symbolic=True")
            if self.alpha is not None and self.alpha in (1, 2, 3):
                raise ValueError("alpha in {1,2,3} gives a coordinate axis; use Axis")
        if self.kind == "Axis" and self.index not in (1, 2, 3):
            raise ValueError("axis index must be 1, 2 or 3")
        if self.kind == "TypeIV" and (len(self.signs) != 2 or any(s not in (1, -1) for s in self.signs)):
            raise ValueError("type (iv) needs two signs")
        if self.kind == "EpsilonCurve" and (
            len(self.signs) != self.n - 1 or any(s not in (1, -1) for s in self.signs)
        ):
            raise ValueError("epsilon curve needs n-1 signs")
        if self.kind == "PullbackRn" and not 4 <= self.index <= self.n:
            raise ValueError("R_i needs 4 <= i <= n")

    # -- constructors -----------------------------------------------------
    @classmethod
    def calpha(cls, alpha, k: int) -> "CurveSpec":
        return cls("Calpha", k, alpha=Fraction(alpha))

    @classmethod
    def calpha_symbolic(cls, k: int) -> "CurveSpec":
        return cls("Calpha", k, symbolic=True)

    @classmethod
    def cinfinity(cls, k: int) -> "CurveSpec":
        return cls("Cinfinity", k)

    @classmethod
    def axis(cls, i: int, k: int) -> "CurveSpec":
        return cls("Axis", k, index=i)

    @classmethod
    def type_iv(cls, e2: int, e3: int, k: int) -> "CurveSpec":
        return cls("TypeIV", k, signs=(e2, e3))

    @classmethod
    def type_v(cls, k: int) -> "CurveSpec":
        return cls("TypeV", k)

    @classmethod
    def epsilon(cls, signs: Sequence[int], k: int) -> "CurveSpec":
        signs = tuple(signs)
        return cls("EpsilonCurve", k, n=len(signs) + 1, signs=signs)

    @classmethod
    def pullback(cls, i: int, k: int, n: int) -> "CurveSpec":
        return cls("PullbackRn", k, n=n, index=i)

    # -- presentation -----------------------------------------------------
    def sort_key(self):
        alpha = self.alpha if self.alpha is not None else Fraction(0)
        return (_KIND_ORDER[self.kind], self.k, self.n, int(self.symbolic), alpha,
                self.minpoly or (), self.root_sign, self.index, tuple(-s for s in self.signs))

    def label(self) -> str:
        sg = ",".join("+1" if s > 0 else "-1" for s in self.signs)
        if self.kind == "Calpha":
            if self.symbolic:
                return "C_alpha(alpha)"
            if self.alpha is not None:
                return f"C_alpha({self.alpha})"
            return f"C_alpha(root{'+' if self.root_sign > 0 else '-'} of {UPoly(self.minpoly, 'alpha').to_text()})"
        if self.kind == "Cinfinity":
            return "C_inf"
        if self.kind == "Axis":
            return f"axis(x{self.index})"
        if self.kind == "TypeIV":
            return f"typeIV({sg})"
        if self.kind == "TypeV":
            return "typeV"
        if self.kind == "EpsilonCurve":
            return f"eps({sg})"
        return f"R_{self.index}"

    def to_json(self) -> dict:
        data = {"kind": self.kind, "k": self.k, "n": self.n, "label": self.label()}
        if self.alpha is not None:
            data["alpha"] = f"{self.alpha.numerator}/{self.alpha.denominator}"
        if self.minpoly is not None:
            data["alpha_minpoly"] = UPoly(self.minpoly, "alpha").to_text()
            data["root_sign"] = self.root_sign
        if self.kind in ("Axis", "PullbackRn"):
            data["index"] = self.index
        if self.signs:
            data["signs"] = list(self.signs)
        return data

    def __str__(self) -> str:
        return self.label()


def _alpha_value(spec: CurveSpec):
    if spec.symbolic:
        return RatFunc.param("alpha")
    if spec.alpha is not None:
        return spec.alpha
    c0, c1, c2 = spec.minpoly
    disc = c1 * c1 - 4 * c2 * c0
    beta = RadicalElem.generator(((2, disc),), 0)
    return (beta * spec.root_sign - c1) / (2 * c2)


def _plane_gens() -> list[MPoly]:
    return MPoly.gens(PROJ_VARS)


def epsilon_equations(signs: Sequence[int], k: int, two: int = 2) -> list[MPoly]:
    """-(j-2) z1 + (j-1) e2 z2 - e_j z_j for j = 3..n with z = x^(k/2).

    ``two`` replaces the coefficient 2 of the first equation (used to
    exercise the perturbation branch of the membership check).
    """
    if k % 2:
        raise ValueError("epsilon curves need even k")
    signs = tuple(signs)
    n = len(signs) + 1
    names = xvars(n)
    h = k // 2
    z = [MPoly.var(v, names) ** h for v in names]
    e2 = signs[0]
    eqs = []
    for j in range(3, n + 1):
        c2 = two if j == 3 else j - 1
        eqs.append(-(j - 2) * z[0] + c2 * e2 * z[1] - signs[j - 2] * z[j - 1])
    return eqs


def curve_equations(spec: CurveSpec) -> list[MPoly]:
    k = spec.k
    if spec.kind == "Calpha":
        x1, x2, x3 = _plane_gens()
        c1, c2, c3 = interpolation_weights(_alpha_value(spec))
        return [x1 ** k * c1 + x2 ** k * c2 + x3 ** k * c3]
    if spec.kind == "Cinfinity":
        x1, x2, x3 = _plane_gens()
        return [x1 ** k - 2 * x2 ** k + x3 ** k]
    if spec.kind == "Axis":
        return [_plane_gens()[spec.index - 1]]
    if spec.kind == "TypeIV":
        return epsilon_equations(spec.signs, k)
    if spec.kind == "TypeV":
        return [q_polynomial(k)]
    if spec.kind == "EpsilonCurve":
        return epsilon_equations(spec.signs, k)
    names = xvars(spec.n)
    return [MPoly.var(f"x{spec.index}", names)] + power_generators(spec.n, k, "g")


def calpha_pullback_polynomial(i, k: int, n: int) -> MPoly:
    """c1 x1^k + c2 x2^k + c3 x3^k at alpha = i, over x1..xn."""
    names = xvars(n)
    c1, c2, c3 = interpolation_weights(i)
    x1, x2, x3 = (MPoly.var(v, names) for v in names[:3])
    return x1 ** k * c1 + x2 ** k * c2 + x3 ** k * c3


def verify_integrality(spec: CurveSpec, k: int | None = None) -> IntegralityCertificate:
    k = spec.k if k is None else k
    if spec.n != 3 or spec.kind in ("EpsilonCurve", "PullbackRn"):
        raise ValueError("integrality is checked for plane catalog curves")
    (G,) = curve_equations(spec)
    return certify_projective(G, k, label=spec.label())


def plane_catalog(k: int, alphas: Sequence = (Fraction(5),)) -> list[CurveSpec]:
    """Plane catalog curves for a given k (concrete alphas plus the symbolic family)."""
    specs = [CurveSpec.calpha_symbolic(k)]
    specs += [CurveSpec.calpha(a, k) for a in alphas]
    specs.append(CurveSpec.cinfinity(k))
    specs += [CurveSpec.axis(i, k) for i in (1, 2, 3)]
    if k % 2 == 0:
        specs += [CurveSpec.type_iv(e2, e3, k) for e2 in (1, -1) for e3 in (1, -1)]
    else:
        specs.append(CurveSpec.type_v(k))
    return specs


# ---------------------------------------------------------------------------
# curves through a point

def alpha_polynomial(point: Sequence, k: int) -> UPoly:
    """E(alpha) = c1(alpha) y1 + c2(alpha) y2 + c3(alpha) y3 with y = point^k."""
    y1, y2, y3 = (Fraction(c) ** k for c in point)
    a = UPoly.gen("alpha")
    c1 = (a - 3) * (a - 2) * Fraction(1, 2)
    c2 = -((a - 2) * (a - 2) - 1)
    c3 = (a - 2) * (a - 1) * Fraction(1, 2)
    return c1 * y1 + c2 * y2 + c3 * y3


def shift_polynomial(u: UPoly, shift) -> UPoly:
    """u(t + shift) as a polynomial in t."""
    t = UPoly.gen("t")
    return u(t + shift) if u.degree > 0 else UPoly(u.coeffs, "t")


def point_multiplicity(G: MPoly, point: Sequence) -> int:
    """Order of vanishing of a homogeneous plane equation at a point."""
    j = next(i for i in (2, 0, 1) if point[i] != 0)
    others = [i for i in range(3) if i != j]
    local = tuple(f"t{i + 1}" for i in others)
    mapping = {PROJ_VARS[j]: MPoly.const(point[j], local)}
    for i, name in zip(others, local):
        mapping[PROJ_VARS[i]] = MPoly.var(name, local) + point[i]
    g = G.substitute(mapping, local)
    if g.is_zero():
        raise ValueError("equation vanishes identically")
    return min(sum(e) for e in g.terms)


@dataclass
class ThroughPointReport:
    point: ProjPoint
    k: int
    on_delta: bool
    delta_components: list[str]
    alpha_quadratic: UPoly
    curves: list[tuple[CurveSpec, int]]

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.curves)

    def to_json(self) -> dict:
        return {
            "point": self.point.to_json(),
            "k": self.k,
            "on_delta": self.on_delta,
            "delta_components": self.delta_components,
            "alpha_polynomial": self.alpha_quadratic.to_text(),
            "t_polynomial": shift_polynomial(self.alpha_quadratic, 2).to_text(),
            "curves": [dict(spec.to_json(), multiplicity=m) for spec, m in self.curves],
            "total_multiplicity": self.total_multiplicity,
        }


def _delta_curves(p: Sequence[Fraction], k: int) -> list[CurveSpec]:
    out = [CurveSpec.axis(i + 1, k) for i in range(3) if p[i] == 0]
    if q_polynomial(k).evaluate(p) == 0:
        if k % 2 == 0:
            for e2, e3 in product((1, -1), repeat=2):
                spec = CurveSpec.type_iv(e2, e3, k)
                if curve_equations(spec)[0].evaluate(p) == 0:
                    out.append(spec)
        else:
            out.append(CurveSpec.type_v(k))
    return out


def _alpha_root_specs(E: UPoly, k: int) -> list[CurveSpec]:
    if E.degree <= 0:
        return []
    if E.degree == 1:
        roots = [-E.coeffs[0] / E.coeffs[1]]
    else:
        c0, c1, c2 = E.coeffs
        disc = c1 * c1 - 4 * c2 * c0
        r = rational_root(disc, 2)
        if r is None:
            mp = E.monic().coeffs
            return [CurveSpec("Calpha", k, minpoly=tuple(mp), root_sign=s) for s in (1, -1)]
        roots = sorted({(-c1 + r) / (2 * c2), (-c1 - r) / (2 * c2)}, reverse=True)
    specs = []
    for a in roots:
        if a in (1, 2, 3):
            specs.append(CurveSpec.axis(int(a), k))
        else:
            specs.append(CurveSpec.calpha(a, k))
    return specs


def curves_through_point(point, k: int) -> ThroughPointReport:
    p = point if isinstance(point, ProjPoint) else ProjPoint(point)
    if p.n != 3:
        raise ValueError("through-point analysis is for points of P^2")
    if not p.is_rational():
        raise ValueError("point must be rational")
    c = [Fraction(x) for x in p.coords]
    reasons = []
    if c[2] == 0:
        reasons.append("x3=0")
    if c[0] == 0 or c[1] == 0:
        reasons.append("A0=0")
    if q_polynomial(k).evaluate(c) == 0:
        reasons.append("Q=0")
    on_delta = bool(reasons)
    E = alpha_polynomial(c, k)
    specs: list[CurveSpec] = []
    if E.degree < 2:
        specs.append(CurveSpec.cinfinity(k))
    specs += _alpha_root_specs(E, k)
    if on_delta:
        specs += _delta_curves(c, k)
    seen, curves = set(), []
    for spec in sorted(specs, key=CurveSpec.sort_key):
        if spec in seen:
            continue
        seen.add(spec)
        (G,) = curve_equations(spec)
        curves.append((spec, point_multiplicity(G, c)))
    return ThroughPointReport(p, k, on_delta, reasons, E, curves)


# ---------------------------------------------------------------------------
# pullbacks

@dataclass
class PullbackLedger:
    base: CurveSpec
    n: int
    k: int
    components: list[tuple[CurveSpec, int]]
    degree_check: tuple[int, int]
    verified: bool
    checks: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def balanced(self) -> bool:
        return self.degree_check[0] == self.degree_check[1]

    def to_json(self) -> dict:
        return {
            "base": self.base.to_json(),
            "n": self.n,
            "k": self.k,
            "component_count": len(self.components),
            "components": [dict(s.to_json(), multiplicity=m) for s, m in self.components],
            "degree_check": list(self.degree_check),
            "verified": self.verified,
            "checks": {key: list(v) if isinstance(v, tuple) else v for key, v in self.checks.items()},
            "notes": self.notes,
        }


def pullback_ledger(base: CurveSpec, n: int, k: int | None = None) -> PullbackLedger:
    k = base.k if k is None else k
    if n < 4:
        raise ValueError("pullbacks need n >= 4")
    if base.n != 3:
        raise ValueError("base must be a plane catalog curve")
    deg_x = k ** (n - 3)  # degree of X_{n,k} and of the projection to P^2

    if base.kind == "Calpha" and base.alpha is not None and base.alpha.denominator == 1 \
            and 4 <= base.alpha <= n:
        i = int(base.alpha)
        names = xvars(n)
        xi_k = MPoly.var(f"x{i}", names) ** k
        rem = reduce_linear_in_powers(calpha_pullback_polynomial(i, k, n) - xi_k, n, k, "f")
        return PullbackLedger(
            base, n, k, [(CurveSpec.pullback(i, k, n), k)],
            (k * deg_x, k * deg_x), rem.is_zero(),
            checks={"pullback_minus_xi_k_remainder": rem.to_text(),
                    "pullback_equals": xi_k.to_text()},
        )

    if base.kind == "TypeIV":
        h = k // 2
        e2, e3 = base.signs
        comps = [
            (CurveSpec.epsilon((e2, e3) + tail, k), 1)
            for tail in product((1, -1), repeat=n - 3)
        ]
        members = all(epsilon_membership(s.signs, n, k) for s, _ in comps)
        # each component restricts to the base equation in x1, x2, x3
        (base_eq,) = curve_equations(base)
        projects = all(curve_equations(s)[0] == base_eq.with_variables(xvars(n)) for s, _ in comps)
        checks = {
            "map_degree": (h ** (n - 3) * 2 ** (n - 3), k ** (n - 3)),
            "divisor_degree": (h ** (n - 2) * 2 ** (n - 3), h * deg_x),
            "components_distinct": len({s for s, _ in comps}) == len(comps),
        }
        notes = [
            "degree_check keeps the stated pair ((k/2)^(n-2)*2^(n-2), k^(n-2)); "
            "the computed count is 2^(n-3) components, each mapping with degree (k/2)^(n-3)",
        ]
        return PullbackLedger(
            base, n, k, comps, (h ** (n - 2) * 2 ** (n - 2), k ** (n - 2)),
            members and projects, checks, notes,
        )

    if base.kind == "TypeV":
        # Q_h(x^2) splits into the four degree-k forms of the 2k family
        names = PROJ_VARS
        squared = q_polynomial(k).substitute({v: MPoly.var(v, names) ** 2 for v in names})
        prod_factors = MPoly.const(1, names)
        for f in q_factors(2 * k):
            prod_factors = prod_factors * f
        split_ok = squared == prod_factors
        group = 2 ** (n - 1)
        checks = {
            "Q_of_squares_factors": split_ok,
            "group_order": group,
            "map_degree_first_statement": 2 ** (n - 1),
            "map_degree_final_statement": 2 ** (n - 2),
            "curve_count_in_statement": 2 ** n,
            "upstairs_curves": group,
            "divisor_degree": (group * k ** (n - 2), 2 ** (n - 2) * 2 * k * deg_x),
        }
        notes = [
            "map degree is stated as 2^(n-1) and later as 2^(n-2); the upstairs count "
            "|G_n| = 2^(n-1) matches the first value, giving degree one on each component",
        ]
        return PullbackLedger(
            base, n, k, [(base, 1)], (2 ** (n - 1), group), split_ok, checks, notes,
        )

    if base.kind in ("Calpha", "Cinfinity", "Axis"):
        (G,) = curve_equations(base)
        deg = G.total_degree()
        kind = {"Calpha": "a", "Cinfinity": "b", "Axis": "c"}[base.kind]
        return PullbackLedger(
            base, n, k, [(base, 1)], (deg * deg_x, deg * deg_x), True,
            checks={"genus_type": kind},
        )
    raise ValueError(f"{base.label()} is not a plane catalog curve")


def epsilon_membership(signs: Sequence[int], n: int, k: int, two: int = 2) -> bool:
    """Do the epsilon-curve equations imply every generator of X_{n,k}?"""
    if k % 2:
        raise ValueError("epsilon curves need even k")
    signs = tuple(signs)
    if len(signs) != n - 1:
        raise ValueError("need n-1 signs")
    eqs = epsilon_equations(signs, k, two=two)
    return all(
        reduce_linear_in_powers(f, n, k, basis=eqs, power=k // 2).is_zero()
        for f in power_generators(n, k, "g")
    )


# ---------------------------------------------------------------------------

@dataclass
class LowGenusReport:
    surface: SurfaceId
    g: int
    curves: list[tuple[CurveSpec, Fraction]]
    below_threshold: bool
    type_genera: dict[str, Fraction]

    def to_json(self) -> dict:
        return {
            "n": self.surface.n,
            "k": self.surface.k,
            "g": self.g,
            "below_threshold": self.below_threshold,
            "type_genera": {t: str(v) for t, v in sorted(self.type_genera.items())},
            "count": len(self.curves),
            "curves": [spec.label() for spec, _ in self.curves],
        }


def low_genus_report(s: SurfaceId, g: int) -> LowGenusReport:
    """Catalog curves on X_{n,k} of genus at most g.

    Families other than (d) are listed by a representative spec.
    """
    n, k = s.n, s.k
    genera = {t: genus_of_type(t, s) for t in ("a", "a'", "b", "c", "d", "e") if type_applicable(t, k)}
    curves: list[tuple[CurveSpec, Fraction]] = []
    for t, gen in sorted(genera.items()):
        if gen > g:
            continue
        if t == "d":
            for signs in product((1, -1), repeat=n - 1):
                curves.append((CurveSpec.epsilon(signs, k), gen))
        elif t in ("a", "b"):
            rep = CurveSpec.calpha_symbolic(k) if t == "a" else CurveSpec.cinfinity(k)
            curves.append((rep, gen))
        elif t == "a'":
            curves += [(CurveSpec.pullback(i, k, n), gen) for i in range(4, n + 1)]
        elif t == "c":
            curves += [(CurveSpec.axis(i, k), gen) for i in (1, 2, 3)]
        else:
            curves.append((CurveSpec.type_v(k), gen))
    return LowGenusReport(s, g, curves, n < threshold_n(k, g), genera)


@dataclass
class TwistLedger:
    n: int
    k: int
    g: int
    start: int
    subtracted: int
    final: int
    degree_bound: Fraction
    negative: bool

    def to_json(self) -> dict:
        return {
            "n": self.n, "k": self.k, "g": self.g,
            "start": self.start, "subtracted": self.subtracted, "final": self.final,
            "degree_bound": str(self.degree_bound), "negative": self.negative,
        }


def twist_ledger(s: SurfaceId, g: int) -> TwistLedger:
    """Twist bookkeeping; ``negative`` needs both the twist and the bound below zero.

    The twist must be negative for the bound (twist * deg C + 4g - 4) to be
    dominated by its value at deg C = 1.
    """
    n, k = s.n, s.k
    if n < 4:
        raise ValueError("twist ledger needs n >= 4")
    start = 2 * k + 3
    subtracted = (k - 1) * (n - 3)
    final = start - subtracted
    if final != n * (1 - k) + 5 * k:
        raise AssertionError("twist arithmetic mismatch")
    bound = Fraction(final + 4 * g - 4)
    return TwistLedger(n, k, g, start, subtracted, final, bound, final < 0 and bound < 0)

