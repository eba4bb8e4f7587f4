"""The rank-2 symmetric differential on P^2 and the plane-curve integrality test."""

from __future__ import annotations

from dataclasses import dataclass, field

from .polycore import MPoly, RadicalElem, RatFunc, divide_exact

PROJ_VARS = ("x1", "x2", "x3")


@dataclass(frozen=True)
class Chart:
    id: str
    coords: tuple[str, str]
    # index of the homogeneous coordinate set to 1 on this chart
    unit: int

    def __str__(self) -> str:
        return self.id


CHARTS = {
    "U3": Chart("U3", ("x1", "x2"), 2),
    "U1": Chart("U1", ("x2", "x3"), 0),
    "U2": Chart("U2", ("x1", "x3"), 1),
}
CHART_ORDER = ("U3", "U1", "U2")


def get_chart(chart) -> Chart:
    if isinstance(chart, Chart):
        return chart
    try:
        return CHARTS[str(chart)]
    except KeyError:
        raise ValueError(f"unknown chart {chart!r}") from None


class NotIntegral(Exception):
    """The curve is not integral for the differential (non-zero remainder)."""

    def __init__(self, message: str, criterion: MPoly | None = None):
        super().__init__(message)
        self.criterion = criterion


@dataclass(frozen=True)
class SymDiff:
    """A0 du^2 + A1 du dv + A2 dv^2 on a chart with coordinates (u, v).

    ``twist`` is the exponent t such that the global form equals
    x^(-t) times the stored expression (x the chart's denominator
    coordinate); 0 on U3.
    """

    chart: Chart
    k: int
    A0: MPoly
    A1: MPoly
    A2: MPoly
    twist: int = 0

    @property
    def coefficients(self) -> tuple[MPoly, MPoly, MPoly]:
        return self.A0, self.A1, self.A2

    def to_json(self) -> dict:
        return {
            "chart": self.chart.id,
            "k": self.k,
            "twist": self.twist,
            "A0": self.A0.to_text(),
            "A1": self.A1.to_text(),
            "A2": self.A2.to_text(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "SymDiff":
        chart = get_chart(data["chart"])
        polys = [MPoly.parse(data[key], chart.coords) for key in ("A0", "A1", "A2")]
        return cls(chart, int(data["k"]), *polys, twist=int(data.get("twist", 0)))


def build_omega(k: int, chart="U3") -> SymDiff:
    if k < 2:
        raise ValueError("the differential needs k >= 2")
    chart = get_chart(chart)
    u, v = (MPoly.var(c, chart.coords) for c in chart.coords)
    if chart.id == "U3":
        x1, x2 = u, v
        A0 = x1 ** (2 * k - 2) * x2 ** 2
        A1 = x1 ** (k - 1) * x2 - 4 * x1 ** (k - 1) * x2 ** (k + 1) - x1 ** (2 * k - 1) * x2
        A2 = 4 * x1 ** k * x2 ** k
        return SymDiff(chart, k, A0, A1, A2, 0)
    if chart.id == "U1":
        x2, x3 = u, v
        A0 = 4 * x2 ** k * x3
        A1 = -x2 * x3 ** k + x2 - 4 * x2 ** (k + 1)
        A2 = x2 ** 2 * x3 ** (k - 1)
        return SymDiff(chart, k, A0, A1, A2, 2 * k + 3)
    x1, x3 = u, v
    A0 = x1 ** (2 * k - 2) * x3
    A1 = -x1 ** (2 * k - 1) - x1 ** (k - 1) * x3 ** k + 4 * x1 ** (k - 1)
    A2 = x1 ** k * x3 ** (k - 1)
    return SymDiff(chart, k, A0, A1, A2, 2 * k + 3)


def _u3_images(target: Chart) -> tuple[MPoly, MPoly, MPoly]:
    """Numerators (N1, N2) and common denominator w with U3 coords = N/w."""
    a, b = (MPoly.var(c, target.coords) for c in target.coords)
    one = MPoly.const(1, target.coords)
    if target.id == "U1":
        # coords (x2, x3) = (X2/X1, X3/X1): X1/X3 = 1/x3, X2/X3 = x2/x3
        return one, a, b
    if target.id == "U2":
        # coords (x1, x3) = (X1/X2, X3/X2): X1/X3 = x1/x3, X2/X3 = 1/x3
        return a, one, b
    raise ValueError("transition target must be U1 or U2")


def _clear_denominator(p: MPoly, n1: MPoly, n2: MPoly, w: MPoly, degree: int) -> MPoly:
    """w^degree * p(n1/w, n2/w) as a polynomial."""
    out = MPoly(w.variables)
    for (e1, e2), c in p.terms.items():
        out = out + (n1 ** e1) * (n2 ** e2) * (w ** (degree - e1 - e2)) * c
    return out


def transition_check(source: SymDiff, target: SymDiff) -> bool:
    """Does the U3 form ``source`` equal x^(-twist) * ``target`` on the overlap?"""
    if source.chart.id != "U3":
        raise ValueError("source form must live on U3")
    n1, n2, w = _u3_images(target.chart)
    a, b = target.chart.coords
    # d(N/w) = (w dN - N dw) / w^2; P, Q are the da, db parts of the numerator
    diffs = []
    for num in (n1, n2):
        diffs.append((w * num.diff(a) - num * w.diff(a), w * num.diff(b) - num * w.diff(b)))
    (p1, q1), (p2, q2) = diffs
    degree = max(c.total_degree() for c in source.coefficients)
    A0, A1, A2 = (_clear_denominator(c, n1, n2, w, degree) for c in source.coefficients)
    # dx1^2, dx1 dx2, dx2^2 expanded in da^2, da db, db^2
    t0 = A0 * p1 * p1 + A1 * p1 * p2 + A2 * p2 * p2
    t1 = A0 * 2 * p1 * q1 + A1 * (p1 * q2 + q1 * p2) + A2 * 2 * p2 * q2
    t2 = A0 * q1 * q1 + A1 * q1 * q2 + A2 * q2 * q2
    # pulled back form = T_j / w^(degree+4); target = B_j / w^twist
    lhs_pow, rhs_pow = target.twist, degree + 4
    return all(
        t * w ** lhs_pow == bj * w ** rhs_pow
        for t, bj in zip((t0, t1, t2), target.coefficients)
    )


def transition_verify(k: int) -> bool:
    """The U3 expression glues with the U1 and U2 expressions."""
    if k < 2:
        raise ValueError("the differential needs k >= 2")
    src = build_omega(k, "U3")
    return all(transition_check(src, build_omega(k, c)) for c in ("U1", "U2"))


# ---------------------------------------------------------------------------

@dataclass
class IntegralityCertificate:
    curve: MPoly
    chart: Chart
    criterion: MPoly
    quotient: MPoly
    k: int
    label: str = ""
    extra: dict = field(default_factory=dict)

    def verify(self) -> bool:
        return self.quotient * self.curve == self.criterion

    def to_json(self) -> dict:
        data = {
            "k": self.k,
            "chart": self.chart.id,
            "curve": self.curve.to_text(),
            "criterion": self.criterion.to_text(),
            "quotient": self.quotient.to_text(),
            "verified": self.verify(),
        }
        if self.label:
            data["label"] = self.label
        return data


def criterion_polynomial(g: MPoly, omega: SymDiff) -> MPoly:
    u, v = omega.chart.coords
    gu, gv = g.diff(u), g.diff(v)
    return omega.A0 * gv * gv - omega.A1 * gu * gv + omega.A2 * gu * gu


def _to_sympy(p: MPoly):
    import sympy

    syms = sympy.symbols(p.variables)
    alpha = None
    expr = sympy.Integer(0)
    for exps, c in p.terms.items():
        if isinstance(c, RatFunc):
            alpha = alpha or sympy.Symbol(c.var)
            num = sum(sympy.Rational(x.numerator, x.denominator) * alpha ** i for i, x in enumerate(c.num.coeffs))
            den = sum(sympy.Rational(x.numerator, x.denominator) * alpha ** i for i, x in enumerate(c.den.coeffs))
            coeff = num / den
        elif isinstance(c, RadicalElem):
            return None
        else:
            coeff = sympy.Rational(c.numerator, c.denominator)
        mono = sympy.Integer(1)
        for s, e in zip(syms, exps):
            mono *= s ** e
        expr += coeff * mono
    return expr, syms, alpha


def is_squarefree(g: MPoly) -> bool:
    """Squarefree test via sympy; radical-coefficient inputs are accepted as given."""
    import sympy

    conv = _to_sympy(g)
    if conv is None:
        return True
    expr, syms, alpha = conv
    domain = sympy.QQ.frac_field(alpha) if alpha is not None else sympy.QQ
    poly = sympy.Poly(sympy.together(expr), *syms, domain=domain)
    _, factors = poly.sqf_list()
    return all(mult == 1 for _, mult in factors)


def integrality_criterion(g: MPoly, omega: SymDiff, check_squarefree: bool = True) -> IntegralityCertificate:
    if g.variables != omega.chart.coords:
        g = g.with_variables(omega.chart.coords)
    if g.is_constant():
        raise ValueError("curve equation is constant")
    if check_squarefree and not is_squarefree(g):
        raise ValueError("curve equation is not squarefree; pass the reduced equation")
    crit = criterion_polynomial(g, omega)
    h = divide_exact(crit, g)
    if h is None:
        raise NotIntegral(f"{g.to_text()} does not divide the criterion on {omega.chart.id}", crit)
    return IntegralityCertificate(g, omega.chart, crit, h, omega.k)


def discriminant(omega: SymDiff) -> tuple[MPoly, MPoly]:
    return omega.A0, omega.A1 * omega.A1 - 4 * omega.A0 * omega.A2


# ---------------------------------------------------------------------------

def q_polynomial(k: int, variables=PROJ_VARS) -> MPoly:
    """Q_h = y1^2 - 8y1y2 - 2y1y3 + 16y2^2 - 8y2y3 + y3^2 with y_i = x_i^k."""
    names = tuple(variables)
    y1, y2, y3 = (MPoly.var(v, names) ** k for v in names[:3])
    return y1 * y1 - 8 * y1 * y2 - 2 * y1 * y3 + 16 * y2 * y2 - 8 * y2 * y3 + y3 * y3


def q_factors(k: int, variables=PROJ_VARS) -> list[MPoly]:
    """The four factors x1^{k/2} + s*2x2^{k/2} + t*x3^{k/2} of Q_h (k even)."""
    if k % 2:
        raise ValueError("Q_h splits into four factors only for even k")
    names = tuple(variables)
    z1, z2, z3 = (MPoly.var(v, names) ** (k // 2) for v in names[:3])
    return [z1 + 2 * s * z2 + t * z3 for s in (1, -1) for t in (1, -1)]


def dehomogenize(G: MPoly, chart) -> MPoly:
    chart = get_chart(chart)
    G = G.with_variables(PROJ_VARS) if G.variables != PROJ_VARS else G
    unit = PROJ_VARS[chart.unit]
    return G.substitute({unit: 1}).with_variables(chart.coords)


def choose_chart(G: MPoly) -> tuple[Chart, MPoly]:
    """First chart in the order U3, U1, U2 on which G is nonconstant."""
    for cid in CHART_ORDER:
        g = dehomogenize(G, cid)
        if not g.is_constant():
            return CHARTS[cid], g
    raise ValueError("curve equation is constant on every chart")


def certify_projective(G: MPoly, k: int, label: str = "") -> IntegralityCertificate:
    chart, g = choose_chart(G)
    cert = integrality_criterion(g, build_omega(k, chart))
    cert.label = label
    return cert

