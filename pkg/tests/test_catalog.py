from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from powerseq.catalog import (
    CurveSpec,
    alpha_polynomial,
    curve_equations,
    curves_through_point,
    epsilon_equations,
    epsilon_membership,
    low_genus_report,
    plane_catalog,
    pullback_ledger,
    twist_ledger,
    verify_integrality,
)
from powerseq.arith import TRIVIAL, classify
from powerseq.polycore import MPoly, xvars
from powerseq.surfaces import ProjPoint, SurfaceId, genus_of_type, membership, threshold_n
from powerseq.symdiff import q_polynomial

PROJ = ("x1", "x2", "x3")


def test_equations():
    x1, x2, x3 = MPoly.gens(PROJ)
    assert curve_equations(CurveSpec.cinfinity(3)) == [x1 ** 3 - 2 * x2 ** 3 + x3 ** 3]
    assert curve_equations(CurveSpec.calpha(5, 3)) == [3 * x1 ** 3 - 8 * x2 ** 3 + 6 * x3 ** 3]
    y = MPoly.gens(xvars(4))
    assert curve_equations(CurveSpec.epsilon((1, 1, 1), 2)) == [
        -y[0] + 2 * y[1] - y[2],
        -2 * y[0] + 3 * y[1] - y[3],
    ]


def test_spec_validation():
    with pytest.raises(ValueError):
        CurveSpec.calpha(2, 3)
    with pytest.raises(ValueError):
        CurveSpec.type_iv(1, 1, 3)
    with pytest.raises(ValueError):
        CurveSpec.type_v(4)
    with pytest.raises(ValueError):
        CurveSpec.axis(4, 2)


@pytest.mark.parametrize(
    "spec",
    [CurveSpec.axis(2, 4), CurveSpec.type_iv(1, -1, 2), CurveSpec.type_v(3),
     CurveSpec.calpha(Fraction(7, 2), 4), CurveSpec.calpha_symbolic(5)],
    ids=str,
)
def test_catalog_curves_are_integral(spec):
    cert = verify_integrality(spec)
    assert cert.verify()


def test_type_v_quotient():
    cert = verify_integrality(CurveSpec.type_v(3))
    # up to a constant the quotient is x1^(2k-2) x2^k
    (exps, c), = cert.quotient.terms.items()
    assert exps == (4, 3)


def test_plane_catalog_contents():
    kinds = [s.kind for s in plane_catalog(4)]
    assert kinds.count("TypeIV") == 4 and "TypeV" not in kinds
    kinds = [s.kind for s in plane_catalog(5)]
    assert kinds.count("TypeV") == 1 and "TypeIV" not in kinds


def test_alpha_quadratic():
    E = alpha_polynomial([1, 2, 1], 2)
    assert list(E.coeffs) == [-8, 12, -3]


def test_point_off_delta_with_irrational_roots():
    rep = curves_through_point([1, 2, 1], 2)
    assert not rep.on_delta
    assert q_polynomial(2).evaluate([1, 2, 1]) == 192
    assert rep.to_json()["t_polynomial"] == "-3/1*t^2 + 4/1"
    assert len(rep.curves) == 2 and rep.total_multiplicity == 2
    assert {spec.root_sign for spec, _ in rep.curves} == {1, -1}


def test_points_on_delta():
    rep = curves_through_point([1, 1, 1], 2)
    assert rep.on_delta and "Q=0" in rep.delta_components
    labels = {spec.label() for spec, _ in rep.curves}
    assert "C_inf" in labels and "typeIV(+1,+1)" in labels
    rep = curves_through_point([1, 1, 1], 3)
    assert {spec.label() for spec, _ in rep.curves} >= {"C_inf", "typeV"}
    rep = curves_through_point([0, 1, 2], 3)
    assert rep.on_delta and "A0=0" in rep.delta_components
    assert {spec.label() for spec, _ in rep.curves} == {"C_alpha(5/3)", "axis(x1)"}


def test_random_points_off_delta():
    rng = random.Random(5)
    checked = 0
    while checked < 60:
        p = [rng.randint(-30, 30) for _ in range(3)]
        k = rng.choice((2, 3, 4))
        if 0 in p or q_polynomial(k).evaluate(p) == 0:
            continue
        rep = curves_through_point(p, k)
        assert not rep.on_delta
        assert rep.total_multiplicity == 2
        for spec, _ in rep.curves:
            assert curve_equations(spec)[0].evaluate([Fraction(c) for c in p]) == 0
        checked += 1


def test_pullback_of_c_i():
    led = pullback_ledger(CurveSpec.calpha(5, 2), 6)
    assert led.verified
    assert [(s.label(), m) for s, m in led.components] == [("R_5", 2)]
    assert led.checks["pullback_equals"] == "1/1*x5^2"


def test_pullback_of_type_iv():
    led = pullback_ledger(CurveSpec.type_iv(1, 1, 4), 5)
    assert led.verified
    assert len(led.components) == 4
    assert led.degree_check == (64, 64)
    assert all(s.kind == "EpsilonCurve" and s.signs[:2] == (1, 1) for s, _ in led.components)


def test_pullback_of_type_v():
    led = pullback_ledger(CurveSpec.type_v(3), 4)
    assert led.verified and led.balanced
    assert len(led.components) == 1
    assert led.checks["Q_of_squares_factors"] is True


def test_epsilon_membership():
    assert epsilon_membership((1, 1, 1), 4, 2)
    assert epsilon_membership((1, -1, 1, 1), 5, 4)
    assert not epsilon_membership((1, -1, 1, 1), 5, 4, two=3)
    for signs in itertools.product((1, -1), repeat=5):
        assert epsilon_membership(signs, 6, 2)


def test_epsilon_points_are_trivial_sequences():
    signs = (1, -1, 1, -1)
    eqs = epsilon_equations(signs, 2)
    z1, z2 = 8, 3
    pt = [z1, z2]
    for j in range(3, 6):
        pt.append(signs[j - 2] * ((j - 1) * signs[0] * z2 - (j - 2) * z1))
    assert all(eq.evaluate(pt) == 0 for eq in eqs)
    assert membership(ProjPoint(pt), SurfaceId(5, 2))
    assert classify(pt, 2).classification == TRIVIAL


def test_low_genus_reports():
    rep = low_genus_report(SurfaceId(11, 2), 1)
    assert len(rep.curves) == 2 ** 10
    assert all(gen == 0 for _, gen in rep.curves)
    assert low_genus_report(SurfaceId(8, 3), 1).curves == []
    assert low_genus_report(SurfaceId(7, 4), 0).curves == []


def test_twist_ledger_examples():
    led = twist_ledger(SurfaceId(8, 3), 1)
    assert (led.final, led.degree_bound, led.negative) == (-1, -1, True)
    led = twist_ledger(SurfaceId(11, 2), 1)
    assert (led.final, led.degree_bound, led.negative) == (-1, -1, True)
    led = twist_ledger(SurfaceId(8, 2), 1)
    assert (led.final, led.degree_bound, led.negative) == (2, 2, False)


def test_twist_ledger_at_genus_zero_needs_negative_twist():
    # bound alone is negative at final = 0, g = 0; the chain still fails
    led = twist_ledger(SurfaceId(10, 2), 0)
    assert led.final == 0 and led.degree_bound < 0
    assert not led.negative
    assert threshold_n(2, 0) == 11


def test_catalog_genus_exceeds_g_from_threshold():
    for k in (2, 3, 4):
        for g in range(0, 3):
            n = threshold_n(k, g)
            for t in ("a", "a'", "b", "c", "e"):
                if t == "e" and k % 2 == 0:
                    continue
                assert genus_of_type(t, SurfaceId(n, k)) > g
