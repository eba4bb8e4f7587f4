from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from powerseq.arith import (
    AP_FORM,
    CONSTANT_PROPORTIONAL,
    DEGENERATE,
    NONTRIVIAL,
    NOT_CONSTANT,
    SHORT,
    TRIVIAL,
    EquivWitness,
    NoFit,
    NotConstantSecondDiff,
    NotEquivalent,
    YapRecord,
    ap_family,
    canonical_form,
    classify,
    fit_quadratic,
    is_constant,
    miain_bound,
    point_to_sequence,
    polyseq_classify,
    proportional_family,
    search_sequences,
    second_diffs,
    sequence_point_bridge,
    yap_dedup,
    yap_equivalent,
    yap_search,
    yap_verify,
)
from powerseq.polycore import UPoly
from powerseq.surfaces import ProjPoint, SurfaceId, membership

# -- second differences ------------------------------------------------------------


def test_second_differences():
    assert second_diffs([9, 36, 81, 144]) == [18, 18]
    assert is_constant([1, 1, 1, 1]) == 0
    assert is_constant([1, 4, 10]) == 3
    assert is_constant([1, 4, 10, 20]) is None


def test_classification():
    rec = classify([1, 3, 5, 7], 2)
    assert rec.classification == TRIVIAL and rec.witness == (2, -1)
    rec = classify([2, -2, 2, 2], 2)
    assert rec.classification == TRIVIAL and rec.witness == (0, 2)
    assert classify([6, 23, 32, 39], 2).classification == NONTRIVIAL
    assert classify([1, -1, 1, 1], 3).classification == NOT_CONSTANT
    assert classify([2, 2, 2, 2], 3).classification == DEGENERATE
    assert classify([1, 5, 7], 2).classification == SHORT


def test_quadratic_fit():
    f = fit_quadratic([1, 4, 9])
    assert (f.a, f.b, f.c) == (1, 0, 0)
    f = fit_quadratic([(2 * i - 1) ** 2 for i in range(1, 6)])
    assert f.is_square()
    assert not fit_quadratic([36, 529, 1024, 1521]).is_square()
    with pytest.raises(NoFit):
        fit_quadratic([1, 2, 4, 8])


def test_symmetric_family_interpolation():
    a, c = -420, 5329
    roots = [17, 53, 67, 73, 73, 67, 53, 17]
    f = fit_quadratic([r * r for r in roots], start=-4)
    assert (f.a, f.b, f.c) == (a, a, c)


def test_bridge_to_points():
    p = sequence_point_bridge([1, 2, 3, 4, 5])
    assert p == ProjPoint([7, 14, 21, 28, 35])
    assert membership(p, SurfaceId(5, 2))
    rec = point_to_sequence(ProjPoint([6, 23, 32, 39]), 2)
    assert rec.classification == NONTRIVIAL
    with pytest.raises(ValueError):
        point_to_sequence(ProjPoint([1, 2, 3, 5]), 2)


def test_absolute_bound():
    assert miain_bound(0) == 12
    assert miain_bound(5) == 17
    assert all(miain_bound(n + 1) == miain_bound(n) + 1 for n in range(20))


@settings(max_examples=80, deadline=None)
@given(st.fractions(max_denominator=9), st.fractions(max_denominator=9),
       st.lists(st.sampled_from((1, -1)), min_size=4, max_size=9))
def test_progressions_are_trivial(a, b, signs):
    xs = [s * (a * i + b) for i, s in enumerate(signs, start=1)]
    rec = classify(xs, 2)
    assert rec.classification == TRIVIAL
    assert rec.second_diff == 2 * a * a


# -- searches ----------------------------------------------------------------------


def test_square_search_with_fixed_difference():
    recs = search_sequences(2, 4, 100, D=2)
    assert recs
    for rec in recs:
        assert rec.classification == NONTRIVIAL and rec.second_diff == 2


def test_cube_search_postcondition():
    for rec in search_sequences(3, 4, 12):
        assert is_constant([x ** 3 for x in rec.entries]) is not None
        assert rec.classification == NONTRIVIAL


def test_empty_search():
    assert search_sequences(2, 5, 3, D=2) == []


def test_symmetric_family_search():
    recs = search_sequences(2, 8, 10 ** 4, mode="allison")
    assert recs
    for rec in recs:
        assert len(rec.entries) == 8 and rec.classification == NONTRIVIAL


# -- y-progressions --------------------------------------------------------------


def _cubic_example():
    # a record the search finds: x = -5, -4, -1, 4 on y^2 = x^3 + 1025
    return YapRecord.from_xs(3, [-5, -4, -1, 4], 29, 1)


def test_yap_verify():
    rec = _cubic_example()
    assert rec.b == 1025 and yap_verify(rec)
    bad = YapRecord(3, rec.b, rec.points[:-1] + ((Fraction(4), Fraction(34)),), rec.u, rec.v)
    assert not yap_verify(bad)
    with pytest.raises(ValueError):
        yap_verify(YapRecord(3, Fraction(1), rec.points, rec.u, Fraction(0)))


def test_scaling_preserves_validity():
    rec = _cubic_example()
    scaled = rec.scaled(4, 8)
    assert yap_verify(scaled) and scaled.b == 64 * rec.b
    w = yap_equivalent(rec, scaled)
    assert (w.lam, w.mu) == (4, 8)
    assert yap_equivalent(rec, rec) == EquivWitness(Fraction(1), Fraction(1), 3)


def test_inequivalent_records():
    rec = _cubic_example()
    other = YapRecord.from_xs(3, [-5, -4, -1, 4], 29, 1)
    malformed = YapRecord(3, other.b, tuple((x, -y) for x, y in other.points), other.u, other.v)
    with pytest.raises(NotEquivalent):
        yap_equivalent(rec, malformed)
    with pytest.raises(NotEquivalent):
        yap_equivalent(rec, rec.scaled(2, 1))
    with pytest.raises(ValueError):
        EquivWitness(Fraction(2), Fraction(2), 3)


def test_yap_search_small():
    recs = yap_search(3, 3, {"x_max": 4, "v_max": 4})
    assert recs and all(yap_verify(r) for r in recs)
    recs4 = yap_search(3, 4, {"x_max": 20, "v_max": 60})
    assert recs4 and all(yap_verify(r) for r in recs4)
    assert len(yap_dedup(recs4)) == len(recs4)
    # a scaled copy collapses onto its representative
    assert yap_dedup(recs4 + [recs4[0].scaled(9, 27)]) == recs4


def test_canonical_form_is_class_invariant():
    rec = _cubic_example()
    for lam, mu in ((4, 8), (Fraction(1, 4), Fraction(-1, 8)), (9, -27), (Fraction(4, 9), Fraction(8, 27))):
        assert canonical_form(rec.scaled(lam, mu)) == canonical_form(rec)


@settings(max_examples=60, deadline=None)
@given(st.fractions(min_value=Fraction(-20), max_value=20, max_denominator=7).filter(bool),
       st.sampled_from((1, -1)))
def test_square_scalings_give_witnesses(r, sign):
    rec = _cubic_example()
    lam, mu = r * r, sign * r ** 3
    other = rec.scaled(lam, mu)
    w = yap_equivalent(rec, other)
    assert w.mu ** 2 == w.lam ** 3
    back = yap_equivalent(other, rec)
    assert back.lam == 1 / w.lam and back.mu == 1 / w.mu


# -- polynomial sequences ------------------------------------------------------------


def test_polyseq_examples():
    t = UPoly.gen("t")
    res = polyseq_classify([t * j + 1 for j in range(1, 5)], 2)
    assert res.classification == AP_FORM
    assert res.witness["a"] == t.to_text() and res.witness["b"] == "1/1"
    assert res.second_diff == 2 * t * t
    res = polyseq_classify([UPoly.const(c, "t") for c in (1, 1, 1, 1)], 3)
    assert res.classification == CONSTANT_PROPORTIONAL
    with pytest.raises(NotConstantSecondDiff):
        polyseq_classify([t, 2 * t, 3 * t, 4 * t], 3)


def test_polyseq_families():
    t = UPoly.gen("t")
    fam = ap_family(t + 2, t * t - 1, [1, -1, -1, 1, 1])
    assert polyseq_classify(fam, 2).classification == AP_FORM
    fam = proportional_family(t ** 3 + t, [1, -2, -2, 1])
    assert polyseq_classify(fam, 3).classification == CONSTANT_PROPORTIONAL
