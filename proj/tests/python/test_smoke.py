import json
from fractions import Fraction

import pytest

import revpell as rp


def test_enumerate_and_classify_roundtrip():
    invs = rp.enumerate_involutions(1)
    assert len(invs) == 12
    for m in invs:
        assert rp.is_involution(m)
        spec = rp.classify_involution(m)
        assert rp.materialize(spec) == m


def test_cat_map_reversors():
    L = rp.Mat2Z(2, 1, 1, 1)
    rep = rp.find_reversors(L, 10)
    assert rep.case1.status == rp.CaseStatus.FOUND
    assert rep.case1.gamma_plus == -1
    assert rep.case1.gamma_minus == 1
    assert rp.Mat2Z(5, 3, -8, -5) in rep.reversors_found
    for A in rep.reversors_found:
        assert rp.is_involution(A)
        assert rp.is_r_reversible(L, A)
    data = json.loads(rep.json())
    assert data["reversors_found"]
    assert data["case3"]["problem"] == {"D": "5", "N": "4"}


def test_pell_solver_matches_brute_force():
    p = rp.PellProblem(5, 4)
    s = rp.solve_general(p)
    assert s.kind == rp.PellKind.INFINITE_CLASSES
    assert s.automorph == (9, 4)
    assert {(t.x, t.y) for t in s.solutions} == {(2, 0), (-3, 1), (3, 1)}
    expanded = rp.expand_solutions(s, 100)
    brute = rp.brute_force_solutions(p, 100)
    assert [(t.x, t.y) for t in expanded] == [(t.x, t.y) for t in brute]


def test_construct_and_errors():
    L = rp.construct_reversible_anosov(rp.InvolutionSpec.general(2, 1))
    assert (L.a, L.b, L.c, L.d) == (2, 1, 3, 2)
    with pytest.raises(rp.InvalidParamsError):
        rp.construct_reversible_anosov(rp.InvolutionSpec.general(2, 5))
    with pytest.raises(rp.NotHyperbolicError):
        rp.find_reversors(rp.Mat2Z(1, 0, 0, 1))


def test_orientation_reversing_obstruction():
    rep = rp.orientation_reversing_analysis(rp.Mat2Z(2, 3, 1, 1))
    assert rep.obstruction.valid
    assert rep.obstruction.conic == rp.ConicKind.ELLIPSE
    assert rep.reversors_found == []
    assert all(step.verified for step in rep.obstruction.steps)


def test_fixed_curves_exact_rationals():
    curves = rp.fixed_point_curves(rp.Mat2Z(1, 0, 4, -1))
    assert len(curves) == 2
    assert {(c.dir_x, c.dir_y) for c in curves} == {(1, 2)}
    assert {(c.offset_x, c.offset_y) for c in curves} == {
        (Fraction(0), Fraction(0)),
        (Fraction(0), Fraction(1, 2)),
    }


def test_bigint_roundtrip():
    assert rp.fundamental_solution(61) == (1766319049, 226153980)
    assert rp.negative_pell_solution(13) == (18, 5)
    assert rp.negative_pell_solution(12) is None
