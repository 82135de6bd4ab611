from __future__ import annotations

import numpy as np
import pytest

from posetrep.core import make_poset, parse_dim_string, parse_weight_string
from posetrep.derive import derive_conditions, interior_point
from posetrep.numeric import (
    NoConvergence,
    NumericRep,
    TraceObstruction,
    commutant_dim,
    relation_residual,
    structure_check,
    trace_precheck,
    unitarize,
)


def test_equiangular_lines_closed_form():
    angles = [0, 2 * np.pi / 3, 4 * np.pi / 3]
    projs = []
    for t in angles:
        v = np.array([[np.cos(t)], [np.sin(t)]], dtype=complex)
        projs.append(v @ v.conj().T)
    m = sum(projs) - 1.5 * np.eye(2)
    assert np.linalg.norm(m) <= 1e-12


def test_unitarize_three_lines():
    p = make_poset([1, 1, 1])
    d = parse_dim_string("1;1;1;2")
    w = parse_weight_string("1;1;1;3/2")
    rep = unitarize(p, d, w)
    assert rep.residual <= 1e-8 * 1.5 * np.sqrt(2)
    assert structure_check(rep, p, d).ok
    assert commutant_dim(rep) == 1  # distinct lines in the plane act irreducibly
    assert relation_residual(rep, w) == pytest.approx(rep.residual, abs=1e-12)


def test_trace_obstruction():
    p = make_poset([1, 1, 1])
    d = parse_dim_string("1;1;1;2")
    with pytest.raises(TraceObstruction):
        unitarize(p, d, parse_weight_string("3;2;2;3"))
    trace_precheck(p, d, parse_weight_string("2;2;2;3"))  # no raise


def test_unitarize_e6_row():
    p = make_poset([2, 2, 1])
    d = parse_dim_string("1,2;1,2;2;3")
    cs, _ = derive_conditions(p, d)
    w = interior_point(cs, p)
    rep = unitarize(p, d, w)
    assert rep.residual <= 1e-8 * float(w.gamma) * np.sqrt(3)
    assert structure_check(rep, p, d).ok
    # rescaling the weight changes nothing: the same tuple witnesses it,
    # and the solver succeeds on the rescaled problem too
    assert relation_residual(rep, w.scaled(3)) <= 3 * rep.residual + 1e-12
    rep3 = unitarize(p, d, w.scaled(3))
    assert rep3.residual <= 1e-8 * 3 * float(w.gamma) * np.sqrt(3)


def test_residual_invariant_under_unitary_conjugation():
    p = make_poset([1, 1, 1])
    d = parse_dim_string("1;1;1;2")
    w = parse_weight_string("1;1;1;3/2")
    rep = unitarize(p, d, w)
    rng = np.random.default_rng(42)
    for _ in range(5):
        raw = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        u, _ = np.linalg.qr(raw)
        conj = NumericRep(
            p, d, w,
            tuple(u @ proj @ u.conj().T for proj in rep.projectors),
            rep.residual, rep.iterations, rep.restarts_used, rep.seed,
        )
        assert relation_residual(conj, w) == pytest.approx(rep.residual, abs=1e-10)


def test_zero_projectors_residual():
    p = make_poset([1, 1, 1])
    d = parse_dim_string("0;0;0;2")
    w = parse_weight_string("1;1;1;2")
    rep = NumericRep(p, d, w, tuple(np.zeros((2, 2), dtype=complex) for _ in range(3)),
                     0.0, 0, 0, 0)
    assert relation_residual(rep, w) == pytest.approx(2 * np.sqrt(2))


def test_commutant_of_block_diagonal_sum():
    p = make_poset([1, 1, 1])
    d = parse_dim_string("1;1;1;2")
    w = parse_weight_string("1;1;1;3/2")
    rep = unitarize(p, d, w)
    doubled = []
    for proj in rep.projectors:
        top = np.hstack([proj, np.zeros((2, 2))])
        bot = np.hstack([np.zeros((2, 2)), proj])
        doubled.append(np.vstack([top, bot]))
    pair = NumericRep(p, parse_dim_string("2;2;2;4"), w, tuple(doubled),
                      rep.residual, 0, 0, 0)
    assert commutant_dim(pair) >= 2


def test_one_dimensional_case_is_exact():
    p = make_poset([2, 1, 1])
    d = parse_dim_string("1,1;1;0;1")
    w = parse_weight_string("1/3,1/3;1/3;5;1")  # trace: 1/3+1/3+1/3 = 1
    rep = unitarize(p, d, w)
    assert rep.residual <= 1e-12
    assert structure_check(rep, p, d).ok


def test_no_convergence_reports_best_attempt():
    p = make_poset([1, 1, 1])
    d = parse_dim_string("1;1;1;2")
    w = parse_weight_string("1;1;1;3/2")
    with pytest.raises(NoConvergence) as exc:
        unitarize(p, d, w, success_tol=1e-300, max_iter=3, restarts=1)
    best = exc.value.best
    assert isinstance(best, NumericRep)
    assert best.residual > 0


def test_unitarize_rejects_inadmissible_dims():
    from posetrep.core import ShapeMismatch

    p = make_poset([2])
    with pytest.raises(ShapeMismatch):
        unitarize(p, parse_dim_string("2,1;2"), parse_weight_string("1,1;3/2"))
