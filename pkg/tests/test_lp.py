from __future__ import annotations

import random
from fractions import Fraction as Q

import numpy as np
import scipy.optimize

from posetrep import lp


def test_simple_bounded():
    res = lp.solve_lp([Q(1)], [[Q(1)]], [Q(1)])
    assert res.status == lp.OPTIMAL and res.value == 1 and res.x == (Q(1),)


def test_two_variable():
    # max x + y with x + 2y <= 4, 3x + y <= 6
    res = lp.solve_lp([Q(1), Q(1)], [[Q(1), Q(2)], [Q(3), Q(1)]], [Q(4), Q(6)])
    assert res.status == lp.OPTIMAL
    assert res.value == Q(14, 5)  # vertex (8/5, 6/5)


def test_equality_constraint():
    res = lp.solve_lp([Q(0), Q(1)], [[Q(0), Q(1)]], [Q(5)], [[Q(1), Q(1)]], [Q(3)])
    assert res.status == lp.OPTIMAL and res.value == 3


def test_infeasible():
    res = lp.solve_lp([Q(1)], [[Q(1)], [Q(-1)]], [Q(-2), Q(1)])
    assert res.status == lp.INFEASIBLE


def test_unbounded():
    assert lp.solve_lp([Q(1)]).status == lp.UNBOUNDED
    assert lp.solve_lp([Q(1)], [[Q(-1)]], [Q(1)]).status == lp.UNBOUNDED


def test_negative_rhs_rows():
    # x >= 2 written as -x <= -2, maximise -x: optimum at x = 2
    res = lp.solve_lp([Q(-1)], [[Q(-1)], [Q(1)]], [Q(-2), Q(10)])
    assert res.status == lp.OPTIMAL and res.x == (Q(2),)


def test_degenerate_vertex_terminates():
    # classic degeneracy: several constraints meet at the optimum
    res = lp.solve_lp(
        [Q(1), Q(1)],
        [[Q(1), Q(0)], [Q(0), Q(1)], [Q(1), Q(1)]],
        [Q(1), Q(1), Q(1)],
    )
    assert res.status == lp.OPTIMAL and res.value == 1


def test_redundant_equalities():
    res = lp.solve_lp(
        [Q(1), Q(0)],
        a_eq=[[Q(1), Q(1)], [Q(2), Q(2)]],
        b_eq=[Q(2), Q(4)],
    )
    assert res.status == lp.OPTIMAL and res.value == 2


def test_random_instances_match_scipy():
    rng = random.Random(7)
    for _ in range(60):
        nvars = rng.randint(1, 4)
        nub = rng.randint(1, 4)
        neq = rng.randint(0, 1)
        c = [Q(rng.randint(-4, 4)) for _ in range(nvars)]
        a_ub = [[Q(rng.randint(-3, 3)) for _ in range(nvars)] for _ in range(nub)]
        b_ub = [Q(rng.randint(0, 6)) for _ in range(nub)]
        a_eq = [[Q(rng.randint(-2, 2)) for _ in range(nvars)] for _ in range(neq)]
        b_eq = [Q(rng.randint(0, 3)) for _ in range(neq)]
        mine = lp.solve_lp(c, a_ub, b_ub, a_eq, b_eq)
        ref = scipy.optimize.linprog(
            [-float(x) for x in c],
            A_ub=np.array(a_ub, dtype=float),
            b_ub=np.array(b_ub, dtype=float),
            A_eq=np.array(a_eq, dtype=float) if neq else None,
            b_eq=np.array(b_eq, dtype=float) if neq else None,
            bounds=[(0, None)] * nvars,
            method="highs",
        )
        if mine.status == lp.OPTIMAL:
            assert ref.status == 0, (mine, ref)
            assert abs(float(mine.value) + ref.fun) < 1e-7
        elif mine.status == lp.INFEASIBLE:
            assert ref.status == 2
        else:
            assert ref.status == 3


def test_feasible_point_satisfies_constraints():
    rng = random.Random(8)
    for _ in range(40):
        nvars = rng.randint(1, 4)
        c = [Q(rng.randint(-3, 3)) for _ in range(nvars)]
        a_ub = [[Q(rng.randint(-3, 3)) for _ in range(nvars)] for _ in range(3)]
        b_ub = [Q(rng.randint(-1, 5)) for _ in range(3)]
        res = lp.solve_lp(c, a_ub, b_ub)
        if res.status != lp.OPTIMAL:
            continue
        for row, b in zip(a_ub, b_ub):
            assert sum(r * x for r, x in zip(row, res.x)) <= b
        assert all(x >= 0 for x in res.x)
