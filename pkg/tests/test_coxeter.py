from __future__ import annotations

import random
from fractions import Fraction as Q

import pytest

from posetrep.core import (
    DimVector,
    LinearForm,
    PrimitivePoset,
    SymbolicWeight,
    Weight,
    classify_degeneracy,
    make_poset,
    parse_dim_string,
    parse_weight_string,
)
from posetrep.coxeter import (
    NegativeEntry,
    NotStrictlyDecreasing,
    StarWeight,
    alpha_to_beta,
    beta_to_alpha,
    fminus_dim,
    fplus_closed_form,
    fplus_dim,
    phiminus_concrete,
    phiminus_weight,
    phiplus_weight,
    rho_dim,
    sigma_dim,
)
from posetrep.roots import enumerate_indec_dims

FINITE_POSETS = [(1, 1, 1), (2, 1, 1), (2, 2, 1), (3, 2, 1), (4, 2, 1), (3,), (2, 2)]


def test_sigma_examples():
    p = make_poset([1, 1, 1])
    assert sigma_dim(p, parse_dim_string("1;1;1;2")) == parse_dim_string("1;1;1;2")
    p221 = make_poset([2, 2, 1])
    assert sigma_dim(p221, parse_dim_string("1,2;1,2;2;3")) == parse_dim_string(
        "1,2;1,2;1;3"
    )
    assert sigma_dim(p, parse_dim_string("0;0;0;1")) == parse_dim_string("1;1;1;1")


def test_rho_examples():
    p = make_poset([1, 1, 1])
    assert rho_dim(p, parse_dim_string("1;1;1;1")) == parse_dim_string("1;1;1;2")
    p221 = make_poset([2, 2, 1])
    d = parse_dim_string("1,2;1,2;2;3")
    assert rho_dim(p221, d) == d
    with pytest.raises(NegativeEntry):
        rho_dim(p, parse_dim_string("0;0;0;1"))


def test_f_transform_examples():
    p = make_poset([1, 1, 1])
    assert fplus_dim(p, parse_dim_string("1;1;1;1")) == parse_dim_string("1;1;1;2")
    assert fminus_dim(p, parse_dim_string("1;1;1;2")) == parse_dim_string("1;1;1;1")
    p221 = make_poset([2, 2, 1])
    assert fminus_dim(p221, parse_dim_string("1,2;1,2;2;3")) == parse_dim_string(
        "1,2;1,2;1;2"
    )
    with pytest.raises(NegativeEntry):
        fminus_dim(p, parse_dim_string("1;1;1;1"))  # degenerate input


def test_involutions_and_inverses_on_enumerated_dims():
    for branches in FINITE_POSETS:
        p = make_poset(branches)
        for d in enumerate_indec_dims(p):
            try:
                s = sigma_dim(p, d)
            except NegativeEntry:
                s = None
            if s is not None:
                assert sigma_dim(p, s) == d
            try:
                r = rho_dim(p, d)
            except NegativeEntry:
                r = None
            if r is not None:
                assert rho_dim(p, r) == d
            if classify_degeneracy(p, d).non_degenerate:
                down = fminus_dim(p, d)
                assert fplus_dim(p, down) == d
                up = fplus_dim(p, d)
                assert fminus_dim(p, up) == d


def test_fplus_matches_closed_form():
    for branches in FINITE_POSETS:
        p = make_poset(branches)
        for d in enumerate_indec_dims(p):
            try:
                via_composition = fplus_dim(p, d)
            except NegativeEntry:
                continue
            assert via_composition == fplus_closed_form(p, d)


def test_phi_symbolic_examples():
    p = make_poset([1, 1, 1])
    out = phiminus_weight(p, SymbolicWeight.identity(p))
    a, b, d, g = (LinearForm.variable(k) for k in ["a.1.1", "a.2.1", "a.3.1", "g"])
    assert out.branch_forms == ((b + d - g,), (a + d - g,), (a + b - g,))
    assert out.gamma_form == a + b + d - g
    p211 = make_poset([2, 1, 1])
    out211 = phiminus_weight(p211, SymbolicWeight.identity(p211))
    a2 = LinearForm.variable("a.1.2")
    bb = LinearForm.variable("a.2.1")
    dd = LinearForm.variable("a.3.1")
    gg = LinearForm.variable("g")
    assert out211.branch_forms[0] == (a2, bb + dd - gg)


def test_phi_plus_minus_identity_symbolic():
    for branches in FINITE_POSETS:
        p = make_poset(branches)
        sw = SymbolicWeight.identity(p)
        assert phiplus_weight(p, phiminus_weight(p, sw)) == sw
        assert phiminus_weight(p, phiplus_weight(p, sw)) == sw


def test_phiminus_concrete_positivity():
    p = make_poset([1, 1, 1])
    w = parse_weight_string("2;2;2;3")
    out = phiminus_concrete(p, w)
    assert out == parse_weight_string("1;1;1;3")
    from posetrep.core import NonPositiveWeight

    with pytest.raises(NonPositiveWeight):
        phiminus_concrete(p, parse_weight_string("1;1;5;10"))


def test_alpha_beta_round_trip():
    p = make_poset([2])
    w = Weight(((Q(1), Q(2)),), Q(5))
    sw = alpha_to_beta(p, w)
    assert sw.betas == ((Q(3), Q(2)),)
    assert beta_to_alpha(p, sw) == w
    p3 = make_poset([3])
    assert alpha_to_beta(p3, Weight(((Q(1), Q(1), Q(1)),), Q(1))).betas == (
        (Q(3), Q(2), Q(1)),
    )
    with pytest.raises(NotStrictlyDecreasing):
        beta_to_alpha(p, StarWeight(((Q(2), Q(2)),), Q(1)))
    rng = random.Random(11)
    for _ in range(1000):
        branches = tuple(rng.randint(1, 4) for _ in range(rng.randint(1, 3)))
        pr = make_poset(branches)
        w = Weight(
            tuple(
                tuple(Q(rng.randint(1, 30), rng.randint(1, 5)) for _ in range(k))
                for k in branches
            ),
            Q(rng.randint(1, 9)),
        )
        assert beta_to_alpha(pr, alpha_to_beta(pr, w)) == w


def _defect_form(p: PrimitivePoset, d: DimVector, sw: SymbolicWeight) -> LinearForm:
    total = LinearForm()
    for j, i in p.elements():
        total = total + sw.entry(j, i) * Q(d.entry(j, i))
    return total - sw.gamma_form * Q(d.d0)


def _random_nondegenerate(rng: random.Random) -> tuple[PrimitivePoset, DimVector]:
    branches = tuple(rng.randint(1, 4) for _ in range(rng.randint(1, 4)))
    p = make_poset(branches)
    d0 = max(branches) + rng.randint(1, 4)
    dims = []
    for k in branches:
        chain = sorted(rng.sample(range(1, d0), k))
        dims.append(tuple(chain))
    return p, DimVector(d0, tuple(dims))


def _raw_fminus_values(p, d):
    """Closed form of the downward transform without admissibility checks
    (entries may go negative on infinite-type input); the independent
    oracle for the defect identity."""
    firsts = [b[0] for b in d.branches]
    d0_new = (p.width - 1) * d.d0 - sum(firsts)
    branches = [
        [b[i] - b[0] for i in range(1, len(b))] + [d.d0 - b[0]] for b in d.branches
    ]
    return d0_new, branches


def _raw_defect(d0, branches, sw: SymbolicWeight) -> LinearForm:
    total = LinearForm()
    for bf, bd in zip(sw.branch_forms, branches):
        for f, e in zip(bf, bd):
            total = total + f * Q(e)
    return total - sw.gamma_form * Q(d0)


def test_trace_defect_invariance_on_enumerated_dims():
    for branches in FINITE_POSETS:
        p = make_poset(branches)
        for d in enumerate_indec_dims(p):
            if not classify_degeneracy(p, d).non_degenerate:
                continue
            sw = SymbolicWeight.identity(p)
            before = _defect_form(p, d, sw)
            after = _defect_form(p, fminus_dim(p, d), phiminus_weight(p, sw))
            assert after == before


def test_trace_defect_invariance_random():
    rng = random.Random(12)
    for _ in range(1000):
        p, d = _random_nondegenerate(rng)
        sw = SymbolicWeight.identity(p)
        before = _defect_form(p, d, sw)
        d0_new, branches = _raw_fminus_values(p, d)
        after = _raw_defect(d0_new, branches, phiminus_weight(p, sw))
        assert after == before
