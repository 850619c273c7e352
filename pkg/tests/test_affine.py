import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holomorph.affine import (
    AffineMap,
    affine_apply,
    affine_compose,
    affine_order,
    affine_order_oracle,
    cycle_lengths,
    ell_lower_bound,
    frak_f,
    lcm_decomposition,
    lcm_decomposition_batch,
    maffo,
    per_auto_stats,
    shift,
    verify_csub_inequality,
    verify_lcm_div_conditions,
    verify_monotonicity,
)
from holomorph.arith import lcm_all
from holomorph.autgrp import automorphism_group, characteristic_subgroups
from holomorph.errors import GroupMismatch, NotCharacteristic, NotInvariant
from holomorph.groups import builtin_group, cyclic, dihedral, make_subgroup, symmetric

SMALL = ["cyclic:8", "dihedral:4", "dihedral:5", "quaternion:8", "symmetric:3", "symmetric:4", "alternating:4",
         "elementary_abelian:2:3", "cyclic:2*cyclic:4", "cyclic:3*symmetric:3", "quaternion:16", "dihedral:9"]
UP_TO_48 = SMALL + ["cyclic:4*cyclic:4", "cyclic:2*dihedral:6", "cyclic:2*symmetric:4", "dihedral:24", "elementary_abelian:2:4"]


def conj_by(G, h):
    return np.asarray(G.mul(G.mul(h, np.arange(G.order)), G.inv(h)), dtype=np.int64)


def test_dihedral_example():
    G = dihedral(4)
    r, s = 1, 4
    A = AffineMap.make(G, s, conj_by(G, r))
    assert A(0) == s
    assert A(s) == 2
    assert shift(G, s, A.auto) == 2
    assert affine_order(A) == affine_order_oracle(A) == 4
    assert cycle_lengths(A) == [4, 4]


def test_cyclic_ell_example():
    G = cyclic(8)
    alpha = (3 * np.arange(8)) % 8
    assert ell_lower_bound(G, 1, alpha) == 4
    assert affine_order(AffineMap.make(G, 1, alpha)) == 4


def test_compose_pointwise():
    G = symmetric(4)
    aut = automorphism_group(G)
    rng = np.random.default_rng(3)
    for _ in range(30):
        A = AffineMap.make(G, int(rng.integers(24)), aut.images(int(rng.integers(aut.order))))
        B = AffineMap.make(G, int(rng.integers(24)), aut.images(int(rng.integers(aut.order))))
        C = affine_compose(A, B)
        g = np.arange(24)
        assert np.array_equal(affine_apply(C, g), affine_apply(A, affine_apply(B, g)))


def test_compose_mismatch():
    with pytest.raises(GroupMismatch):
        affine_compose(AffineMap.make(cyclic(4), 1), AffineMap.make(cyclic(5), 1))
    with pytest.raises(GroupMismatch):
        AffineMap.make(cyclic(4), 1, np.arange(5))


def test_small_values():
    assert maffo(symmetric(3)) == 6
    assert frak_f(symmetric(3)).value == 6
    assert frak_f(symmetric(4)).value == 12
    assert frak_f(builtin_group("alternating:5")).value == 30
    assert maffo(builtin_group("alternating:5")) == 15
    assert [frak_f(builtin_group(f"elementary_abelian:2:{k}")).value for k in range(1, 5)] == [2, 4, 7, 15]


@pytest.mark.parametrize("n", [1, 2, 7, 12, 30])
def test_cyclic_and_dihedral_attain_order(n):
    assert frak_f(cyclic(n)).value == n
    assert frak_f(dihedral(n)).value == 2 * n


def test_witness_realises_value():
    G = dihedral(6)
    res = frak_f(G)
    xs_orders = [affine_order(AffineMap.make(G, x, res.witness_auto)) for x in range(G.order)]
    assert lcm_all(xs_orders) == res.value


@pytest.mark.parametrize("spec", UP_TO_48)
def test_class_representatives_match_full_iteration(spec):
    G = builtin_group(spec)
    aut = automorphism_group(G)
    full, reps = frak_f(G, aut), frak_f(G, aut, class_reps=True)
    assert full.value == reps.value
    assert maffo(G, aut) == maffo(G, aut, class_reps=True)


@settings(max_examples=80)
@given(st.sampled_from(SMALL), st.integers(0, 10**6), st.integers(0, 10**6))
def test_formula_matches_cycle_walk(spec, ai, x):
    G = builtin_group(spec)
    aut = automorphism_group(G)
    A = AffineMap.make(G, x % G.order, aut.images(ai % aut.order))
    order = affine_order(A)
    assert order == affine_order_oracle(A)
    ell = ell_lower_bound(G, A.translation, A.auto)
    assert order % ell == 0
    assert all(c % ell == 0 for c in cycle_lengths(A))


@settings(max_examples=40)
@given(st.sampled_from(SMALL), st.integers(0, 10**6), st.integers(0, 10**6))
def test_lcm_over_translations_is_conjugation_invariant(spec, ai, bi):
    G = builtin_group(spec)
    aut = automorphism_group(G)
    alpha = aut.images(ai % aut.order)
    beta = aut.images(bi % aut.order)
    conj = beta[alpha[np.argsort(beta)]]
    lcm = lambda a: lcm_all(affine_order(AffineMap.make(G, x, a)) for x in range(G.order))
    assert lcm(alpha) == lcm(conj)


def test_per_auto_stats_bounds():
    G = symmetric(4)
    for _, m, lcm_val, _ in per_auto_stats(G, automorphism_group(G)):
        assert lcm_val % m == 0 and lcm_val <= G.order


def test_decomposition_example():
    G = cyclic(4)
    N = make_subgroup(G, [0, 2])
    w = lcm_decomposition(G, N, AffineMap.make(G, 1))
    assert (w.order, w.quotient_order_part, w.m_set, w.lcm_part) == (4, 2, (2,), 2)
    assert w.holds


@pytest.mark.parametrize("spec", ["dihedral:4", "quaternion:8", "symmetric:4", "cyclic:2*cyclic:4", "cyclic:3*symmetric:3"])
@pytest.mark.parametrize("policy", ["min", "max"])
def test_decomposition_identity_all_maps(spec, policy):
    G = builtin_group(spec)
    aut = automorphism_group(G)
    chars = [N for N in characteristic_subgroups(G, aut) if not N.is_trivial and not N.is_whole]
    assert chars
    for N in chars:
        for i in range(aut.order):
            orders, k, parts, nC = lcm_decomposition_batch(G, N, aut.images(i), rep_policy=policy)
            assert np.array_equal(orders, k * parts)
            members = set(N.members)
            assert set(np.unique(nC).tolist()) <= members


def test_decomposition_requires_invariance():
    G = symmetric(3)
    N = make_subgroup(G, [0, int(np.flatnonzero(G.element_orders == 2)[0])])
    aut = automorphism_group(G)
    bad = next(aut.images(i) for i in range(aut.order) if set(aut.images(i)[N.as_array()].tolist()) != set(N.members))
    with pytest.raises(NotInvariant):
        lcm_decomposition_batch(G, N, bad)


def test_csub_examples():
    G = cyclic(4)
    rec = verify_csub_inequality(G, make_subgroup(G, [0, 2]))
    assert rec.passed and (rec.details["F_G"], rec.details["F_N"], rec.details["F_Q"]) == (4, 2, 2)
    G = cyclic(6)
    rec = verify_csub_inequality(G, make_subgroup(G, [0, 2, 4]))
    assert rec.passed and (rec.details["F_G"], rec.details["F_N"], rec.details["F_Q"]) == (6, 3, 2)
    G = dihedral(4)
    rec = verify_csub_inequality(G, make_subgroup(G, G.center().tolist()))
    assert rec.passed and (rec.details["F_G"], rec.details["F_N"], rec.details["F_Q"]) == (8, 2, 4)


def test_monotonicity_examples():
    G = cyclic(8)
    rec = verify_monotonicity(G, make_subgroup(G, [0, 4]))
    assert rec.passed
    assert (rec.details["mao_G"], rec.details["mao_Q"]) == (2, 2)
    G = dihedral(6)
    for N in characteristic_subgroups(G):
        if not N.is_trivial and not N.is_whole:
            assert verify_monotonicity(G, N).passed


def test_characteristic_required():
    G = symmetric(3)
    with pytest.raises(NotCharacteristic):
        verify_csub_inequality(G, make_subgroup(G, [0, 3]))
    with pytest.raises(NotCharacteristic):
        verify_monotonicity(G, make_subgroup(G, list(range(6))))


@pytest.mark.parametrize("spec", SMALL)
def test_lcm_divisibility_conditions(spec):
    one, two = verify_lcm_div_conditions(builtin_group(spec))
    assert one.passed and two.passed
    assert one.details["applicable"] >= 1

