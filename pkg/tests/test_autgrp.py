import numpy as np
import pytest

from holomorph import autgrp
from holomorph.arith import euler_phi
from holomorph.autgrp import (
    automorphism_group,
    automorphisms_brute_force,
    backtrack_automorphisms,
    characteristic_subgroups,
    elementary_abelian_structure,
    is_simple,
    mao,
    out_stats,
    verify_char_simple_bound,
)
from holomorph.errors import GroupTooLarge
from holomorph.groups import alternating, builtin_group, cyclic, elementary_abelian, subgroups, symmetric, table_of
from holomorph.io import format_pgrp, parse_pgrp
from holomorph.groups import from_permutation_generators

UP_TO_24 = [
    "cyclic:1", "cyclic:2", "cyclic:6", "cyclic:8", "cyclic:12", "cyclic:24", "dihedral:1", "dihedral:2", "dihedral:3",
    "dihedral:4", "dihedral:6", "dihedral:12", "quaternion:8", "quaternion:16", "elementary_abelian:2:3",
    "elementary_abelian:3:2", "symmetric:3", "symmetric:4", "alternating:4", "cyclic:2*cyclic:4", "cyclic:4*cyclic:4",
    "cyclic:2*cyclic:6", "cyclic:3*cyclic:6", "cyclic:4*cyclic:6",
]


def _is_automorphism(T, phi):
    return len(set(phi.tolist())) == len(phi) and np.array_equal(phi[T], T[phi[:, None], phi[None, :]])


def test_examples():
    assert automorphism_group(cyclic(1)).order == 1
    A = automorphism_group(cyclic(8))
    assert A.order == 4 and A.as_group.exponent() == 2
    A = automorphism_group(symmetric(3))
    assert A.order == 6 and A.out_order == 1


def test_out_stats_examples():
    assert out_stats(automorphism_group(symmetric(3))) == (1, 1)
    assert out_stats(automorphism_group(cyclic(8))) == (4, 2)
    assert out_stats(automorphism_group(elementary_abelian(2, 3))) == (168, 84)


def test_mao_examples():
    assert mao(cyclic(1)) == 1
    assert mao(cyclic(8)) == 2
    assert mao(symmetric(3)) == 3


@pytest.mark.parametrize("spec", UP_TO_24)
def test_backtracking_equals_brute_force(spec):
    G = builtin_group(spec)
    fast = backtrack_automorphisms(G)
    slow = automorphisms_brute_force(G)
    assert np.array_equal(fast, slow)


@pytest.mark.parametrize("spec", UP_TO_24 + ["quaternion:32", "dihedral:16", "alternating:5", "symmetric:5", "cyclic:8*cyclic:8", "alternating:6"])
def test_automorphisms_valid_and_inner_count(spec):
    G = builtin_group(spec)
    A = automorphism_group(G)
    T = table_of(G).astype(np.int64)
    if G.order <= 256:
        for i in range(A.order):
            assert _is_automorphism(T, A.images(i))
    assert A.inner_order == G.order // len(G.center())
    assert A.order == A.out_order * A.inner_order
    assert A.out_order % A.out_exponent == 0
    if G.order > 1:
        assert A.max_order() <= G.order - 1


@pytest.mark.parametrize("n", range(1, 65))
def test_aut_cyclic_is_phi(n):
    assert automorphism_group(cyclic(n)).order == euler_phi(n)


def test_known_aut_orders():
    expected = {"quaternion:8": 24, "alternating:5": 120, "alternating:6": 1440, "dihedral:12": 48, "elementary_abelian:3:3": 11232}
    for spec, order in expected.items():
        assert automorphism_group(builtin_group(spec)).order == order


def test_linear_path_matches_enumeration():
    G = elementary_abelian(2, 4)
    full = automorphism_group(G)
    lin = autgrp._linear_aut_group(G, elementary_abelian_structure(G))
    assert lin.order == full.order == 20160
    assert lin.out_exponent == full.out_exponent == 420
    assert lin.max_order() == full.max_order() == 15
    reps = lin.class_representatives()
    assert len(reps) == 14
    T = table_of(G).astype(np.int64)
    assert all(_is_automorphism(T, r.images) for r in reps)
    # class sizes of the representatives' orders match the enumerated order multiset
    assert sorted({r.order for r in reps}) == sorted(np.unique(full.as_group.element_orders).tolist())


def test_large_elementary_abelian_is_structured():
    A = automorphism_group(elementary_abelian(2, 6))
    assert not A.enumerated
    assert A.order == 20158709760
    assert len(A.class_representatives()) == 60
    T = table_of(A.base).astype(np.int64)
    for row in A.sample(np.random.default_rng(0), 50):
        assert _is_automorphism(T, row)
    assert all(_is_automorphism(T, g) for g in A.generators)


@pytest.mark.parametrize("spec", ["dihedral:4", "dihedral:6", "quaternion:16", "symmetric:4", "cyclic:2*cyclic:4", "cyclic:12", "alternating:4"])
def test_characteristic_subgroups_against_lattice(spec):
    G = builtin_group(spec)
    A = automorphism_group(G)
    brute = []
    for H in subgroups(G):
        mem = H.as_array()
        mask = np.zeros(G.order, bool)
        mask[mem] = True
        if all(mask[A.images(i)[mem]].all() for i in range(A.order)):
            brute.append(H.members)
    assert [H.members for H in characteristic_subgroups(G, A)] == brute


def test_aut_pgrp_export_round_trip():
    G = builtin_group("dihedral:5")
    A = automorphism_group(G)
    name, degree, gens = parse_pgrp(format_pgrp("Aut", G.order, A.generators))
    H = from_permutation_generators(degree, gens)
    assert H.order == A.order == 20


def test_disk_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("HOLO_CACHE_DIR", str(tmp_path))
    G = builtin_group("cyclic:3*symmetric:3")
    autgrp._MEMO.clear()
    first = automorphism_group(G)
    files = list(tmp_path.glob("aut-*.npy"))
    assert len(files) == 1
    autgrp._MEMO.clear()
    second = automorphism_group(G)
    assert second.order == first.order
    assert np.array_equal(second.as_group.perms, first.as_group.perms)


def test_cap():
    with pytest.raises(GroupTooLarge):
        automorphism_group(symmetric(5), cap=100)


def test_simplicity():
    assert is_simple(alternating(5))
    assert not is_simple(symmetric(4))
    assert not is_simple(cyclic(4))


def test_char_simple_bound_a5():
    rec = verify_char_simple_bound(alternating(5), 2)
    assert rec.passed is True
    d = rec.details
    assert d["mao"] == 30 and d["exponent"] == 30 and d["order"] == 3600
    assert d["aut_order"] == d["expected_aut_order"] == 28800
    assert 30**1000 < 3600**438 and 60**2 == 3600


def test_char_simple_bound_guard():
    rec = verify_char_simple_bound(cyclic(4), 2)
    assert rec.passed is None and not rec.failures
