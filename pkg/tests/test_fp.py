import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from holomorph.fp import (
    gl_class_representatives,
    gl_order,
    is_irreducible,
    is_primitive,
    matrix_order_naive,
    matrix_orders,
    monic_polys,
    poly_divmod,
    poly_mul,
    random_invertible,
    rank_mod_p,
    rational_canonical_forms,
)


def _irreducible_by_search(f, p):
    d = len(f) - 1
    for k in range(1, d // 2 + 1):
        for g in monic_polys(p, k):
            if not poly_divmod(f, g, p)[1]:
                return False
    return True


@pytest.mark.parametrize("p,d", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)])
def test_irreducibility_against_trial_division(p, d):
    for f in monic_polys(p, d):
        assert is_irreducible(f, p) == _irreducible_by_search(f, p)


def test_primitive_polynomials():
    assert is_primitive((1, 1, 0, 1), 2)  # x^3 + x + 1
    assert not is_primitive((1, 1, 1, 1, 1), 2)  # x^4+x^3+x^2+x+1: x has order 5


@pytest.mark.parametrize("p,d,count", [(2, 2, 3), (2, 3, 6), (2, 4, 14), (3, 2, 8), (5, 2, 24)])
def test_class_counts(p, d, count):
    assert len(rational_canonical_forms(p, d)) == count


def _all_invertible(p, d):
    mats = np.array(list(itertools.product(range(p), repeat=d * d))).reshape(-1, d, d)
    return mats[rank_mod_p(mats, p) == d]


@pytest.mark.parametrize("p,d", [(2, 2), (2, 3), (3, 2)])
def test_class_representatives_cover_all_classes(p, d):
    mats = _all_invertible(p, d)
    assert len(mats) == gl_order(d, p)
    keys = {m.tobytes() for m in mats.astype(np.int64)}
    # conjugation orbit of each representative; orbits must partition GL_d(p)
    inv = {}
    for m in mats:
        for n in mats:
            if np.array_equal((m @ n) % p, np.eye(d, dtype=np.int64)):
                inv[m.tobytes()] = n
                break
    seen = set()
    for r in gl_class_representatives(p, d):
        orbit = {((g @ r @ inv[g.tobytes()]) % p).astype(np.int64).tobytes() for g in mats}
        assert not (orbit & seen)
        seen |= orbit
    assert seen == keys


@given(st.sampled_from([(2, 3), (2, 5), (3, 3), (5, 2), (7, 2), (2, 6)]), st.integers(0, 2**32 - 1))
def test_matrix_orders_match_naive(pd, seed):
    p, d = pd
    mats = random_invertible(np.random.default_rng(seed), p, d, 8)
    assert matrix_orders(mats, p) == [matrix_order_naive(m, p) for m in mats]


def test_matrix_orders_gl2_2_exhaustive():
    mats = _all_invertible(2, 2)
    assert sorted(matrix_orders(mats, 2)) == [1, 2, 2, 2, 3, 3]


def test_random_invertible_has_full_rank():
    mats = random_invertible(np.random.default_rng(1), 3, 5, 100)
    assert (rank_mod_p(mats, 3) == 5).all()


def test_poly_mul_divmod_inverse():
    a, b = (1, 2, 0, 1), (2, 1)
    q, r = poly_divmod(poly_mul(a, b, 3), b, 3)
    assert q == a and r == ()
