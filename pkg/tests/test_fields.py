import numpy as np
import pytest

from holomorph.errors import NotIrreducible, NotPrime
from holomorph.fields import check_field_axioms, frobenius_order, make_field


@pytest.mark.parametrize("p,f", [(2, 1), (3, 1), (2, 2), (2, 3), (3, 3), (5, 3), (2, 6), (7, 2), (5, 2)])
def test_field_axioms(p, f):
    F = make_field(p, f)
    assert F.q == p**f
    assert check_field_axioms(F)
    assert frobenius_order(F) == f


def test_unit_group_is_cyclic():
    F = make_field(2, 3)
    g = F.generator
    powers = {F.power(g, k) for k in range(7)}
    assert powers == set(range(1, 8))


def test_large_field_sampled_axioms():
    assert check_field_axioms(make_field(2, 11), samples=5000, seed=3)


def test_custom_modulus_not_primitive():
    # x^4 + x^3 + x^2 + x + 1 is irreducible over F_2 but x is not primitive
    F = make_field(2, 4, (1, 1, 1, 1, 1))
    assert check_field_axioms(F)


def test_bad_modulus_and_prime():
    with pytest.raises(NotIrreducible):
        make_field(2, 2, (1, 0, 1))
    with pytest.raises(NotPrime):
        make_field(4, 1)


def test_squares_mask():
    F = make_field(3, 3)
    sq = F.squares
    assert sq.sum() == 13
    brute = {int(F.mul(a, a)) for a in range(1, 27)}
    assert set(np.flatnonzero(sq).tolist()) == brute
