from itertools import product

import pytest

from g2gt.indexsets import (INDICES, NSETS, SETS, InvalidIndex, canonicalize,
                            complement_negate, gt_precedes, jacobi_sign,
                            jacobi_sign_formula, set_id)


def test_canonicalize_examples():
    assert canonicalize((-4,)) == ((-4,), 1)
    assert canonicalize((-3, -4)) == ((-4, -3), -1)
    assert canonicalize((2, 2, 3))[1] == 0


def test_canonicalize_idempotent_on_sorted():
    for X in SETS:
        assert canonicalize(X) == (X, 1)


def test_invalid_index():
    with pytest.raises(InvalidIndex):
        canonicalize((0, 1))


def test_set_count_and_ids():
    assert NSETS == 254
    assert all(set_id(X) == n for n, X in enumerate(SETS))


def test_complement_negate():
    assert complement_negate((-4,)) == (-4, -3, -2, -1, 1, 2, 3)
    # -{-4,-3} = {3,4}; its complement keeps everything up to 2
    assert complement_negate((-4, -3)) == (-4, -3, -2, -1, 1, 2)
    for X in SETS:
        Y = complement_negate(X)
        assert len(Y) == 8 - len(X)
        assert complement_negate(Y) == X


def test_jacobi_sign_formula_values():
    assert jacobi_sign_formula((-4,)) == 1
    assert jacobi_sign_formula((-4, -3)) == 1
    assert jacobi_sign_formula((1, 2, 3)) == -1


def test_jacobi_sign_examples():
    assert jacobi_sign((-4,)) == 1
    assert jacobi_sign((-4, -3)) == 1


def test_jacobi_sign_consistent_under_involution():
    # a_X = s a_Y and a_Y = s' a_X force s s' = 1 unless a_X vanishes
    for X in SETS:
        Y = complement_negate(X)
        if X != Y:
            assert jacobi_sign(X) * jacobi_sign(Y) == 1


def test_gt_order():
    assert gt_precedes(-4, 2)
    assert not gt_precedes(1, -4)
    for i, j in product(INDICES, repeat=2):
        assert not (gt_precedes(i, j) and gt_precedes(j, i))
        if i != j:
            assert gt_precedes(i, j) or gt_precedes(j, i)
        else:
            assert not gt_precedes(i, j)
