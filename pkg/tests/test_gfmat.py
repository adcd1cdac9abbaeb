"""Row spaces over GF(p): RREF, rank, membership certificates."""

import random

import numpy as np
import pytest

from pivar.gfmat import RowSpace, matrix_power_is_zero, rank_mod_p


def test_rank_small():
    assert rank_mod_p([[1, 1], [1, 1]], 2) == 1
    assert rank_mod_p([[1, 0], [0, 1]], 2) == 2
    assert rank_mod_p([[2, 4], [1, 2]], 3) == 1  # second row is 2*first mod 3


def test_insert_and_contains():
    space = RowSpace(5, 3)
    assert space.insert([1, 2, 3])
    assert not space.insert([2, 4, 6])      # dependent
    assert space.insert([0, 1, 1])
    assert space.dim == 2
    assert space.contains([1, 3, 4])        # sum of the two
    assert not space.contains([0, 0, 1])


@pytest.mark.parametrize("p", [2, 3, 5])
def test_express_certificates(p):
    rng = random.Random(p)
    n = 6
    space = RowSpace(p, n, track=True)
    raws = []
    for _ in range(10):
        row = [rng.randrange(p) for _ in range(n)]
        raws.append(row)
        space.insert(row, raw_id=len(raws) - 1)
    # any combination must be expressible, and the expression must re-sum
    for _ in range(20):
        coeffs = [rng.randrange(p) for _ in raws]
        vec = np.zeros(n, dtype=np.int64)
        for c, row in zip(coeffs, raws):
            vec = (vec + c * np.array(row)) % p
        combo = space.express(vec)
        assert combo is not None
        back = np.zeros(n, dtype=np.int64)
        for rid, c in combo.items():
            back = (back + c * np.array(raws[rid])) % p
        assert (back == vec).all()


def test_express_outside():
    space = RowSpace(2, 3, track=True)
    space.insert([1, 1, 0], raw_id=0)
    assert space.express([0, 0, 1]) is None


def test_sparse_mode():
    # column count above the dense cap switches to dict rows
    space = RowSpace(2, 20001, track=True)
    space.insert({0: 1, 20000: 1}, raw_id=0)
    space.insert({0: 1}, raw_id=1)
    assert space.dim == 2
    combo = space.express({20000: 1})
    assert combo == {0: 1, 1: 1}


def test_matrix_power_is_zero():
    nil = np.array([[0, 1], [0, 0]])
    assert matrix_power_is_zero(nil, 2, 2)
    idem = np.array([[1, 0], [0, 0]])
    assert not matrix_power_is_zero(idem, 2, 2)
