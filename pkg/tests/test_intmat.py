import random

import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from torusfill.ext import intmat


@pytest.fixture
def rng ():
    return random.Random(20240611)


def _invariants (diagonal):
    return sorted(abs(x) for x in diagonal if x)


@pytest.mark.parametrize('rows, expected', [
    ([[2, 0], [0, 2]], [2, 2]),
    ([[-2, -3], [0, -2]], [1, 4]),
    ([[0, 5], [0, 0]], [5, 0]),
    ([[-2, -1], [0, -2]], [1, 4]),
    ([[-2, -2], [0, -2]], [2, 2]),
    ([[0, 0], [0, 0]], [0, 0]),
    ([[0, 0, 3], [0, 0, -6]], [3, 0]),
    ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], [2, 6, 12]),
])
def test_snf_known (rows, expected):
    diagonal, left, right = intmat.smith_normal_form(rows)
    assert diagonal == expected


def test_snf_transforms (rng):
    for i in range(50):
        n = rng.randint(1, 4)
        m = rng.randint(1, 4)
        rows = [[rng.randint(-9, 9) for j in range(m)] for k in range(n)]
        diagonal, left, right = intmat.smith_normal_form(rows)
        product = intmat.mat_mul(intmat.mat_mul(left, rows), right)
        for r in range(n):
            for c in range(m):
                assert product[r][c] == (diagonal[r] if r == c else 0)
        assert abs(intmat.det(left)) == 1
        assert abs(intmat.det(right)) == 1
        nonzero = [x for x in diagonal if x]
        assert all(x >= 0 for x in diagonal)
        assert diagonal == nonzero + [0] * diagonal.count(0)
        for a, b in zip(nonzero, nonzero[1:]):
            assert b % a == 0


def test_snf_against_sympy (rng):
    for i in range(50):
        n = rng.randint(1, 4)
        rows = [[rng.randint(-20, 20) for j in range(n)] for k in range(n)]
        diagonal, left, right = intmat.smith_normal_form(rows)
        theirs = sympy_snf(Matrix(rows), domain = ZZ)
        theirs = [theirs[k, k] for k in range(n)]
        assert _invariants(diagonal) == _invariants(theirs)
        assert diagonal.count(0) == [int(x) for x in theirs].count(0)


def test_det ():
    assert intmat.det([]) == 1
    assert intmat.det([[0, 2], [2, 0]]) == -4
    assert intmat.det([[1, 1, 1], [1, 0, 1], [1, 1, 0]]) == 1


@pytest.mark.parametrize('form, expected', [
    ([[-4, 0], [0, -4]], (0, 2, 0)),
    ([[0, 2], [2, 0]], (1, 1, 0)),
    ([[1, 2], [2, 1]], (1, 1, 0)),
    ([[2, 1], [1, 2]], (2, 0, 0)),
    ([[1, 1], [1, 1]], (1, 0, 1)),
    ([[0]], (0, 0, 1)),
    ([[-12]], (0, 1, 0)),
])
def test_inertia (form, expected):
    assert intmat.inertia(form) == expected


def test_inertia_not_symmetric ():
    with pytest.raises(ValueError):
        intmat.inertia([[1, 2], [0, 1]])


def test_mat_mul_shapes ():
    assert intmat.mat_mul([[1, 2]], [[3], [4]]) == [[11]]
    with pytest.raises(ValueError):
        intmat.mat_mul([[1, 2]], [[1, 2]])
