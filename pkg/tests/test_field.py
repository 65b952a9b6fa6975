import itertools
import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from vers.errors import DivisionByZero, DuplicatePoint
from vers.field import (
    FieldMatrix,
    Inconsistent,
    PrimeField,
    Underdetermined,
    Unique,
    left_null_space,
    null_space,
    rank,
    rref,
    solve,
    vandermonde,
)

F97 = PrimeField(97)
elems = st.integers(min_value=0, max_value=96)


def test_default_field_is_mersenne():
    assert PrimeField().p == 2**31 - 1


def test_composite_modulus_rejected():
    with pytest.raises(ValueError):
        PrimeField(91)


@given(elems, elems, elems)
def test_field_axioms(a, b, c):
    x, y, z = F97(a), F97(b), F97(c)
    assert x + y == y + x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == F97(0)
    if a:
        assert x * x.inv() == F97(1)
        assert (y / x) * x == y


def test_inverse_of_zero():
    with pytest.raises(DivisionByZero):
        F97.inv(0)
    with pytest.raises(ZeroDivisionError):
        F97(3) / F97(0)


def test_frac_maps_rationals():
    f = PrimeField(10007)
    assert f.frac(1, 4) * 4 % 10007 == 1
    assert f.frac(-5, 2) == (-5 * pow(2, -1, 10007)) % 10007
    assert f.signed(10006) == -1


def test_fermat():
    for a in range(1, 97):
        assert F97.pow(a, 96) == 1


def _random_matrix(rng, r, c, p=97, density=1.0):
    return FieldMatrix.from_rows(
        PrimeField(p), [[rng.randrange(p) if rng.random() < density else 0 for _ in range(c)] for _ in range(r)]
    )


def _brute_rank(m: FieldMatrix) -> int:
    """Rank by brute force: largest k with a nonzero k x k minor mod p."""
    p = m.field.p
    rows = m.to_rows()
    for k in range(min(m.rows, m.cols), 0, -1):
        for ri in itertools.combinations(range(m.rows), k):
            for ci in itertools.combinations(range(m.cols), k):
                if sympy.Matrix([[rows[i][j] for j in ci] for i in ri]).det() % p:
                    return k
    return 0


def test_rank_against_minors():
    rng = random.Random(5)
    for _ in range(40):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        m = _random_matrix(rng, r, c, density=rng.choice([0.3, 0.6, 1.0]))
        assert rank(m) == _brute_rank(m)


def test_null_space_properties():
    rng = random.Random(6)
    for _ in range(50):
        r, c = rng.randint(1, 6), rng.randint(1, 7)
        m = _random_matrix(rng, r, c, density=0.5)
        ns = null_space(m)
        assert ns.rows == c - rank(m)
        assert (m @ ns.transpose()).is_zero()
        assert rank(ns) == ns.rows
        lns = left_null_space(m)
        assert lns.rows == r - rank(m)
        assert (lns @ m).is_zero()


def test_rref_is_reduced():
    rng = random.Random(7)
    m = _random_matrix(rng, 5, 6, density=0.5)
    rows, pivots = rref(m)
    for i, j in enumerate(pivots):
        assert rows[i][j] == 1
        assert all(rows[k][j] == 0 for k in range(len(rows)) if k != i)
    assert pivots == sorted(pivots)


def test_solve_variants():
    f = F97
    a = FieldMatrix.from_rows(f, [[1, 2], [3, 4]])
    sol = solve(a, [5, 6])
    assert isinstance(sol, Unique)
    assert a.matvec(sol.x) == [5, 6]

    b = FieldMatrix.from_rows(f, [[1, 2, 3]])
    sol = solve(b, [4])
    assert isinstance(sol, Underdetermined) and sol.dimension == 2
    assert b.matvec(sol.particular) == [4]
    for i in range(sol.dimension):
        assert b.matvec(sol.null_basis.row(i)) == [0]

    c = FieldMatrix.from_rows(f, [[1, 1], [1, 1]])
    assert isinstance(solve(c, [1, 2]), Inconsistent)


def test_vandermonde_layout_and_duplicates():
    v = vandermonde(F97, [2, 3], 3)
    assert v.to_rows() == [[8, 4, 2, 1], [27, 9, 3, 1]]
    with pytest.raises(DuplicatePoint):
        vandermonde(F97, [2, 2], 1)


def test_square_vandermonde_invertible():
    rng = random.Random(8)
    for _ in range(20):
        pts = rng.sample(range(97), 5)
        assert rank(vandermonde(F97, pts, 4)) == 5


@settings(max_examples=30)
@given(st.lists(st.lists(elems, min_size=3, max_size=3), min_size=1, max_size=4))
def test_matrix_json_round_trip(rows):
    m = FieldMatrix.from_rows(F97, rows)
    assert FieldMatrix.from_json(m.to_json()) == m
    assert m.transpose().transpose() == m
