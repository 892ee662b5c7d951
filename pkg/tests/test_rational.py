import math
from fractions import Fraction as F
from itertools import combinations

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from polytrop.rational import (
    ValueGroup,
    column_echelon,
    det,
    integer_kernel,
    inverse,
    matmul,
    nullspace,
    primitive,
    rank,
    rat,
    rational_gcd,
    solve,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def test_rat_parses_strings_and_rejects_floats():
    assert rat("3/6") == F(1, 2)
    assert rat(2) == F(2)
    with pytest.raises(TypeError):
        rat(0.5)
    with pytest.raises(TypeError):
        rat(True)


def test_value_group_membership():
    half = ValueGroup.discrete("1/2")
    assert F(3, 2) in half
    assert F(1, 3) not in half
    assert F(1, 3) in ValueGroup.rationals()
    assert ValueGroup.from_json(half.to_json()) == half


@given(st.integers(1, 4).flatmap(lambda n: matrices(n, n)))
def test_det_and_inverse_match_sympy(A):
    M = sympy.Matrix(A)
    assert det(A) == F(str(M.det()))
    if det(A) != 0:
        inv = inverse(A)
        n = len(A)
        assert matmul(A, inv) == tuple(tuple(F(int(i == j)) for j in range(n)) for i in range(n))


@given(st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(lambda c: matrices(r, c))))
def test_rank_and_nullspace_match_sympy(A):
    M = sympy.Matrix(A)
    assert rank(A) == M.rank()
    K = nullspace(A, len(A[0]))
    assert len(K) == len(A[0]) - M.rank()
    for v in K:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A)


@given(matrices(2, 3), st.lists(small, min_size=2, max_size=2))
def test_solve_is_consistent(A, b):
    x = solve(A, b)
    consistent = sympy.Matrix(A).rank() == sympy.Matrix([list(r) + [bi] for r, bi in zip(A, b)]).rank()
    assert (x is not None) == consistent
    if x is not None:
        assert all(sum(a * xi for a, xi in zip(row, x)) == bi for row, bi in zip(A, b))


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=4).filter(any))
def test_primitive_is_positive_rescaling(v):
    p = primitive(v)
    assert math.gcd(*p) == 1
    ratios = {F(a, b) for a, b in zip(v, p) if b}
    assert len(ratios) == 1 and ratios.pop() > 0


@given(st.integers(1, 3).flatmap(lambda r: st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=r, max_size=r)))
def test_integer_kernel_is_saturated(A):
    K = integer_kernel(A, 4)
    assert len(K) == 4 - sympy.Matrix(A).rank()
    for v in K:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A)
    if K:
        # saturated: the gcd of maximal minors is 1
        M = sympy.Matrix(K)
        k = len(K)
        minors = [M[:, list(c)].det() for c in combinations(range(4), k)]
        assert sympy.gcd_list([int(m) for m in minors]) == 1


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=1, max_size=3))
def test_column_echelon_relation(A):
    H, U, r = column_echelon(A)
    assert matmul(A, U) == tuple(tuple(F(x) for x in row) for row in H)
    assert abs(sympy.Matrix(U).det()) == 1
    assert r == sympy.Matrix(A).rank()


def test_rational_gcd():
    assert rational_gcd([F(1, 2), F(3, 4)]) == F(1, 4)
    assert rational_gcd([F(2), F(4)]) == F(2)
