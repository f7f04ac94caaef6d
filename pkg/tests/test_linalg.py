from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from parahopf.linalg import Echelon, nullspace, rank, vadd

entry = st.sampled_from([0, 0, 0, 1, -1, 2, Fraction(1, 3)])


def matrices(rows, cols):
    return st.lists(st.lists(entry, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def columns_of(M):
    return [{i: Fraction(M[i][j]) for i in range(len(M)) if M[i][j]} for j in range(len(M[0]))]


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 6).flatmap(lambda r: st.integers(1, 6).flatmap(lambda c: matrices(r, c))))
def test_rank_and_nullspace_match_sympy(M):
    S = sympy.Matrix([[sympy.Rational(x) for x in row] for row in M])
    cols = columns_of(M)
    assert rank(cols) == S.rank()
    kern = nullspace(cols)
    assert len(kern) == len(S.nullspace())
    for v in kern:
        res = {}
        for j, c in v.items():
            res = vadd(res, cols[j], c)
        assert res == {}


@settings(max_examples=100, deadline=None)
@given(matrices(4, 5), st.permutations(range(4)))
def test_reduce_is_order_independent(M, perm):
    rows = [{j: Fraction(x) for j, x in enumerate(r) if x} for r in M]
    a, b = Echelon(), Echelon()
    for r in rows:
        a.add(r)
    for i in perm:
        b.add(rows[i])
    probe = {0: Fraction(1), 2: Fraction(3), 4: Fraction(-1)}
    assert a.reduce(probe) == b.reduce(probe)
    assert a.rank == b.rank


def test_vadd_drops_zeros():
    assert vadd({1: 2}, {1: 1}, -2) == {}
