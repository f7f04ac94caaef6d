"""Algebra products checked against oracles that never touch the product code."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parahopf.algebra import (
    AlgebraError,
    BasedAlgebra,
    Element,
    TorusMonomial,
    check_associativity_unit,
    parse_torus_monomial,
    table_algebra,
)
from parahopf.instances import build_quantum_torus, functions_algebra, matrix_units_algebra
from parahopf.linalg import vadd, vscale
from parahopf.scalars import QQ, CyclotomicField

TM = TorusMonomial


def word(n, m):
    """Letter list for U^n V^m; each letter is (symbol, ±1)."""
    s = 1 if n >= 0 else -1
    t = 1 if m >= 0 else -1
    return [("U", s)] * abs(n) + [("V", t)] * abs(m)


def rewrite(letters):
    """Bubble every U letter to the left using V^s U^t = q^{-st} U^t V^s.

    Returns (U exponent, V exponent, q exponent).
    """
    letters = list(letters)
    qexp = 0
    changed = True
    while changed:
        changed = False
        for i in range(len(letters) - 1):
            (a, s), (b, t) = letters[i], letters[i + 1]
            if a == "V" and b == "U":
                letters[i], letters[i + 1] = letters[i + 1], letters[i]
                qexp -= s * t
                changed = True
    n = sum(s for a, s in letters if a == "U")
    m = sum(s for a, s in letters if a == "V")
    return n, m, qexp


exps = st.integers(-3, 3)


@settings(max_examples=200, deadline=None)
@given(exps, exps, exps, exps)
def test_torus_product_matches_word_rewriting(a, b, c, d):
    inst = build_quantum_torus("formal-q")
    n, m, e = rewrite(word(a, b) + word(c, d))
    assert inst.H.mul_basis(TM(a, b), TM(c, d)) == {TM(n, m): inst.field.qpow(e)}


def test_torus_defining_relation():
    inst = build_quantum_torus("formal-q")
    H, q = inst.H, inst.field.qpow(1)
    UV = H.mul_basis(TM(1, 0), TM(0, 1))
    VU = H.mul_basis(TM(0, 1), TM(1, 0))
    assert UV == {TM(1, 1): inst.field.one}
    assert {k: q * c for k, c in VU.items()} == UV


def clock_shift(field, N):
    """U = diag(1, q, ..., q^{N-1}), V = cyclic shift; UV = qVU."""
    zero, one = field.zero, field.one
    U = [[field.qpow(i) if i == j else zero for j in range(N)] for i in range(N)]
    V = [[one if i == (j + 1) % N else zero for j in range(N)] for i in range(N)]
    return U, V


def mm(A, B):
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            s = A[i][0] * B[0][j]
            for k in range(1, n):
                s = s + A[i][k] * B[k][j]
            row.append(s)
        out.append(row)
    return out


def mpow(A, e, N):
    e %= N
    n = len(A)
    R = [[A[0][0] * 0 + (1 if i == j else 0) for j in range(n)] for i in range(n)]
    for _ in range(e):
        R = mm(R, A)
    return R


def test_finite_torus_matches_clock_and_shift_matrices():
    N = 3
    F = CyclotomicField(N)
    inst = build_quantum_torus("cyclotomic", N)
    U, V = clock_shift(F, N)
    assert mm(U, V) == [[F.qpow(1) * x for x in row] for row in mm(V, U)]

    def rho(x):
        return mm(mpow(U, x.n, N), mpow(V, x.m, N))

    for x, y in itertools.product(inst.H.basis, repeat=2):
        ((z, c),) = inst.H.mul_basis(x, y).items()
        assert mm(rho(x), rho(y)) == [[c * v for v in row] for row in rho(z)]


def _elem(F, terms):
    out = {}
    for a, b, c in terms:
        out = vadd(out, {TM(a, b): F.coerce(c)})
    return out


terms = st.lists(st.tuples(exps, exps, st.integers(-2, 2)), max_size=3)


@settings(max_examples=60, deadline=None)
@given(terms, terms, terms, st.integers(-3, 3))
def test_torus_bilinearity(xs, ys, zs, k):
    inst = build_quantum_torus("formal-q")
    H, F = inst.H, inst.field
    x, y, z = (_elem(F, t) for t in (xs, ys, zs))
    s = F.qpow(k)
    assert H.mul(vscale(x, s), y) == vscale(H.mul(x, y), s) == H.mul(x, vscale(y, s))
    assert H.mul(z, vadd(x, y)) == vadd(H.mul(z, x), H.mul(z, y))
    assert H.mul(vadd(x, y), z) == vadd(H.mul(x, z), H.mul(y, z))


def dense(A):
    """Structure constants as a dense 3-index array."""
    n = len(A.basis)
    idx = {b: i for i, b in enumerate(A.basis)}
    out = [[[0] * n for _ in range(n)] for _ in range(n)]
    for x, y in itertools.product(A.basis, repeat=2):
        for z, c in A.mul_basis(x, y).items():
            out[idx[x]][idx[y]][idx[z]] = c
    return out


def test_matrix_units_dense_oracle():
    A = matrix_units_algebra(2)
    T = dense(A)
    n = len(A.basis)
    # associativity on the dense array: sum_m T[i][j][m] T[m][k][l] = sum_m T[j][k][m] T[i][m][l]
    for i, j, k, l in itertools.product(range(n), repeat=4):
        a = sum(T[i][j][m] * T[m][k][l] for m in range(n))
        b = sum(T[j][k][m] * T[i][m][l] for m in range(n))
        assert a == b
    assert check_associativity_unit(A).passed
    assert check_associativity_unit(matrix_units_algebra(3, upper=True)).passed
    assert check_associativity_unit(functions_algebra(3)).passed


def test_corrupted_table_is_rejected():
    one = QQ.one
    table = {("1", "1"): {"1": one}, ("1", "x"): {"x": one}, ("x", "1"): {"x": one},
             ("x", "x"): {"x": one}, ("x", "y"): {"y": one}, ("y", "x"): {"x": one},
             ("1", "y"): {"y": one}, ("y", "1"): {"y": one}, ("y", "y"): {"1": one}}
    A = table_algebra("bad", QQ, ["1", "x", "y"], {"1": one}, table)
    rep = check_associativity_unit(A)
    assert not rep.passed
    assert rep.witness["law"] == "associativity"


def test_elements_and_parsing():
    inst = build_quantum_torus("formal-q")
    H = inst.H
    u = H.element({TM(1, 0): 1})
    v = H.element({TM(0, 1): 1})
    assert (u * v) == H.element({TM(1, 1): 1})
    assert u * v - inst.field.qpow(1) * (v * u) == H.element({})
    assert parse_torus_monomial("U^-2V") == TM(-2, 1)
    assert parse_torus_monomial("1") == TM(0, 0)
    assert str(TM(2, -1)) == "U^2V^-1"
    with pytest.raises(AlgebraError):
        parse_torus_monomial("VU")
    with pytest.raises(AlgebraError):
        u * functions_algebra(2).one()


def test_infinite_algebra_needs_window():
    with pytest.raises(AlgebraError):
        BasedAlgebra("x", QQ, lambda a, b: {}, {"1": 1})
    assert isinstance(functions_algebra(2).one(), Element)
