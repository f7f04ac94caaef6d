"""HH and HC.

The shadow oracle is a plain Hopf-cyclic module on H^{⊗n} (no base ring, no
quotient) written from scratch here; at R = k the sandwich module must match
it operator for operator.
"""

import itertools

import pytest
import sympy

from parahopf.cocyclic import CocyclicModule, verify_cocyclic
from parahopf.cohomology import (
    CohomologyError,
    compute_cohomology,
    cyclic_cohomology,
    haar_check,
    haar_homotopy,
    hochschild,
    ker_alpha_minus_beta,
)
from parahopf.instances import build_sandwich, ground_field_algebra, group_algebra, sweedler
from parahopf.scalars import QQ


class Shadow:
    def __init__(self, Hd):
        self.Hd = Hd
        self.A = Hd.algebra

    def basis(self, n):
        return list(itertools.product(self.A.basis, repeat=n))

    def coface(self, n, i, t):
        unit = next(iter(self.A.unit))
        if n == 0:
            return {(unit,): 1}
        if i == 0:
            return {(unit,) + t: 1}
        if i == n + 1:
            return {t + (unit,): 1}
        return {t[:i - 1] + ab + t[i:]: c for ab, c in self.Hd.cop(t[i - 1]).items()}

    def codegeneracy(self, n, i, t):
        e = self.Hd.counit[t[i]]
        return {t[:i] + t[i + 1:]: e} if e else {}

    def tau(self, n, t):
        if n == 0:
            return {t: 1}
        out = {}
        for x, c in self.Hd.twisted_antipode(t[0]).items():
            for legs, d in self.Hd.iterated(x, n - 1).items():
                prod = {(): c * d}
                for a, h in zip(legs, t[1:] + (None,)):
                    sl = {a: 1} if h is None else self.A.mul_basis(a, h)
                    prod = {k + (z,): v * w for k, v in prod.items() for z, w in sl.items()}
                for k, v in prod.items():
                    out[k] = out.get(k, 0) + v
        return {k: v for k, v in out.items() if v}

    def matrix(self, src, tgt, fn):
        rows = {k: i for i, k in enumerate(self.basis(tgt) if tgt else [()])}
        cols = self.basis(src) if src else [()]
        M = sympy.zeros(len(rows), len(cols))
        for j, t in enumerate(cols):
            for k, c in fn(t).items():
                M[rows[k], j] += sympy.Rational(str(c))
        return M

    def b(self, n):
        M = None
        for i in range(n + 2):
            D = self.matrix(n, n + 1, lambda t: self.coface(n, i, t))
            M = D * (-1) ** i if M is None else M + D * (-1) ** i
        return M

    def T(self, n):
        return self.matrix(n, n, lambda t: self.tau(n, t))

    def hc(self, n_max):
        K = []
        for n in range(n_max + 2):
            lam = sympy.eye(len(self.basis(n)) if n else 1) - (-1) ** n * self.T(n)
            K.append(lam.nullspace())
        ranks = []
        for n in range(n_max + 1):
            imgs = [self.b(n) * v for v in K[n]]
            ranks.append(sympy.Matrix.hstack(*imgs).rank() if imgs else 0)
        return [len(K[n]) - ranks[n] - (ranks[n - 1] if n else 0) for n in range(n_max + 1)]


def sandwich_matrix(mod, op, shadow):
    """Matrix of a sandwich operator in the shadow's coordinates."""
    src, tgt = op.source.level, op.target.level

    def strip(key):
        return () if isinstance(key, str) else tuple(x.hopf for x in key)

    def fn(t):
        key = "1" if not t else tuple(s for s in mod.tower[src].basis if strip(s) == t)[0]
        return {strip(k): c for k, c in op.apply_key(key).items()}

    return shadow.matrix(src, tgt, fn)


HOPFS = {
    "Z/2 sign": lambda: group_algebra(2, QQ, -1),
    "Z/3 trivial": lambda: group_algebra(3, QQ),
    "Sweedler": lambda: sweedler(QQ, -1),
}


@pytest.mark.parametrize("label", sorted(HOPFS))
def test_sandwich_at_ground_field_matches_shadow_module(label):
    Hd = HOPFS[label]()
    inst = build_sandwich(ground_field_algebra(QQ), Hd)
    mod = CocyclicModule(inst)
    shadow = Shadow(Hd)
    top = 2 if label == "Sweedler" else 3
    for n in range(top + 1):
        for i in range(n + 2):
            op = mod.coface(n, i)
            assert sandwich_matrix(mod, op, shadow) == shadow.matrix(n, n + 1, lambda t: shadow.coface(n, i, t))
        for i in range(n):
            op = mod.codegeneracy(n, i)
            assert sandwich_matrix(mod, op, shadow) == shadow.matrix(n, n - 1, lambda t: shadow.codegeneracy(n, i, t))
        if n:
            assert sandwich_matrix(mod, mod.tau(n), shadow) == shadow.T(n)
    assert cyclic_cohomology(inst, top, module=mod).hc == shadow.hc(top)


def test_trivial_sandwich_by_hand(load):
    # every level is k·(1⊗...⊗1), τ = id, b = Σ(-1)^i id: λ-complex is k in even degrees, b = 0 there
    cert, rep = compute_cohomology(load("sandwich_trivial"), 2)
    assert cert.passed
    assert rep.level_dims == [1, 1, 1]
    assert rep.hc == [1, 0, 1]
    assert rep.hh == [1, 0, 0]


@pytest.mark.parametrize("name, hh, hc", [
    ("pair_groupoid", [2, 0, 0, 0], [2, 0, 2, 0]),
    ("z3_groupoid", [1, 0, 0, 0], [1, 0, 1, 0]),
    ("sandwich_z2", [1, 0, 0, 0], [1, 0, 1, 0]),
    ("double_crossed", [1, 0, 0, 0], [1, 0, 1, 0]),
])
def test_tables(load, name, hh, hc):
    cert, rep = compute_cohomology(load(name), 3)
    assert cert.passed
    assert rep.hh == hh and rep.hc == hc
    assert rep.hh[0] == rep.ker_alpha_minus_beta


@pytest.mark.parametrize("name", ["pair_groupoid", "z3_groupoid", "sandwich_z2", "double_crossed", "quantum_torus_n3"])
def test_hh0_is_kernel_of_alpha_minus_beta(load, name):
    inst = load(name)
    rep = hochschild(inst, 1)
    assert rep.hh[0] == len(ker_alpha_minus_beta(inst))
    assert rep.checks[0].passed


def test_uncertified_module_gives_no_table(load):
    cert, rep = compute_cohomology(load("z3_broken_antipode"), 2)
    assert not cert.passed and rep is None


def test_infinite_instance_has_no_table(load):
    with pytest.raises(CohomologyError):
        hochschild(load("quantum_torus"), 2)


def test_z3_haar_homotopy(load):
    inst = load("z3_groupoid")
    rep, concl = haar_homotopy(inst, n_max=3)
    assert rep.passed
    assert concl["HH"] == {"0": 1, "1": 0, "2": 0, "3": 0}
    assert concl["HC"] == {"0": 1, "1": 0, "2": 1, "3": 0}


def test_torus_haar_homotopy_symbolic(load):
    rep, concl = haar_homotopy(load("quantum_torus"), n_max=2, window=2)
    assert rep.status == "pass-on-window"
    assert concl["kind"] == "symbolic"
    assert concl["HC"] == {"2i": "≅ R", "2i+1": "0"}


def test_zero_functional_is_not_a_haar_system(load):
    inst = load("z3_groupoid")
    rep = haar_check(inst, lambda h: {})
    assert rep.find("normal").status == "fail"
    rep, concl = haar_homotopy(inst, lambda h: {}, n_max=2)
    assert not rep.passed and concl is None
    assert rep.find("eta-b-plus-b-eta").status == "fail"


def test_haar_certifies_the_computed_table(load):
    inst = load("z3_groupoid")
    _, concl = haar_homotopy(inst, n_max=3)
    cert, table = compute_cohomology(inst, 3)
    assert [concl["HC"][str(n)] for n in range(4)] == table.hc
    assert verify_cocyclic(inst, 3).passed
