import pytest

from parahopf.algebra import TorusMonomial as TM
from parahopf.cocyclic import CocyclicModule, codegeneracy_free, coface_free, engine_agreement, verify_cocyclic
from parahopf.reports import Checker
from parahopf.rtensor import LinearOp, ops_agree

FINITE = ["pair_groupoid", "z3_groupoid", "sandwich_z2", "sandwich_trivial", "double_crossed", "quantum_torus_n3"]


def by_name(inst):
    return {str(g): g for g in inst.H.basis}


def test_groupoid_displayed_tau2_values(load):
    # τ_2(1⊗g) = g⊗1 and τ_2(g⊗1) = g^{-1}⊗g^{-1}, with 1 = g0
    inst = load("z3_groupoid")
    g = by_name(inst)
    one = inst.field.one
    tau = CocyclicModule(inst).tau(2)
    assert tau.apply({(g["g0"], g["g1"]): one}) == {(g["g1"], g["g0"]): one}
    assert tau.apply({(g["g1"], g["g0"]): one}) == {(g["g2"], g["g2"]): one}
    assert tau.apply({(g["g2"], g["g2"]): one}) == {(g["g0"], g["g1"]): one}


def test_pair_groupoid_tau2_on_one_tensor_g(load):
    inst = load("pair_groupoid")
    mod = CocyclicModule(inst)
    V2 = mod.tower[2]
    one = inst.field.one
    tau = mod.tau(2)
    for g in inst.H.basis:
        start = V2.project_slots([inst.H.unit, {g: one}])
        step = tau.apply(start)
        assert step == V2.project_slots([{g: one}, inst.H.unit])
        ginv = inst.antipode_map(g)
        assert tau.apply(step) == V2.project_slots([ginv, ginv])
        assert tau.apply(tau.apply(step)) == start


def test_torus_displayed_tau2_values(load):
    inst = load("quantum_torus")
    mod = CocyclicModule(inst)
    V2 = mod.tower[2]
    one = inst.field.one
    tau = mod.tau(2)

    def cls(a, b):
        return V2.project_slots([{a: one}, {b: one}])

    U, V, Vi, I = TM(1, 0), TM(0, 1), TM(0, -1), TM(0, 0)
    assert tau.apply(cls(I, U)) == cls(U, I) == cls(I, U)
    assert tau.apply(cls(I, V)) == cls(V, I)
    assert tau.apply(cls(V, I)) == cls(Vi, Vi)
    assert tau.apply(cls(Vi, Vi)) == cls(I, V)


def test_level_zero_cofaces(load):
    inst = load("double_crossed")
    mod = CocyclicModule(inst)
    for r in inst.R.basis:
        assert mod.coface(0, 0).apply_key(r) == mod.tower[1].project(coface_free(inst, 0, 0)(r))
        assert coface_free(inst, 0, 0)(r) == {(h,): c for h, c in inst.beta_map(r).items()}
        assert coface_free(inst, 0, 1)(r) == {(h,): c for h, c in inst.alpha_map(r).items()}


def literal_breaks(inst):
    """Does δ_1δ_0 = δ_0δ_0 fail on level 0 when δ_0 = α, δ_1 = β?"""
    mod = CocyclicModule(inst)
    V1 = mod.tower[1]
    lit0 = coface_free(inst, 0, 0, literal=True)
    for r in inst.R.basis:
        v = V1.project(lit0(r))
        if mod.coface(1, 1).apply(v) != mod.coface(1, 0).apply(v):
            return True
    return False


def test_literal_level_zero_convention_needs_alpha_equal_beta(load):
    assert literal_breaks(load("double_crossed"))
    assert not literal_breaks(load("pair_groupoid"))
    assert not literal_breaks(load("sandwich_z2"))


@pytest.mark.parametrize("name", FINITE)
def test_cocyclic_suite_passes(load, name):
    n = 2 if name == "quantum_torus_n3" else 3
    rep = verify_cocyclic(load(name), n)
    assert rep.passed, rep.first_failure()
    assert [s.name for s in rep.subchecks] == ["well-definedness", "cosimplicial", "cyclic"]


def test_formal_torus_passes_on_window(load):
    rep = verify_cocyclic(load("quantum_torus"), 3, window=2)
    assert rep.status == "pass-on-window"


def test_broken_antipode_fails_in_cyclic_layer(load):
    rep = verify_cocyclic(load("z3_broken_antipode"), 3)
    assert not rep.passed
    assert rep.find("well-definedness").passed
    assert rep.find("cosimplicial").passed
    f = rep.first_failure()
    assert f.name == "tau-delta"
    assert f.witness == {"identity": "τ@2∘δ1@1 = δ0@1∘τ@1", "key": "g1", "left": "g2 ⊗ g1",
                         "right": "g0 ⊗ g1", "level": 1, "i": 1}


@pytest.mark.parametrize("name", ["pair_groupoid", "double_crossed", "sandwich_z2"])
def test_b_squared_and_tau_power(load, name):
    mod = CocyclicModule(load(name))
    for n in range(3):
        bb = mod.b(n + 1) @ mod.b(n)
        assert all(not bb.apply_key(k) for k in mod.tower[n].basis)
    for n in range(1, 4):
        tn = mod.tau(n).power(n + 1)
        assert all(tn.apply_key(k) == {k: 1} for k in mod.tower[n].basis)


def test_codegeneracy_absorption_sides_agree(load):
    inst = load("double_crossed")
    mod = CocyclicModule(inst)
    chk = Checker("sides")
    for n, i in ((3, 1), (4, 1), (4, 2)):
        left = LinearOp.from_free("l", mod.tower[n], mod.tower[n - 1], codegeneracy_free(inst, n, i, "left"))
        right = LinearOp.from_free("r", mod.tower[n], mod.tower[n - 1], codegeneracy_free(inst, n, i, "right"))
        assert ops_agree(chk, left, right, mod.tower[n].basis)
    with pytest.raises(ValueError):
        codegeneracy_free(inst, 3, 0, "left")


def test_engine_agreement_low_levels(load):
    rep = engine_agreement(load("quantum_torus_n3"), 2)
    assert rep.passed, rep.first_failure()
