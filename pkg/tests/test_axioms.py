import pytest

from parahopf.algebra import TorusMonomial as TM
from parahopf.axioms import (
    check_ba1,
    check_counit,
    check_cu3,
    check_para_antipode,
    hopf_roundtrip,
    ph_verdict,
    tau2_cubed_report,
    verify_all,
)
from parahopf.instances import build_sandwich, group_algebra, hopf_instance, matrix_units_algebra, sweedler
from parahopf.rtensor import NORMAL_FORM, TensorTower
from parahopf.scalars import QQ, CyclotomicField

POSITIVE = ["pair_groupoid", "z3_groupoid", "quantum_torus_n3", "sandwich_z2", "sandwich_trivial", "double_crossed"]


@pytest.mark.parametrize("name", POSITIVE)
def test_positive_instances_pass_everything(load, name):
    rep = verify_all(load(name))
    assert rep.passed, rep.first_failure()
    assert ph_verdict(rep)
    for sub in ("BA1", "BA2", "BA3", "cu3", "PH1", "PH2", "PH3-involution", "PH3-anticoalgebra",
                "PH3-cyclic-form", "PH3-formulations-agree", "anticoalgebra-products"):
        assert rep.find(sub) is not None, sub
        assert rep.find(sub).passed, sub


def test_formal_torus_passes_on_window(load):
    rep = verify_all(load("quantum_torus"))
    assert rep.passed
    assert rep.status == "pass-on-window"
    assert "U^nV^m" in rep.find("PH2").window


def test_broken_antipode_fails_ph2_with_witness(load):
    rep = verify_all(load("z3_broken_antipode"))
    assert not ph_verdict(rep)
    ph2 = rep.find("PH2")
    assert ph2.status == "fail"
    assert ph2.witness["law"] == "m(T⊗id)Δ=βεT"
    assert ph2.witness["h"] == "g1"
    # T = id is still an involutive antialgebra map on a commutative algebra
    assert rep.find("PH3-involution").passed


def test_ba1_negative_control_on_noncommutative_base():
    inst = build_sandwich(matrix_units_algebra(2, upper=True), group_algebra(2))
    assert check_ba1(inst).passed
    bad = inst.with_beta(inst.alpha_map, name="beta=alpha")
    rep = check_ba1(bad)
    assert rep.status == "fail"
    assert rep.witness is not None


def test_counit_and_cu3(load):
    for name in POSITIVE:
        inst = load(name)
        assert check_counit(inst).passed
        assert check_cu3(inst).passed


def test_torus_tau2_cubed_on_generators(load):
    inst = load("quantum_torus")
    tower = TensorTower(inst, NORMAL_FORM)
    rep = tau2_cubed_report(inst, tower, [TM(1, 0), TM(0, 1), TM(-1, 0), TM(0, -1), TM(2, 3)])
    assert rep.passed


def test_formulations_agree_on_broken_antipode(load):
    rep = check_para_antipode(load("z3_broken_antipode"))
    assert rep.find("PH3-formulations-agree").passed


def test_hopf_roundtrip_z2_sign_character():
    Hd = group_algebra(2, QQ, -1)
    T = {h: Hd.twisted_antipode(h) for h in Hd.basis}
    assert T[1] == {1: -1}
    rep = hopf_roundtrip(Hd, T)
    assert rep.passed, rep.first_failure()
    assert "1:-1" in rep.find("recovered-delta-character").detail


def test_hopf_roundtrip_z3_cyclotomic_character():
    F = CyclotomicField(3)
    q = F.qpow(1)
    Hd = group_algebra(3, F, q)
    T = {h: Hd.twisted_antipode(h) for h in Hd.basis}
    rep = hopf_roundtrip(Hd, T)
    assert rep.passed, rep.first_failure()
    assert Hd.eps(T[1]) == q


def test_hopf_roundtrip_detects_wrong_delta():
    Hd = group_algebra(2, QQ, -1)
    T = {h: Hd.twisted_antipode(h) for h in Hd.basis}
    rep = hopf_roundtrip(Hd.with_delta({0: QQ.one, 1: QQ.one}), T)
    assert rep.find("recovered-matches-given").status == "fail"


def test_sweedler_untwisted_antipode_is_not_a_para_antipode():
    Hd = sweedler(QQ, 1)
    rep = check_para_antipode(hopf_instance(Hd, Hd.twisted_antipode))
    assert rep.find("PH3-involution").status == "fail"
    twisted = sweedler(QQ, -1)
    rep = check_para_antipode(hopf_instance(twisted, twisted.twisted_antipode))
    assert rep.passed, rep.first_failure()
