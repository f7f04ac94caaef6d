import itertools

import pytest

from parahopf.algebra import TorusMonomial as TM
from parahopf.axioms import ph_verdict, verify_all
from parahopf.instances import (
    GroupoidError,
    InstanceError,
    build_double_crossed,
    build_groupoid,
    build_quantum_torus,
    build_raw,
    build_sandwich,
    check_module_algebra,
    cyclic_shift_action,
    export_tables,
    functions_algebra,
    group_algebra,
    instance_summary,
    pair_groupoid_tables,
    sweedler,
)
from parahopf.scalars import QQ, CyclotomicField, RationalFunctionField


@pytest.mark.parametrize("name, dim_h, dim_r", [
    ("pair_groupoid", 4, 2),
    ("z3_groupoid", 3, 1),
    ("quantum_torus_n3", 9, 3),
    ("sandwich_z2", 2, 1),
    ("sandwich_trivial", 1, 1),
    ("double_crossed", 8, 2),
])
def test_bundled_dimensions(load, name, dim_h, dim_r):
    inst = load(name)
    assert (inst.H.dim, inst.R.dim) == (dim_h, dim_r)


def test_formal_torus_is_infinite(load):
    s = instance_summary(load("quantum_torus"))
    assert s["finite"] is False and s["dim_H"] is None


def test_pair_groupoid_structure(load):
    inst = load("pair_groupoid")
    one = inst.field.one
    for g in inst.H.basis:
        assert inst.coproduct_map(g) == {(g, g): one}
        (t,) = inst.counit_map(g)
        assert t.target == g.target
        (ginv,) = inst.antipode_map(g)
        assert (ginv.source, ginv.target) == (g.target, g.source)


def canonical(tables):
    out = dict(tables)
    for key in ("H", "R"):
        alg = tables[key]
        out[key] = dict(alg, basis=sorted(alg["basis"]), mult=sorted(alg["mult"], key=lambda e: e[:2]))
    out["generators"] = sorted(map(str, tables["generators"]))
    return out


def test_raw_round_trip(load):
    for name in ("pair_groupoid", "double_crossed", "quantum_torus_n3"):
        inst = load(name)
        raw = build_raw(export_tables(inst), inst.field, name + "_raw")
        assert canonical(export_tables(raw)) == canonical(export_tables(inst))
        assert ph_verdict(verify_all(raw))


def test_raw_rejects_bad_tables(load):
    tables = export_tables(load("z3_groupoid"))
    broken = dict(tables, alpha={})
    with pytest.raises(InstanceError):
        build_raw(broken)
    broken = dict(tables, counit={**tables["counit"], "zz": {}})
    with pytest.raises(InstanceError):
        build_raw(broken)
    with pytest.raises(InstanceError):
        build_raw({k: v for k, v in tables.items() if k != "coproduct"})


def test_formal_and_cyclotomic_torus_agree():
    F = RationalFunctionField()
    N = 3
    C = CyclotomicField(N)
    formal = build_quantum_torus("formal-q")
    finite = build_quantum_torus("cyclotomic", N)
    for a, b, c, d in itertools.product(range(-2, 3), repeat=4):
        ((z, coeff),) = formal.H.mul_basis(TM(a, b), TM(c, d)).items()
        e = next(k for k in range(-12, 13) if F.qpow(k) == coeff)
        ((zz, cc),) = finite.H.mul_basis(TM(a % N, b % N), TM(c % N, d % N)).items()
        assert zz == TM(z.n % N, z.m % N)
        assert cc == C.qpow(e)
    for a, b in itertools.product(range(-2, 3), repeat=2):
        ((t, coeff),) = formal.antipode_map(TM(a, b)).items()
        e = next(k for k in range(-12, 13) if F.qpow(k) == coeff)
        assert finite.antipode_map(TM(a % N, b % N)) == {TM(t.n % N, t.m % N): C.qpow(e)}


def test_torus_modes_reject_wrong_fields():
    with pytest.raises(InstanceError):
        build_quantum_torus("formal-q", field=QQ)
    with pytest.raises(InstanceError):
        build_quantum_torus("cyclotomic", 3, field=CyclotomicField(4))
    with pytest.raises(InstanceError):
        build_quantum_torus("cyclotomic", 1)


def test_sweedler_is_a_hopf_algebra():
    Hd = sweedler()
    assert Hd.check(require_involutive=False).passed
    # S^2 != id, but the twist by delta(g) = -1 is involutive
    assert not Hd.with_delta({"1": 1, "g": 1, "x": 0, "gx": 0}).check(require_involutive=True).passed
    assert Hd.check(require_involutive=True).passed


def test_group_algebra_character():
    Hd = group_algebra(3, CyclotomicField(3), CyclotomicField(3).qpow(1))
    assert Hd.check().passed
    with pytest.raises(InstanceError):
        group_algebra(2, QQ, 2)


def test_groupoid_validation():
    objects, morphisms, compose = pair_groupoid_tables(["a", "b"])
    bad = dict(compose)
    bad.pop(next(iter(bad)))
    with pytest.raises(GroupoidError):
        build_groupoid(objects, morphisms, bad)
    with pytest.raises(GroupoidError):
        build_groupoid(objects, morphisms + [("a>a", "a", "a")], compose)


def test_sandwich_needs_involutive_twist():
    with pytest.raises(InstanceError):
        build_sandwich(functions_algebra(1), sweedler(QQ, 1))


def test_double_crossed_action_is_module_algebra():
    P = functions_algebra(2)
    Hd = group_algebra(2)
    act = cyclic_shift_action(P, 2)
    assert check_module_algebra(P, Hd, act).passed
    inst = build_double_crossed(P, Hd, act)
    assert inst.H.dim == 8
    assert ph_verdict(verify_all(inst))
