"""The cocyclic module H_♮: cofaces, codegeneracies, cyclic operators.

Operators are first written on free tuples, then admitted only after
:func:`verify_well_defined` confirms they respect the R-balanced relations.

Conventions (level n is H^{⊗_R n}, level 0 is R):

* for n >= 1, δ_0 prepends 1, δ_i applies Δ in slot i, δ_{n+1} appends 1.
  On level 0, δ_0 = β and δ_1 = α.  With the prepend convention this is
  forced: δ_1δ_0 = δ_0δ_0 needs Δ(δ_0(a)) = 1⊗δ_0(a), which holds for β
  (Δβ(a) = 1⊗β(a)) but not for α (Δα(a) = α(a)⊗1 = 1⊗β(a)) unless α = β.
  Groupoids, the torus and R = k cannot tell the two readings apart.
* σ_i (level n -> n-1) deletes slot i+1 and absorbs ε(h_{i+1}): into the left
  neighbour as β(ε)h_i when there is one, otherwise into the right neighbour
  as α(ε)h_{i+2}.  When both neighbours exist the two results are compared.
* τ_n(h_1 ⊗ ... ⊗ h_n) = Δ^{n-1}(T(h_1))·(h_2, ..., h_n, 1); τ_0 = id.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .instances import ParaHopfInstance
from .linalg import vadd_into
from .reports import Checker, CheckReport
from .rtensor import (
    NORMAL_FORM,
    QUOTIENT,
    LinearOp,
    TensorTower,
    identity,
    intertwiner,
    intertwines,
    iterated_coproduct,
    ops_agree,
    verify_well_defined,
)


# ---------------------------------------------------------------------------
# operators on free tuples
# ---------------------------------------------------------------------------

def coface_free(inst: ParaHopfInstance, n: int, i: int, literal: bool = False):
    """δ_i at level n; ``literal`` uses δ_0 = α, δ_1 = β on level 0 instead."""
    H = inst.H
    unit = H.unit
    if not 0 <= i <= n + 1:
        raise ValueError(f"coface index {i} out of range at level {n}")
    if n == 0:
        # δ_0 = β, δ_1 = α: forced by δ_1δ_0 = δ_0δ_0 since 1⊗α(a) = β(a)⊗1
        m = (inst.beta_map if i == 0 else inst.alpha_map) if not literal else (
            inst.alpha_map if i == 0 else inst.beta_map)
        return lambda r: {(h,): c for h, c in m(r).items()}
    if i == 0:
        return lambda t: {(u,) + t: c for u, c in unit.items()}
    if i == n + 1:
        return lambda t: {t + (u,): c for u, c in unit.items()}

    def fn(t):
        return {t[:i - 1] + (a, b) + t[i:]: c for (a, b), c in inst.coproduct_map(t[i - 1]).items()}

    return fn


def codegeneracy_free(inst: ParaHopfInstance, n: int, i: int, side: Optional[str] = None):
    """σ_i at level n; ``side`` forces absorption 'left' or 'right'."""
    if not 0 <= i <= n - 1:
        raise ValueError(f"codegeneracy index {i} out of range at level {n}")
    H = inst.H
    one = inst.field.one
    if n == 1:
        return lambda t: dict(inst.counit_map(t[0]))
    if side is None:
        side = "left" if i >= 1 else "right"
    if side == "left" and i == 0 or side == "right" and i == n - 1:
        raise ValueError("no neighbour on that side")

    def fn(t):
        e = inst.counit_map(t[i])
        rest = t[:i] + t[i + 1:]
        out = {}
        if side == "left":
            j, m = i - 1, inst.beta(e)
        else:
            j, m = i, inst.alpha(e)
        for y, c in H.mul(m, {rest[j]: one}).items():
            vadd_into(out, {rest[:j] + (y,) + rest[j + 1:]: c})
        return out

    return fn


def cyclic_free(inst: ParaHopfInstance, n: int):
    H = inst.H
    one = inst.field.one
    if n == 0:
        return lambda r: {r: one}
    if n == 1:
        return lambda t: {(x,): c for x, c in inst.antipode_map(t[0]).items()}

    def fn(t):
        legs = iterated_coproduct(inst, inst.antipode_map(t[0]), n)
        tail = t[1:] + (None,)
        out = {}
        for ls, c in legs.items():
            prod = {(): c}
            for a, h in zip(ls, tail):
                sl = {a: one} if h is None else H.mul_basis(a, h)
                prod = {k + (z,): v * d for k, v in prod.items() for z, d in sl.items()}
            for k, v in prod.items():
                vadd_into(out, {k: v})
        return out

    return fn


def eta_free(inst: ParaHopfInstance, n: int, tau_map):
    """η(h_1 ⊗ ... ⊗ h_n) = α(τ(h_1))h_2 ⊗ ... ⊗ h_n, and η = τ at n = 1."""
    H = inst.H
    one = inst.field.one
    if n == 1:
        return lambda t: dict(tau_map(t[0]))

    def fn(t):
        a = inst.alpha(tau_map(t[0]))
        return {(y,) + t[2:]: c for y, c in H.mul(a, {t[1]: one}).items()}

    return fn


# ---------------------------------------------------------------------------
# the module
# ---------------------------------------------------------------------------

@dataclass
class CocyclicLevel:
    n: int
    space: object
    cofaces: list = field(default_factory=list)
    codegeneracies: list = field(default_factory=list)
    tau: Optional[LinearOp] = None


class CocyclicModule:
    """Certified operators of H_♮ on one tensor engine.

    Operators are built on demand; each is certified once, and the report is
    kept in ``self.wd_reports`` whatever the outcome.
    """

    def __init__(self, inst: ParaHopfInstance, engine: Optional[str] = None, relation_window: int = 1):
        self.inst = inst
        self.tower = TensorTower(inst, engine or (QUOTIENT if inst.finite else NORMAL_FORM))
        self.engine = self.tower.engine
        self.relation_window = relation_window
        self.wd_reports = {}
        self._ops = {}

    def _certify(self, key, name, src, tgt, fn) -> Optional[LinearOp]:
        if key in self._ops:
            return self._ops[key]
        rep, op = verify_well_defined(self.tower[src], self.tower[tgt], fn, name, self.relation_window)
        self.wd_reports[name] = rep
        if op is None:
            # keep a representative-based operator so later layers can still report
            op = LinearOp.from_free(name, self.tower[src], self.tower[tgt], fn)
            op.certified = False
        else:
            op.certified = True
        self._ops[key] = op
        return op

    def coface(self, n, i) -> LinearOp:
        return self._certify(("d", n, i), f"δ{i}@{n}", n, n + 1, coface_free(self.inst, n, i))

    def codegeneracy(self, n, i) -> LinearOp:
        return self._certify(("s", n, i), f"σ{i}@{n}", n, n - 1, codegeneracy_free(self.inst, n, i))

    def tau(self, n) -> LinearOp:
        if n == 0:
            return identity(self.tower[0])
        return self._certify(("t", n), f"τ@{n}", n, n, cyclic_free(self.inst, n))

    def b(self, n) -> LinearOp:
        op = self.coface(n, 0)
        for i in range(1, n + 2):
            op = op.combine(self.coface(n, i), -1 if i % 2 else 1)
        op.name = f"b@{n}"
        return op

    def level(self, n) -> CocyclicLevel:
        return CocyclicLevel(
            n, self.tower[n],
            [self.coface(n, i) for i in range(n + 2)],
            [self.codegeneracy(n, i) for i in range(n)],
            self.tau(n),
        )

    def keys(self, n, window):
        return self.tower[n].keys(window)


def _keys(mod, n, window):
    return mod.keys(n, window)


def verify_cocyclic(inst: ParaHopfInstance, n_max: int = 4, engine: Optional[str] = None,
                    window: int = 3, relation_window: int = 1,
                    module: Optional[CocyclicModule] = None) -> CheckReport:
    """All cosimplicial and cyclic identities among levels 0..n_max.

    Layers are ranked: well-definedness, then cosimplicial, then cyclic, so
    the top-level witness names the earliest broken layer.
    """
    mod = module or CocyclicModule(inst, engine, relation_window)
    one = inst.field.one
    finite = inst.finite
    win_desc = None if finite else f"classes with exponents in [-{window}, {window}]; relations within window {relation_window}"
    L = n_max

    # build everything up front so the well-definedness layer is complete
    for n in range(L + 1):
        if n + 1 <= L:
            for i in range(n + 2):
                mod.coface(n, i)
        for i in range(n):
            mod.codegeneracy(n, i)
        mod.tau(n)

    absorb = Checker("codegeneracy-absorption", win_desc)
    for n in range(2, L + 1):
        for i in range(1, n - 1):
            left = LinearOp.from_free("l", mod.tower[n], mod.tower[n - 1], codegeneracy_free(inst, n, i, "left"))
            right = LinearOp.from_free("r", mod.tower[n], mod.tower[n - 1], codegeneracy_free(inst, n, i, "right"))
            left.name, right.name = f"σ{i}@{n}[left]", f"σ{i}@{n}[right]"
            ops_agree(absorb, left, right, _keys(mod, n, window))
    wd = CheckReport.combine("well-definedness", [mod.wd_reports[k] for k in sorted(mod.wd_reports)] + [absorb.report()])

    d, s, t = mod.coface, mod.codegeneracy, mod.tau
    subs = []
    chk = Checker("delta-delta", win_desc)
    for n in range(0, L - 1):
        for j in range(1, n + 3):
            for i in range(j):
                ops_agree(chk, d(n + 1, j) @ d(n, i), d(n + 1, i) @ d(n, j - 1), _keys(mod, n, window), level=n)
    subs.append(chk.report())

    chk = Checker("sigma-sigma", win_desc)
    for n in range(2, L + 1):
        for j in range(n - 1):
            for i in range(j + 1):
                ops_agree(chk, s(n - 1, j) @ s(n, i), s(n - 1, i) @ s(n, j + 1), _keys(mod, n, window), level=n)
    subs.append(chk.report())

    chk = Checker("sigma-delta", win_desc)
    for n in range(0, L):
        for i in range(n + 2):
            for j in range(n + 1):
                lhs = s(n + 1, j) @ d(n, i)
                if i < j:
                    rhs = d(n - 1, i) @ s(n, j - 1)
                elif i in (j, j + 1):
                    rhs = identity(mod.tower[n])
                else:
                    rhs = d(n - 1, i - 1) @ s(n, j)
                ops_agree(chk, lhs, rhs, _keys(mod, n, window), level=n)
    subs.append(chk.report())

    chk = Checker("b-squared-zero", win_desc)
    for n in range(0, L - 1):
        bb = mod.b(n + 1) @ mod.b(n)
        for k in _keys(mod, n, window):
            v = bb.apply_key(k)
            chk.expect(not v, level=n, key=k, value=v)
            if v:
                break
    subs.append(chk.report())
    simplicial = CheckReport.combine("cosimplicial", subs)

    subs = []
    chk = Checker("tau-delta", win_desc)
    for n in range(0, L):
        ops_agree(chk, t(n + 1) @ d(n, 0), d(n, n + 1), _keys(mod, n, window), level=n, i=0)
        for i in range(1, n + 2):
            ops_agree(chk, t(n + 1) @ d(n, i), d(n, i - 1) @ t(n), _keys(mod, n, window), level=n, i=i)
    subs.append(chk.report())

    chk = Checker("tau-sigma", win_desc)
    for n in range(1, L + 1):
        ops_agree(chk, t(n - 1) @ s(n, 0), s(n, n - 1) @ t(n) @ t(n), _keys(mod, n, window), level=n, i=0)
        for i in range(1, n):
            ops_agree(chk, t(n - 1) @ s(n, i), s(n, i - 1) @ t(n), _keys(mod, n, window), level=n, i=i)
    subs.append(chk.report())

    chk = Checker("tau-power", win_desc)
    for n in range(0, L + 1):
        ops_agree(chk, t(n).power(n + 1), identity(mod.tower[n]), _keys(mod, n, window), level=n)
    subs.append(chk.report())

    if L >= 2:
        chk = Checker("tau2-cubed-on-1⊗h", win_desc)
        V2 = mod.tower[2]
        t2 = t(2)
        for h in inst.H.window(window):
            start = V2.project_slots([inst.H.unit, {h: one}])
            v = t2.apply(t2.apply(t2.apply(start)))
            chk.expect(v == start, h=h, left=v, right=start)
        subs.append(chk.report())
    cyclic = CheckReport.combine("cyclic", subs)

    dims = None
    if finite:
        dims = ", ".join(f"{n}:{mod.tower[n].dim}" for n in range(L + 1))
    return CheckReport.combine(
        f"cocyclic[{inst.name}, n<={L}, {mod.engine}]", [wd, simplicial, cyclic],
        detail=f"level dims {dims}" if dims else None,
    )


def engine_agreement(inst: ParaHopfInstance, n_max: int = 4) -> CheckReport:
    """Quotient vs normal-form engine on a finite instance with a backend."""
    q = CocyclicModule(inst, QUOTIENT)
    nf = CocyclicModule(inst, NORMAL_FORM)
    subs = [intertwiner(q.tower[n], nf.tower[n]) for n in range(1, n_max + 1)]
    chk = Checker("operators-intertwined")
    for n in range(0, n_max + 1):
        if n + 1 <= n_max:
            for i in range(n + 2):
                intertwines(chk, q.coface(n, i), nf.coface(n, i))
        for i in range(n):
            intertwines(chk, q.codegeneracy(n, i), nf.codegeneracy(n, i))
        if n >= 1:
            intertwines(chk, q.tau(n), nf.tau(n))
    subs.append(chk.report(detail=f"{chk.count} operators"))
    wd = [r for m in (q, nf) for r in m.wd_reports.values()]
    subs.append(CheckReport.combine("well-definedness", wd))
    return CheckReport.combine(f"engine-agreement[{inst.name}, levels 1..{n_max}]", subs)


def cocyclic_verdict(report: CheckReport) -> bool:
    return report.passed


__all__ = [
    "CocyclicLevel",
    "CocyclicModule",
    "codegeneracy_free",
    "coface_free",
    "cocyclic_verdict",
    "cyclic_free",
    "engine_agreement",
    "eta_free",
    "verify_cocyclic",
]
