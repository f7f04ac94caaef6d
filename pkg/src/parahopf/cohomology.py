"""Hochschild and cyclic cohomology of H_♮, Haar systems and the homotopy η.

HC is computed from the λ-subcomplex K_n = ker(1 - (-1)^n τ_n), which is
quasi-isomorphic to the cyclic bicomplex in characteristic zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .cocyclic import CocyclicModule, eta_free, verify_cocyclic
from .instances import InstanceError, ParaHopfInstance
from .linalg import nullspace, rank, vadd_into
from .reports import Checker, CheckReport
from .rtensor import LinearOp, identity, ops_agree, verify_well_defined


class CohomologyError(ValueError):
    pass


@dataclass
class CohomologyReport:
    instance: str
    n_max: int
    hh: Optional[list] = None
    hc: Optional[list] = None
    level_dims: Optional[list] = None
    hh0_basis: Optional[list] = None
    ker_alpha_minus_beta: Optional[int] = None
    engine: Optional[str] = None
    certified: Optional[dict] = None
    checks: list = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {
            "instance": self.instance,
            "n_max": self.n_max,
            "engine": self.engine,
            "pivoting": "largest column index; columns ordered lexicographically on basis tuples",
        }
        for key in ("hh", "hc", "level_dims", "hh0_basis", "ker_alpha_minus_beta", "certified"):
            val = getattr(self, key)
            if val is not None:
                if key in ("hh", "hc", "level_dims"):
                    val = {str(i): v for i, v in enumerate(val)}
                out[key] = val
        return out


def _module(inst, module, engine=None):
    if not inst.finite:
        raise CohomologyError(
            f"{inst.name} is infinite-dimensional; dimension tables are not defined, use the haar homotopy mode"
        )
    return module or CocyclicModule(inst, engine)


def ker_alpha_minus_beta(inst: ParaHopfInstance) -> list:
    """Basis of ker(α - β) ⊂ R, straight from the structure maps (no tensor spaces)."""
    hidx = {h: i for i, h in enumerate(inst.H.basis)}
    cols = []
    for r in inst.R.basis:
        v = {}
        vadd_into(v, {hidx[k]: c for k, c in inst.alpha_map(r).items()})
        vadd_into(v, {hidx[k]: c for k, c in inst.beta_map(r).items()}, -1)
        cols.append(v)
    return [{inst.R.basis[j]: c for j, c in vec.items()} for vec in nullspace(cols)]


def _columns(op: LinearOp, vecs: list) -> list:
    tidx = op.target.index()
    return [{tidx[k]: c for k, c in op.apply(v).items()} for v in vecs]


def hochschild(inst: ParaHopfInstance, n_max: int = 4, module: Optional[CocyclicModule] = None,
               engine: Optional[str] = None) -> CohomologyReport:
    mod = _module(inst, module, engine)
    one = inst.field.one
    ranks = []
    for n in range(n_max + 1):
        sp = mod.tower[n]
        ranks.append(rank(_columns(mod.b(n), [{k: one} for k in sp.basis])))
    dims = [mod.tower[n].dim for n in range(n_max + 2)]
    hh = [dims[n] - ranks[n] - (ranks[n - 1] if n else 0) for n in range(n_max + 1)]
    b0 = mod.b(0)
    hh0 = nullspace(_columns(b0, [{k: one} for k in mod.tower[0].basis]))
    R = inst.R.basis
    direct = ker_alpha_minus_beta(inst)
    chk = Checker("HH0-equals-ker(alpha-beta)")
    chk.expect(len(direct) == hh[0], direct=len(direct), computed=hh[0])
    rep = CohomologyReport(
        inst.name, n_max, hh=hh, level_dims=dims[: n_max + 1],
        hh0_basis=[_fmt_r({R[j]: c for j, c in v.items()}) for v in hh0],
        ker_alpha_minus_beta=len(direct), engine=mod.engine,
    )
    rep.checks.append(chk.report())
    return rep


def _fmt_r(v):
    from .reports import format_vector

    return format_vector(v)


def cyclic_cohomology(inst: ParaHopfInstance, n_max: int = 4, module: Optional[CocyclicModule] = None,
                      engine: Optional[str] = None) -> CohomologyReport:
    """HC^n = dim K_n - rank(b|K_n) - rank(b|K_{n-1}) with K the λ-subcomplex."""
    mod = _module(inst, module, engine)
    one = inst.field.one
    K = []
    for n in range(n_max + 2):
        sp = mod.tower[n]
        lam = identity(sp).combine(mod.tau(n), -1 if n % 2 == 0 else 1)
        basis = sp.basis
        kern = nullspace(_columns(lam, [{k: one} for k in basis]))
        K.append([{basis[j]: c for j, c in v.items()} for v in kern])
    chk = Checker("b-preserves-lambda-subcomplex")
    ranks = []
    for n in range(n_max + 1):
        b = mod.b(n)
        images = [b.apply(v) for v in K[n]]
        lam_next = identity(mod.tower[n + 1]).combine(mod.tau(n + 1), -1 if (n + 1) % 2 == 0 else 1)
        for v, img in zip(K[n], images):
            res = lam_next.apply(img)
            chk.expect(not res, level=n, cochain=v, residue=res)
            if res:
                break
        tidx = mod.tower[n + 1].index()
        ranks.append(rank([{tidx[k]: c for k, c in img.items()} for img in images]))
    hc = [len(K[n]) - ranks[n] - (ranks[n - 1] if n else 0) for n in range(n_max + 1)]
    rep = CohomologyReport(inst.name, n_max, hc=hc, level_dims=[mod.tower[n].dim for n in range(n_max + 1)],
                           engine=mod.engine)
    rep.checks.append(chk.report())
    if not chk.report().passed:
        raise CohomologyError(f"internal inconsistency: b does not preserve the λ-subcomplex ({chk.witness})")
    return rep


def compute_cohomology(inst: ParaHopfInstance, n_max: int = 4, engine: Optional[str] = None):
    """Certify the cocyclic structure, then compute HH and HC on the same operators.

    Returns (cocyclic report, cohomology report or None when certification fails).
    """
    mod = _module(inst, None, engine)
    cert = verify_cocyclic(inst, n_max, module=mod)
    if not cert.passed:
        return cert, None
    hh = hochschild(inst, n_max, module=mod)
    hc = cyclic_cohomology(inst, n_max, module=mod)
    hh.hc = hc.hc
    hh.checks.extend(hc.checks)
    return cert, hh


# ---------------------------------------------------------------------------
# Haar systems
# ---------------------------------------------------------------------------

def haar_check(inst: ParaHopfInstance, tau_map=None, window: int = 3) -> CheckReport:
    """Left Haar system axioms; ``tau_map`` maps H labels to R elements."""
    tau_map = tau_map or inst.haar_map
    if tau_map is None:
        raise InstanceError(f"{inst.name} declares no Haar functional")
    H, R = inst.H, inst.R
    one = inst.field.one
    w = None if inst.finite else "; ".join(x for x in (H.describe_window(window), R.describe_window(window)) if x)

    def tau(elem):
        out = {}
        for x, c in elem.items():
            vadd_into(out, tau_map(x), c)
        return out

    hs = H.window(window)
    rs = R.window(window)
    mod = Checker("right-R-module", w)
    for h in hs:
        th = tau_map(h)
        for r in rs:
            lhs = tau(H.mul(inst.beta_map(r), {h: one}))
            rhs = R.mul(th, {r: one})
            mod.expect(lhs == rhs, law="τ(β(r)h)=τ(h)r", h=h, r=r, left=lhs, right=rhs)
    inv = Checker("left-invariance", w)
    sym = Checker("alpha-tau-equals-beta-tau", w)
    for h in hs:
        lhs = {}
        for (a, b), c in inst.coproduct_map(h).items():
            vadd_into(lhs, H.mul(inst.alpha(tau_map(a)), {b: one}), c)
        rhs = inst.alpha(tau_map(h))
        inv.expect(lhs == rhs, law="α(τ(h1))h2=α(τ(h))1", h=h, left=lhs, right=rhs)
        sa, sb = inst.alpha(tau_map(h)), inst.beta(tau_map(h))
        sym.expect(sa == sb, law="ατ=βτ", h=h, left=sa, right=sb)
    norm = Checker("normal")
    t1 = tau(H.unit)
    norm.expect(t1 == R.unit, law="τ(1)=1", value=t1)
    return CheckReport.combine("haar-system", [mod.report(), inv.report(), sym.report(), norm.report()])


def haar_homotopy(inst: ParaHopfInstance, tau_map=None, n_max: int = 3, window: int = 3,
                  relation_window: int = 1, module: Optional[CocyclicModule] = None):
    """η∘b + b∘η = id in degrees 1..n_max.

    Returns (report, certified conclusions or None).  Conclusions follow the
    standard argument: HH^{>0} = 0 and HC alternates ker(α-β), 0.
    """
    tau_map = tau_map or inst.haar_map
    mod = module or CocyclicModule(inst, relation_window=relation_window)
    haar = haar_check(inst, tau_map, window)
    etas = {}
    wd = []
    for n in range(1, n_max + 2):
        rep, op = verify_well_defined(mod.tower[n], mod.tower[n - 1], eta_free(inst, n, tau_map), f"η@{n}",
                                      relation_window)
        wd.append(rep)
        etas[n] = op or LinearOp.from_free(f"η@{n}", mod.tower[n], mod.tower[n - 1], eta_free(inst, n, tau_map))
    w = None if inst.finite else f"classes with exponents in [-{window}, {window}]"
    chk = Checker("eta-b-plus-b-eta", w)
    for n in range(1, n_max + 1):
        lhs = (etas[n + 1] @ mod.b(n)).combine(mod.b(n - 1) @ etas[n], 1, name=f"ηb+bη@{n}")
        ops_agree(chk, lhs, identity(mod.tower[n]), mod.tower[n].keys(window), degree=n)
    homotopy = chk.report(detail=f"degrees 1..{n_max}")
    subs = [haar, CheckReport.combine("eta-well-defined", wd), homotopy]
    report = CheckReport.combine(f"haar[{inst.name}]", subs)
    if not report.passed:
        return report, None
    return report, conclusions(inst, n_max, window)


def conclusions(inst: ParaHopfInstance, n_max: int, window: int) -> dict:
    if inst.finite:
        k = len(ker_alpha_minus_beta(inst))
        hh = {str(n): (k if n == 0 else 0) for n in range(n_max + 1)}
        hc = {str(n): (k if n % 2 == 0 else 0) for n in range(n_max + 1)}
        return {"kind": "dimensions", "HH": hh, "HC": hc}
    same = all(inst.alpha_map(r) == inst.beta_map(r) for r in inst.R.window(window))
    ker = "R" if same else "ker(α-β)"
    return {
        "kind": "symbolic",
        "HH": {"0": f"≅ {ker}", ">0": "0"},
        "HC": {"2i": f"≅ {ker}", "2i+1": "0"},
        "note": ("α = β on the window, so ker(α-β) = R" if same else "ker(α-β) not computed symbolically")
        + "; homotopy certified on the window",
    }


__all__ = [
    "CohomologyError",
    "CohomologyReport",
    "compute_cohomology",
    "conclusions",
    "cyclic_cohomology",
    "haar_check",
    "haar_homotopy",
    "hochschild",
    "ker_alpha_minus_beta",
]
