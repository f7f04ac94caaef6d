"""Bimodule tensor powers H^{⊗_R n}.

Two engines model the same spaces:

* :class:`QuotientSpace` builds level n as (level n-1) ⊗_k H modulo the
  relations t·β(r) ⊗ x - t ⊗ α(r)x, where t·β(r) left-multiplies the last
  slot of t by β(r).  Row reduction pivots on the largest column, columns are
  ordered lexicographically, so the surviving basis (pure tuples of H labels)
  and every matrix are reproducible.
* :class:`NormalFormSpace` asks the instance backend for a canonical
  representative of each pure tuple (for the torus: all U-powers in slot 1).

Level 0 is R (keys are R labels), level 1 is H (keys are 1-tuples).  Free
tensors are dicts ``{tuple_of_H_labels: scalar}``; at level 0 they are R
elements.  Both engines assume BA1 (the images of α and β commute), which is
what makes the iterated quotient agree with the quotient by all relations.
"""

from __future__ import annotations

import itertools
from typing import Callable, Optional

from .instances import InstanceError, ParaHopfInstance
from .linalg import Echelon, rank, vadd_into
from .reports import Checker, CheckReport

QUOTIENT = "quotient"
NORMAL_FORM = "normal-form"


class TensorError(ValueError):
    pass


class TensorSpace:
    engine = None

    def __init__(self, inst: ParaHopfInstance, level: int):
        if level < 0:
            raise TensorError("negative tensor level")
        self.inst = inst
        self.level = level
        self._proj = {}

    finite = True
    basis: Optional[list] = None

    @property
    def dim(self):
        return len(self.basis) if self.basis is not None else None

    def representative(self, key):
        return key

    def project_tuple(self, t) -> dict:
        hit = self._proj.get(t)
        if hit is None:
            hit = self._project_tuple(t)
            self._proj[t] = hit
        return hit

    def project(self, free: dict) -> dict:
        out = {}
        for t, c in free.items():
            vadd_into(out, self.project_tuple(t), c)
        return out

    def project_slots(self, slots: list) -> dict:
        """Project the free tensor of a list of H elements."""
        if len(slots) != self.level:
            raise TensorError(f"expected {self.level} tensor factors, got {len(slots)}")
        if self.level == 0:
            raise TensorError("level 0 has no tensor factors")
        out = {}
        for t, c in _expand(slots).items():
            vadd_into(out, self.project_tuple(t), c)
        return out

    def keys(self, window: Optional[int] = None) -> list:
        return list(self.basis)

    def describe_window(self, window) -> Optional[str]:
        return None

    def free_labels(self, window: Optional[int] = None) -> list:
        """H labels ranged over in relation generators."""
        return self.inst.H.window(window or 1)

    def r_labels(self, window: Optional[int] = None) -> list:
        return self.inst.R.window(window or 1)

    def index(self):
        if not hasattr(self, "_index"):
            self._index = {k: i for i, k in enumerate(self.basis)}
        return self._index


def _expand(slots):
    out = {(): 1}
    for s in slots:
        nxt = {}
        for t, c in out.items():
            for x, d in s.items():
                k = t + (x,)
                v = nxt.get(k)
                nxt[k] = c * d if v is None else v + c * d
        out = {k: v for k, v in nxt.items() if v}
    return out


class _LevelZero(TensorSpace):
    def __init__(self, inst, engine):
        super().__init__(inst, 0)
        self.engine = engine
        self.finite = inst.R.finite
        self.basis = list(inst.R.basis) if inst.R.finite else None

    def _project_tuple(self, t):
        return {t: self.inst.field.one}

    def project(self, free: dict) -> dict:
        return {k: c for k, c in free.items() if c}

    def keys(self, window=None):
        return self.inst.R.window(window if window is not None else 1)

    def describe_window(self, window):
        return self.inst.R.describe_window(window)


class QuotientSpace(TensorSpace):
    engine = QUOTIENT

    def __init__(self, inst: ParaHopfInstance, level: int, prev: Optional["QuotientSpace"] = None):
        super().__init__(inst, level)
        if not inst.finite:
            raise TensorError("the quotient engine needs finite-dimensional H and R")
        H = inst.H
        one = inst.field.one
        if level == 1:
            self.basis = [(h,) for h in H.basis]
            self._relations = 0
            return
        if prev is None or prev.level != level - 1:
            raise TensorError("quotient level needs the previous level")
        self.prev = prev
        nh = H.dim
        pidx = prev.index()
        hidx = {h: i for i, h in enumerate(H.basis)}
        pivots = Echelon()
        count = 0
        for b in prev.basis:
            bi = pidx[b]
            head, last = b[:-1], b[-1]
            for r in inst.R.basis:
                br = H.mul(inst.beta_map(r), {last: one})
                left = {}
                for y, c in br.items():
                    vadd_into(left, prev.project_tuple(head + (y,)), c)
                for x in H.basis:
                    vec = {}
                    for k, c in left.items():
                        vec[pidx[k] * nh + hidx[x]] = c
                    for z, d in H.mul(inst.alpha_map(r), {x: one}).items():
                        vadd_into(vec, {bi * nh + hidx[z]: -d})
                    count += 1
                    if vec:
                        pivots.add(vec)
        self._relations = count
        tails = pivots.reduced_rows()
        cols = [k + (h,) for k in prev.basis for h in H.basis]
        self.basis = [cols[j] for j in range(len(cols)) if j not in tails]
        self._col_key = {j: cols[j] for j in range(len(cols)) if j not in tails}
        self._tails = {p: {cols[j]: c for j, c in tail.items()} for p, tail in tails.items()}
        self._nh = nh
        self._hidx = hidx

    def _project_tuple(self, t):
        if len(t) != self.level:
            raise TensorError(f"expected a {self.level}-tuple, got {len(t)}")
        if self.level == 1:
            return {t: self.inst.field.one}
        head = self.prev.project_tuple(t[:-1])
        pidx = self.prev.index()
        hi = self._hidx[t[-1]]
        out = {}
        for k, c in head.items():
            j = pidx[k] * self._nh + hi
            tail = self._tails.get(j)
            if tail is None:
                vadd_into(out, {self._col_key[j]: c})
            else:
                vadd_into(out, tail, c)
        return out

    @property
    def relation_count(self):
        return self._relations


class NormalFormSpace(TensorSpace):
    engine = NORMAL_FORM

    def __init__(self, inst: ParaHopfInstance, level: int):
        super().__init__(inst, level)
        if inst.backend is None:
            raise TensorError(f"instance {inst.name} has no normal-form backend")
        self.backend = inst.backend
        self.finite = inst.finite
        self.basis = self.backend.basis(level) if self.finite else None

    def _project_tuple(self, t):
        if len(t) != self.level:
            raise TensorError(f"expected a {self.level}-tuple, got {len(t)}")
        return {self.backend.reduce(t): self.inst.field.one}

    def keys(self, window=None):
        if self.finite:
            return list(self.basis)
        return self.backend.window(self.level, window if window is not None else 1)

    def describe_window(self, window):
        if self.finite:
            return None
        return f"level {self.level} classes with all exponents in [-{window}, {window}]"


class TensorTower:
    """Lazily built levels 0, 1, 2, ... of one engine for one instance."""

    def __init__(self, inst: ParaHopfInstance, engine: str = QUOTIENT):
        if engine not in (QUOTIENT, NORMAL_FORM):
            raise TensorError(f"unknown engine {engine!r}")
        if engine == QUOTIENT and not inst.finite:
            raise TensorError("the quotient engine needs a finite instance; use the normal-form engine")
        if engine == NORMAL_FORM and inst.backend is None:
            raise TensorError(f"instance {inst.name} has no normal-form backend")
        self.inst = inst
        self.engine = engine
        self._levels = {0: _LevelZero(inst, engine)}

    @property
    def finite(self):
        return self.inst.finite

    def __getitem__(self, n: int) -> TensorSpace:
        if n < 0:
            raise TensorError("negative tensor level")
        sp = self._levels.get(n)
        if sp is None:
            if self.engine == NORMAL_FORM:
                sp = NormalFormSpace(self.inst, n)
            elif n == 1:
                sp = QuotientSpace(self.inst, 1)
            else:
                sp = QuotientSpace(self.inst, n, self[n - 1])
            self._levels[n] = sp
        return sp


def build_tensor_space(inst: ParaHopfInstance, n: int, engine: str = QUOTIENT) -> TensorSpace:
    return TensorTower(inst, engine)[n]


# ---------------------------------------------------------------------------
# module actions
# ---------------------------------------------------------------------------

def representative_slots(space: TensorSpace, t: dict) -> dict:
    """Free lift of a class vector through the basis representatives."""
    out = {}
    for k, c in t.items():
        vadd_into(out, {space.representative(k): c})
    return out


def right_action(space: TensorSpace, t: dict, gs: list) -> dict:
    """(h_1 ⊗ ... ⊗ h_n)·(g_1, ..., g_n) = h_1g_1 ⊗ ... ⊗ h_ng_n."""
    if len(gs) != space.level:
        raise TensorError(f"expected {space.level} factors, got {len(gs)}")
    H = space.inst.H
    one = space.inst.field.one
    out = {}
    for rep, c in representative_slots(space, t).items():
        slots = [H.mul({x: one}, g) for x, g in zip(rep, gs)]
        vadd_into(out, space.project(_expand(slots)), c)
    return out


def iterated_coproduct(inst: ParaHopfInstance, h: dict, legs: int) -> dict:
    """Free lift of Δ^{legs-1}(h), splitting the last leg each time."""
    if legs < 1:
        raise TensorError("need at least one leg")
    out = {(x,): c for x, c in h.items() if c}
    for _ in range(legs - 1):
        nxt = {}
        for t, c in out.items():
            for (a, b), d in inst.coproduct_map(t[-1]).items():
                vadd_into(nxt, {t[:-1] + (a, b): c * d})
        out = nxt
    return out


def diagonal_action(space: TensorSpace, h: dict, t: dict) -> dict:
    """h ▷ (g_1 ⊗ ... ⊗ g_n) = h^(1)g_1 ⊗ ... ⊗ h^(n)g_n."""
    if space.level == 0:
        raise TensorError("the diagonal action needs level >= 1")
    H = space.inst.H
    one = space.inst.field.one
    cop = iterated_coproduct(space.inst, h, space.level)
    out = {}
    for rep, c in representative_slots(space, t).items():
        for legs, d in cop.items():
            slots = [H.mul({a: one}, {g: one}) for a, g in zip(legs, rep)]
            vadd_into(out, space.project(_expand(slots)), c * d)
    return out


# ---------------------------------------------------------------------------
# linear operators between levels
# ---------------------------------------------------------------------------

class LinearOp:
    """Linear map between tensor spaces, evaluated lazily on basis classes."""

    def __init__(self, name: str, source: TensorSpace, target: TensorSpace, key_fn: Callable):
        self.name = name
        self.source = source
        self.target = target
        self._key_fn = key_fn
        self._cache = {}

    @classmethod
    def from_free(cls, name, source, target, fn):
        """Operator induced by ``fn``: source representative -> free tensor at target."""
        return cls(name, source, target, lambda k: target.project(fn(source.representative(k))))

    def apply_key(self, key) -> dict:
        hit = self._cache.get(key)
        if hit is None:
            hit = self._key_fn(key)
            self._cache[key] = hit
        return hit

    def apply(self, vec: dict) -> dict:
        out = {}
        for k, c in vec.items():
            vadd_into(out, self.apply_key(k), c)
        return out

    def __matmul__(self, other: "LinearOp") -> "LinearOp":
        return LinearOp(f"{self.name}∘{other.name}", other.source, self.target,
                        lambda k: self.apply(other.apply_key(k)))

    def __add__(self, other):
        return self.combine(other, 1)

    def __sub__(self, other):
        return self.combine(other, -1)

    def combine(self, other, c, name=None):
        def fn(k):
            out = dict(self.apply_key(k))
            vadd_into(out, other.apply_key(k), c)
            return out

        return LinearOp(name or f"({self.name}{'+' if c == 1 else '-'}{other.name})", self.source, self.target, fn)

    def scaled(self, c, name=None):
        return LinearOp(name or f"{c}·{self.name}", self.source, self.target,
                        lambda k: {x: c * v for x, v in self.apply_key(k).items()} if c else {})

    def power(self, e: int) -> "LinearOp":
        if self.source is not self.target:
            raise TensorError("power of a non-endomorphism")
        op = identity(self.source)
        for _ in range(e):
            op = self @ op
        op.name = f"{self.name}^{e}"
        return op

    def columns(self) -> list:
        """Columns in target-basis indices (finite spaces only)."""
        tidx = self.target.index()
        return [{tidx[k]: c for k, c in self.apply_key(key).items()} for key in self.source.basis]

    def triplets(self) -> list:
        """Sorted (row, col, value) entries (finite spaces only)."""
        out = []
        for j, col in enumerate(self.columns()):
            for i, c in col.items():
                out.append((i, j, c))
        out.sort(key=lambda x: (x[0], x[1]))
        return out

    def rank(self) -> int:
        return rank(self.columns())

    def __repr__(self):
        return f"LinearOp({self.name}: level {self.source.level} -> {self.target.level})"


def identity(space: TensorSpace) -> LinearOp:
    one = space.inst.field.one
    return LinearOp(f"id_{space.level}", space, space, lambda k: {k: one})


def ops_agree(chk: Checker, left: LinearOp, right: LinearOp, keys, **label) -> bool:
    """Compare two operators on ``keys``; record the first difference in ``chk``."""
    for k in keys:
        a = left.apply_key(k)
        b = right.apply_key(k)
        if a != b:
            chk.expect(False, identity=f"{left.name} = {right.name}", key=k, left=a, right=b, **label)
            return False
    chk.expect(True)
    return True


# ---------------------------------------------------------------------------
# well-definedness on the quotient
# ---------------------------------------------------------------------------

def relation_generators(space: TensorSpace, window: Optional[int] = None):
    """Yield (slot, r, t): the relation β(r)t_slot ⊗ t_{slot+1} - t_slot ⊗ α(r)t_{slot+1}.

    Exhaustive over H-basis tuples when the instance is finite, otherwise over
    window labels.
    """
    n = space.level
    if n < 2:
        return
    labels = space.free_labels(window)
    rs = space.r_labels(window)
    for t in itertools.product(labels, repeat=n):
        for i in range(n - 1):
            for r in rs:
                yield i, r, t


def verify_well_defined(source: TensorSpace, target: TensorSpace, fn: Callable, name: str,
                        window: Optional[int] = None):
    """Check that ``fn`` (free tuple -> free tensor at ``target``) kills every relation.

    Returns the report and, on success, the induced :class:`LinearOp`.
    """
    inst = source.inst
    H = inst.H
    one = inst.field.one
    desc = None
    if not inst.finite:
        w = window or 1
        desc = f"relations on H-labels and r within window {w}: " + (H.describe_window(w) or "")
    chk = Checker(f"well-defined[{name}]", desc)
    img = {}

    def image(t):
        hit = img.get(t)
        if hit is None:
            hit = target.project(fn(t))
            img[t] = hit
        return hit

    def image_elem(prefix, elem, suffix):
        out = {}
        for y, c in elem.items():
            vadd_into(out, image(prefix + (y,) + suffix), c)
        return out

    count = 0
    for i, r, t in relation_generators(source, window):
        count += 1
        left = image_elem(t[:i], H.mul(inst.beta_map(r), {t[i]: one}), t[i + 1:])
        right = image_elem(t[:i + 1], H.mul(inst.alpha_map(r), {t[i + 1]: one}), t[i + 2:])
        if left != right:
            chk.expect(False, slot=i + 1, r=r, tuple=t, left=left, right=right)
            break
    report = chk.report(detail=f"{count} relation generators")
    if chk.failed:
        return report, None
    if source.level == 0:
        op = LinearOp(name, source, target, lambda k: target.project(fn(k)))
    else:
        op = LinearOp(name, source, target, lambda k: image(source.representative(k)))
    return report, op


def permutation_map(perm: list) -> Callable:
    """Free map t -> (t[perm[0]], t[perm[1]], ...), e.g. the flip [1, 0]."""
    def fn(t):
        return {tuple(t[p] for p in perm): 1}

    return fn


# ---------------------------------------------------------------------------
# engine intertwiner
# ---------------------------------------------------------------------------

def intertwiner(quot: TensorSpace, nf: TensorSpace) -> CheckReport:
    """M[:, e] = nf.project(e) on quotient basis representatives; check M is invertible."""
    chk = Checker(f"intertwiner[level {quot.level}]")
    chk.expect(quot.dim == nf.dim, quotient_dim=quot.dim, normal_form_dim=nf.dim)
    cols = []
    nidx = nf.index()
    for e in quot.basis:
        cols.append({nidx[k]: c for k, c in nf.project_tuple(quot.representative(e)).items()})
    r = rank(cols)
    chk.expect(r == nf.dim, rank=r, dim=nf.dim)
    return chk.report(detail=f"dim {quot.dim}")


def intertwines(chk: Checker, q_op: LinearOp, n_op: LinearOp) -> bool:
    """M_target · A_q = A_nf · M_source on every quotient basis class."""
    qs, qt, ns, nt = q_op.source, q_op.target, n_op.source, n_op.target

    def M(space_q, space_n, vec):
        out = {}
        for k, c in vec.items():
            rep = space_q.representative(k)
            img = {rep: c} if space_q.level == 0 else space_n.project({rep: c})
            vadd_into(out, img)
        return out

    for e in qs.basis:
        left = M(qt, nt, q_op.apply_key(e))
        right = n_op.apply(M(qs, ns, {e: qs.inst.field.one}))
        if left != right:
            chk.expect(False, operator=q_op.name, key=e, left=left, right=right)
            return False
    chk.expect(True)
    return True


__all__ = [
    "InstanceError",
    "LinearOp",
    "NORMAL_FORM",
    "NormalFormSpace",
    "QUOTIENT",
    "QuotientSpace",
    "TensorError",
    "TensorSpace",
    "TensorTower",
    "build_tensor_space",
    "diagonal_action",
    "identity",
    "intertwiner",
    "intertwines",
    "iterated_coproduct",
    "ops_agree",
    "permutation_map",
    "relation_generators",
    "right_action",
    "verify_well_defined",
]
