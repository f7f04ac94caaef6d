"""Para-Hopf algebroid candidates.

A :class:`ParaHopfInstance` bundles the total algebra H, the base algebra R
and the structure maps alpha, beta, Delta, epsilon, T given on basis labels.
Coproduct values are free tensors ``{(x, y): c}``; they are only reduced
modulo the R-balanced relations when projected into a tensor space.

Nothing here asserts the para-Hopf axioms; that is the job of
:mod:`parahopf.axioms`.  Constructors only validate what they need to build
a well-formed algebra.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Callable, Optional

from .algebra import (
    AlgebraError,
    BasedAlgebra,
    Morphism,
    Sandwich,
    Smash,
    TorusMonomial,
    linear,
    parse_torus_monomial,
    table_algebra,
)
from .linalg import vadd_into
from .reports import Checker, CheckReport
from .scalars import QQ, CyclotomicField, Field, RationalFunctionField, ScalarError


class InstanceError(ValueError):
    pass


def _memo(f):
    cache = {}

    def g(x):
        hit = cache.get(x)
        if hit is None:
            hit = f(x)
            cache[x] = hit
        return hit

    g.cache = cache
    return g


def expand(slots) -> dict:
    """Free tensor product of sparse elements: [{x: a}, {y: b}] -> {(x, y): a*b}."""
    out = {(): 1}
    for s in slots:
        nxt = {}
        for t, c in out.items():
            for x, d in s.items():
                cd = c * d
                if cd:
                    k = t + (x,)
                    nxt[k] = nxt.get(k, 0) + cd
        out = {k: v for k, v in nxt.items() if v}
    return out


# ---------------------------------------------------------------------------
# Hopf algebras
# ---------------------------------------------------------------------------

@dataclass
class HopfAlgebraData:
    """Finite-dimensional Hopf algebra with a character delta."""

    name: str
    algebra: BasedAlgebra
    coproduct: dict
    counit: dict
    antipode: dict
    delta: dict

    @property
    def field(self):
        return self.algebra.field

    @property
    def basis(self):
        return self.algebra.basis

    def cop(self, x) -> dict:
        return self.coproduct[x]

    def iterated(self, x, k: int) -> dict:
        """Delta^k(x) with k+1 legs, splitting the last leg each time."""
        out = {(x,): self.field.one}
        for _ in range(k):
            nxt = {}
            for t, c in out.items():
                for (a, b), d in self.coproduct[t[-1]].items():
                    key = t[:-1] + (a, b)
                    nxt[key] = nxt.get(key, 0) + c * d
            out = {t: c for t, c in nxt.items() if c}
        return out

    def eps(self, elem: dict):
        return sum((c * self.counit[x] for x, c in elem.items()), self.field.zero)

    def S(self, elem: dict) -> dict:
        return linear(self.antipode.__getitem__, elem)

    def twisted_antipode(self, x) -> dict:
        """S~_delta(x) = delta(x1) S(x2)."""
        out = {}
        for (a, b), c in self.coproduct[x].items():
            vadd_into(out, self.antipode[b], c * self.delta[a])
        return out

    def with_delta(self, delta: dict) -> "HopfAlgebraData":
        return HopfAlgebraData(self.name, self.algebra, self.coproduct, self.counit, self.antipode, delta)

    def check(self, require_involutive: bool = True) -> CheckReport:
        A = self.algebra
        one = self.field.one
        subs = []

        def cop_elem(elem):
            out = {}
            for x, c in elem.items():
                vadd_into(out, self.coproduct[x], c)
            return out

        chk = Checker("coassociativity")
        for x in A.basis:
            left, right = {}, {}
            for (a, b), c in self.coproduct[x].items():
                for (a1, a2), d in self.coproduct[a].items():
                    vadd_into(left, {(a1, a2, b): c * d})
                for (b1, b2), d in self.coproduct[b].items():
                    vadd_into(right, {(a, b1, b2): c * d})
            chk.expect(left == right, x=x, left=left, right=right)
        subs.append(chk.report())

        chk = Checker("counit")
        for x in A.basis:
            left, right = {}, {}
            for (a, b), c in self.coproduct[x].items():
                vadd_into(left, {b: c * self.counit[a]})
                vadd_into(right, {a: c * self.counit[b]})
            chk.expect(left == {x: one} == right, x=x, left=left, right=right)
        subs.append(chk.report())

        chk = Checker("bialgebra")
        chk.expect(cop_elem(A.unit) == expand([A.unit, A.unit]), x="1", law="Delta(1)")
        chk.expect(self.eps(A.unit) == one, x="1", law="eps(1)")
        for x, y in itertools.product(A.basis, repeat=2):
            xy = A.mul_basis(x, y)
            prod = {}
            for (a, b), c in self.coproduct[x].items():
                for (a2, b2), d in self.coproduct[y].items():
                    vadd_into(prod, expand([A.mul_basis(a, a2), A.mul_basis(b, b2)]), c * d)
            chk.expect(cop_elem(xy) == prod, pair=(x, y), law="Delta multiplicative")
            chk.expect(self.eps(xy) == self.counit[x] * self.counit[y], pair=(x, y), law="eps multiplicative")
        subs.append(chk.report())

        chk = Checker("antipode")
        for x in A.basis:
            unit_eps = {k: c * self.counit[x] for k, c in A.unit.items() if c * self.counit[x]}
            left, right = {}, {}
            for (a, b), c in self.coproduct[x].items():
                vadd_into(left, A.mul(self.antipode[a], {b: one}), c)
                vadd_into(right, A.mul({a: one}, self.antipode[b]), c)
            chk.expect(left == unit_eps == right, x=x, left=left, right=right)
        subs.append(chk.report())

        chk = Checker("character")
        chk.expect(self.eps_like(self.delta, A.unit) == one, law="delta(1)=1")
        for x, y in itertools.product(A.basis, repeat=2):
            chk.expect(
                self.eps_like(self.delta, A.mul_basis(x, y)) == self.delta[x] * self.delta[y],
                pair=(x, y), law="delta multiplicative",
            )
        subs.append(chk.report())

        if require_involutive:
            chk = Checker("twisted-antipode-involutive")
            for x in A.basis:
                sq = linear(self.twisted_antipode, self.twisted_antipode(x))
                chk.expect(sq == {x: one}, x=x, value=sq)
            subs.append(chk.report())
        return CheckReport.combine(f"hopf[{self.name}]", subs)

    def eps_like(self, functional: dict, elem: dict):
        return sum((c * functional[x] for x, c in elem.items()), self.field.zero)


def ground_field_algebra(field: Field) -> BasedAlgebra:
    one = field.one
    return BasedAlgebra("k", field, lambda x, y: {"1": one}, {"1": one}, basis=["1"])


def group_algebra(n: int, field: Field = QQ, delta_generator=None) -> HopfAlgebraData:
    """Group algebra of Z/n; labels are the exponents 0..n-1 of a generator g.

    ``delta_generator`` is delta(g); delta(g^i) = delta(g)^i.  Defaults to the
    counit.
    """
    if n < 1:
        raise InstanceError("group order must be positive")
    one = field.one
    A = BasedAlgebra(f"kZ/{n}", field, lambda x, y: {(x + y) % n: one}, {0: one}, basis=list(range(n)))
    dg = one if delta_generator is None else field.coerce(delta_generator)
    if dg ** n != one if not isinstance(dg, int) else dg ** n != 1:
        raise InstanceError(f"delta(g)^{n} must be 1 for a character of Z/{n}")
    return HopfAlgebraData(
        name=f"Z/{n}",
        algebra=A,
        coproduct={i: {(i, i): one} for i in range(n)},
        counit={i: one for i in range(n)},
        antipode={i: {(-i) % n: one} for i in range(n)},
        delta={i: dg ** i for i in range(n)},
    )


def trivial_hopf(field: Field = QQ) -> HopfAlgebraData:
    one = field.one
    A = ground_field_algebra(field)
    return HopfAlgebraData("k", A, {"1": {("1", "1"): one}}, {"1": one}, {"1": {"1": one}}, {"1": one})


def sweedler(field: Field = QQ, delta_g=-1) -> HopfAlgebraData:
    """Sweedler's 4-dimensional Hopf algebra: g^2 = 1, x^2 = 0, xg = -gx.

    Delta(g) = g⊗g, Delta(x) = x⊗1 + g⊗x, S(x) = -gx.  The character is
    delta(g) = delta_g, delta(x) = 0.
    """
    one = field.one
    # basis 1, g, x, gx encoded as g^a x^b
    names = {(0, 0): "1", (1, 0): "g", (0, 1): "x", (1, 1): "gx"}
    code = {v: k for k, v in names.items()}

    def product(u, v):
        a1, b1 = code[u]
        a2, b2 = code[v]
        if b1 and b2:
            return {}
        # x g^a2 = (-1)^a2 g^a2 x
        sign = -one if (b1 and a2 % 2) else one
        return {names[((a1 + a2) % 2, b1 + b2)]: sign}

    A = BasedAlgebra("Sweedler", field, product, {"1": one}, basis=list(names.values()))
    cop = {
        "1": {("1", "1"): one},
        "g": {("g", "g"): one},
        "x": {("x", "1"): one, ("g", "x"): one},
        # Delta(gx) = (g⊗g)(x⊗1 + g⊗x) = gx⊗g + 1⊗gx
        "gx": {("gx", "g"): one, ("1", "gx"): one},
    }
    counit = {"1": one, "g": one, "x": field.zero, "gx": field.zero}
    # S(g) = g, S(x) = -gx, S(gx) = S(x)S(g) = -gxg = xg·(-1)... computed below
    antipode = {"1": {"1": one}, "g": {"g": one}, "x": {"gx": -one}}
    antipode["gx"] = A.mul(antipode["x"], antipode["g"])
    dg = field.coerce(delta_g)
    delta = {"1": one, "g": dg, "x": field.zero, "gx": field.zero}
    return HopfAlgebraData("Sweedler", A, cop, counit, antipode, delta)


# ---------------------------------------------------------------------------
# para-Hopf instances
# ---------------------------------------------------------------------------

@dataclass
class ParaHopfInstance:
    name: str
    kind: str
    H: BasedAlgebra
    R: BasedAlgebra
    alpha_map: Callable
    beta_map: Callable
    coproduct_map: Callable
    counit_map: Callable
    antipode_map: Callable
    generators: list
    haar_map: Optional[Callable] = None
    backend: Optional[object] = None
    meta: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        self.alpha_map = _memo(self.alpha_map)
        self.beta_map = _memo(self.beta_map)
        self.coproduct_map = _memo(self.coproduct_map)
        self.counit_map = _memo(self.counit_map)
        self.antipode_map = _memo(self.antipode_map)
        if self.haar_map is not None:
            self.haar_map = _memo(self.haar_map)

    @property
    def field(self) -> Field:
        return self.H.field

    @property
    def finite(self) -> bool:
        return self.H.finite and self.R.finite

    # linear extensions -----------------------------------------------------
    def alpha(self, r: dict) -> dict:
        return linear(self.alpha_map, r)

    def beta(self, r: dict) -> dict:
        return linear(self.beta_map, r)

    def counit(self, h: dict) -> dict:
        return linear(self.counit_map, h)

    def T(self, h: dict) -> dict:
        return linear(self.antipode_map, h)

    def coproduct(self, h: dict) -> dict:
        return linear(self.coproduct_map, h)

    def haar(self, h: dict) -> dict:
        return linear(self.haar_map, h)

    def mul(self, *elems) -> dict:
        return self.H.mul_many(*elems)

    def one(self) -> dict:
        return dict(self.H.unit)

    def unit_label_r(self):
        return self.R.unit

    def with_antipode(self, antipode_map, name=None) -> "ParaHopfInstance":
        return ParaHopfInstance(
            name or self.name, self.kind, self.H, self.R, self.alpha_map, self.beta_map,
            self.coproduct_map, self.counit_map, antipode_map, self.generators,
            self.haar_map, self.backend, dict(self.meta),
        )

    def with_beta(self, beta_map, name=None) -> "ParaHopfInstance":
        return ParaHopfInstance(
            name or self.name, self.kind, self.H, self.R, self.alpha_map, beta_map,
            self.coproduct_map, self.counit_map, self.antipode_map, self.generators,
            self.haar_map, self.backend, dict(self.meta),
        )


# --- groupoids -------------------------------------------------------------

class GroupoidError(InstanceError):
    pass


def pair_groupoid_tables(objects):
    """Tables of the pair groupoid: exactly one morphism x -> y for all x, y."""
    objects = [str(o) for o in objects]
    morphisms = [(f"{x}>{y}", x, y) for x in objects for y in objects]
    compose = {}
    for (g, gs, gt) in morphisms:
        for (h, hs, ht) in morphisms:
            if ht == gs:
                compose[(g, h)] = f"{hs}>{gt}"
    return objects, morphisms, compose


def cyclic_group_tables(n: int):
    """One-object groupoid of Z/n; morphism names g0..g{n-1}, g0 the identity."""
    names = [f"g{i}" for i in range(n)]
    morphisms = [(nm, "*", "*") for nm in names]
    compose = {(f"g{i}", f"g{j}"): f"g{(i + j) % n}" for i in range(n) for j in range(n)}
    return ["*"], morphisms, compose


def build_groupoid(objects, morphisms, compose, field: Field = QQ, name="groupoid") -> ParaHopfInstance:
    """Groupoid algebra kG over the object algebra kS.

    ``morphisms`` is a list of (name, source, target); ``compose[(g, h)]`` is
    the name of g∘h (h first) and must be present exactly when
    target(h) = source(g).
    """
    objects = [str(o) for o in objects]
    if len(set(objects)) != len(objects):
        raise GroupoidError("duplicate objects")
    mor = {}
    for nm, s, t in morphisms:
        nm, s, t = str(nm), str(s), str(t)
        if nm in mor:
            raise GroupoidError(f"duplicate morphism {nm!r}")
        if s not in objects or t not in objects:
            raise GroupoidError(f"morphism {nm!r} has unknown endpoint")
        mor[nm] = Morphism(s, t, nm)
    comp = {}
    for (g, h), gh in compose.items():
        if g not in mor or h not in mor or gh not in mor:
            raise GroupoidError(f"composition entry {g}∘{h}={gh} names an unknown morphism")
        G, Hm, GH = mor[g], mor[h], mor[gh]
        if Hm.target != G.source:
            raise GroupoidError(f"{g}∘{h} listed but not composable")
        if GH.source != Hm.source or GH.target != G.target:
            raise GroupoidError(f"{g}∘{h}={gh} has wrong endpoints")
        comp[(G, Hm)] = GH
    for G in mor.values():
        for Hm in mor.values():
            if Hm.target == G.source and (G, Hm) not in comp:
                raise GroupoidError(f"composition {G.name}∘{Hm.name} missing")
    for (a, b), ab in comp.items():
        for c in mor.values():
            if c.target == b.source:
                if comp[(ab, c)] != comp[(a, comp[(b, c)])]:
                    raise GroupoidError(f"composition not associative at {a.name},{b.name},{c.name}")
    ident = {}
    for X in objects:
        cands = [
            e for e in mor.values()
            if e.source == X and e.target == X
            and all(comp[(e, g)] == g for g in mor.values() if g.target == X)
            and all(comp[(g, e)] == g for g in mor.values() if g.source == X)
        ]
        if len(cands) != 1:
            raise GroupoidError(f"object {X} has no identity morphism")
        ident[X] = cands[0]
    inverse = {}
    for g in mor.values():
        inv = [h for h in mor.values() if h.source == g.target and h.target == g.source
               and comp[(h, g)] == ident[g.source] and comp[(g, h)] == ident[g.target]]
        if not inv:
            raise GroupoidError(f"morphism {g.name} is not invertible")
        inverse[g] = inv[0]

    one = field.one
    unit = {ident[X]: one for X in objects}

    def product(g, h):
        if h.target == g.source:
            return {comp[(g, h)]: one}
        return {}

    H = BasedAlgebra(f"kG[{name}]", field, product, unit, basis=list(mor.values()))
    R = BasedAlgebra(f"kS[{name}]", field, product, unit, basis=list(ident.values()))

    def incl(r):
        return {r: one}

    def haar(g):
        return {g: one} if g in ident.values() else {}

    return ParaHopfInstance(
        name=name,
        kind="groupoid",
        H=H,
        R=R,
        alpha_map=incl,
        beta_map=incl,
        coproduct_map=lambda g: {(g, g): one},
        counit_map=lambda g: {ident[g.target]: one},
        antipode_map=lambda g: {inverse[g]: one},
        generators=[{g: one} for g in H.basis],
        haar_map=haar,
        meta={"objects": objects},
    )


# --- quantum torus ---------------------------------------------------------

class TorusBackend:
    """Normal form on H^{⊗_R n} for the quantum torus.

    Every U-power is pushed into the first slot (x ⊗ U^a y = U^a x ⊗ y; U's
    commute so no q appears).  Canonical keys at level n >= 1 are the tuples
    (U^a V^b1, V^b2, ..., V^bn); level 0 keys are R labels U^a.
    """

    def __init__(self, N=None):
        self.N = N

    def _r(self, e):
        return e % self.N if self.N else e

    def reduce(self, t: tuple):
        a = self._r(sum(x.n for x in t))
        key = (TorusMonomial(a, t[0].m),) + tuple(TorusMonomial(0, x.m) for x in t[1:])
        return key

    def basis(self, level: int):
        if not self.N:
            raise InstanceError("formal torus has an infinite basis")
        if level == 0:
            return [TorusMonomial(a, 0) for a in range(self.N)]
        rng = range(self.N)
        out = []
        for a in rng:
            for bs in itertools.product(rng, repeat=level):
                out.append((TorusMonomial(a, bs[0]),) + tuple(TorusMonomial(0, b) for b in bs[1:]))
        return sorted(out)

    def window(self, level: int, w: int):
        if self.N:
            return self.basis(level)
        rng = range(-w, w + 1)
        if level == 0:
            return [TorusMonomial(a, 0) for a in rng]
        out = []
        for a in rng:
            for bs in itertools.product(rng, repeat=level):
                out.append((TorusMonomial(a, bs[0]),) + tuple(TorusMonomial(0, b) for b in bs[1:]))
        return sorted(out)


def build_quantum_torus(mode: str = "formal-q", N: Optional[int] = None, field: Optional[Field] = None) -> ParaHopfInstance:
    """A_theta over R = k[U, U^-1] (formal q), or its finite surrogate U^N = V^N = 1."""
    if mode == "formal-q":
        if N is not None:
            raise InstanceError("formal-q mode takes no N")
        field = field or RationalFunctionField()
        if not isinstance(field, RationalFunctionField):
            raise InstanceError("formal-q torus needs the formal-q field")
        red = lambda e: e  # noqa: E731
        name = "quantum_torus"
    elif mode == "cyclotomic":
        if not isinstance(N, int) or N < 2:
            raise InstanceError(f"cyclotomic torus needs N >= 2, got {N!r}")
        field = field or CyclotomicField(N)
        if not (isinstance(field, CyclotomicField) and field.n == N):
            raise InstanceError(f"cyclotomic torus needs field cyclotomic:{N}")
        red = lambda e: e % N  # noqa: E731
        name = f"quantum_torus_N{N}"
    else:
        raise InstanceError(f"unknown torus mode {mode!r}")
    one = field.one
    TM = TorusMonomial

    def product(x, y):
        # V^b U^c = q^{-bc} U^c V^b  (from UV = qVU)
        return {TM(red(x.n + y.n), red(x.m + y.m)): field.qpow(-x.m * y.n)}

    def h_window(w):
        return [TM(n, m) for n in range(-w, w + 1) for m in range(-w, w + 1)]

    def r_window(w):
        return [TM(n, 0) for n in range(-w, w + 1)]

    finite = mode == "cyclotomic"
    H = BasedAlgebra(
        "A_theta" if not finite else f"A_theta[N={N}]", field, product, {TM(0, 0): one},
        basis=[TM(n, m) for n in range(N) for m in range(N)] if finite else None,
        window=None if finite else h_window,
        label_parser=parse_torus_monomial,
        window_description="U^nV^m with |n|,|m| <= {w}",
    )
    R = BasedAlgebra(
        "k[U,U^-1]" if not finite else f"k[U]/(U^{N}-1)", field, product, {TM(0, 0): one},
        basis=[TM(n, 0) for n in range(N)] if finite else None,
        window=None if finite else r_window,
        label_parser=parse_torus_monomial,
        window_description="U^n with |n| <= {w}",
    )

    def incl(r):
        return {r: one}

    def mono(n, m):
        return {TM(red(n), red(m)): one}

    gens = [mono(1, 0), mono(-1, 0), mono(0, 1), mono(0, -1)]
    return ParaHopfInstance(
        name=name,
        kind="quantum_torus",
        H=H,
        R=R,
        alpha_map=incl,
        beta_map=incl,
        coproduct_map=lambda x: {(x, TM(0, x.m)): one},
        counit_map=lambda x: {TM(x.n, 0): one},
        antipode_map=lambda x: {TM(x.n, red(-x.m)): field.qpow(x.n * x.m)},
        generators=gens,
        haar_map=lambda x: {TM(x.n, 0): one} if x.m == 0 else {},
        backend=TorusBackend(N if finite else None),
        meta={"mode": mode, "N": N},
    )


# --- sandwich R ⊗ H ⊗ R^op -------------------------------------------------

def build_sandwich(R: BasedAlgebra, Hd: HopfAlgebraData, name="sandwich") -> ParaHopfInstance:
    if not R.finite:
        raise InstanceError("sandwich construction needs a finite base algebra")
    rep = Hd.check(require_involutive=True)
    if not rep.passed:
        raise InstanceError(f"Hopf data rejected: {rep.first_failure().name} {rep.first_failure().witness}")
    field = R.field
    HA = Hd.algebra
    uR, uH = R.unit, HA.unit

    def product(x, y):
        return {
            Sandwich(a, h, b): c
            for (a, h, b), c in expand([
                R.mul_basis(x.left, y.left), HA.mul_basis(x.hopf, y.hopf), R.mul_basis(y.right, x.right)
            ]).items()
        }

    def triples(left, mid, right):
        return {Sandwich(*k): c for k, c in expand([left, mid, right]).items()}

    basis = [Sandwich(a, h, b) for a in R.basis for h in HA.basis for b in R.basis]
    H = BasedAlgebra(f"{R.name}⊗{HA.name}⊗{R.name}^op", field, product, triples(uR, uH, uR), basis=basis)

    def coproduct(x):
        out = {}
        for (h1, h2), c in Hd.cop(x.hopf).items():
            left = triples({x.left: 1}, {h1: 1}, uR)
            right = triples(uR, {h2: 1}, {x.right: 1})
            vadd_into(out, expand([left, right]), c)
        return out

    def counit(x):
        e = Hd.counit[x.hopf]
        return {k: e * c for k, c in R.mul_basis(x.left, x.right).items() if e * c}

    def antipode(x):
        return triples({x.right: 1}, Hd.twisted_antipode(x.hopf), {x.left: 1})

    gens = [triples({a: 1}, uH, uR) for a in R.basis]
    gens += [triples(uR, uH, {b: 1}) for b in R.basis]
    gens += [triples(uR, {h: 1}, uR) for h in HA.basis]
    return ParaHopfInstance(
        name=name,
        kind="sandwich",
        H=H,
        R=R,
        alpha_map=lambda a: triples({a: 1}, uH, uR),
        beta_map=lambda b: triples(uR, uH, {b: 1}),
        coproduct_map=coproduct,
        counit_map=counit,
        antipode_map=antipode,
        generators=_dedupe(gens),
        meta={"hopf": Hd.name, "delta": {str(k): str(v) for k, v in Hd.delta.items()}},
    )


def _dedupe(elems):
    out = []
    for e in elems:
        if e and e not in out:
            out.append(e)
    return out


# --- double crossed product P ⋊ H ⋉ P^op -----------------------------------

def check_module_algebra(P: BasedAlgebra, Hd: HopfAlgebraData, action: Callable) -> CheckReport:
    HA = Hd.algebra
    one = P.field.one
    act = _memo(lambda hp: action(*hp))

    def act_elem(h: dict, p: dict) -> dict:
        out = {}
        for x, c in h.items():
            for y, d in p.items():
                vadd_into(out, act((x, y)), c * d)
        return out

    chk = Checker("module-algebra")
    for p in P.basis:
        chk.expect(act_elem(HA.unit, {p: one}) == {p: one}, law="1(P)=P", p=p)
    for h in HA.basis:
        e = Hd.counit[h]
        chk.expect(act_elem({h: one}, P.unit) == {k: e * c for k, c in P.unit.items() if e * c},
                   law="h(1)=eps(h)1", h=h)
        for h2 in HA.basis:
            for p in P.basis:
                lhs = act_elem(HA.mul_basis(h, h2), {p: one})
                rhs = act_elem({h: one}, act((h2, p)))
                chk.expect(lhs == rhs, law="(hh')(P)=h(h'(P))", triple=(h, h2, p))
        for p, q in itertools.product(P.basis, repeat=2):
            lhs = act_elem({h: one}, P.mul_basis(p, q))
            rhs = {}
            for (a, b), c in Hd.cop(h).items():
                vadd_into(rhs, P.mul(act((a, p)), act((b, q))), c)
            chk.expect(lhs == rhs, law="h(PQ)=h1(P)h2(Q)", triple=(h, p, q), left=lhs, right=rhs)
    return chk.report()


def build_double_crossed(P: BasedAlgebra, Hd: HopfAlgebraData, action: Callable, name="double_crossed") -> ParaHopfInstance:
    """P ⋊ H ⋉ P^op with ``action(h_label, p_label) -> P element``."""
    if not P.finite:
        raise InstanceError("double crossed product needs a finite P")
    rep = Hd.check(require_involutive=True)
    if not rep.passed:
        raise InstanceError(f"Hopf data rejected: {rep.first_failure().name} {rep.first_failure().witness}")
    rep = check_module_algebra(P, Hd, action)
    if not rep.passed:
        raise InstanceError(f"action is not a module-algebra action: {rep.witness}")
    field = P.field
    HA = Hd.algebra
    uP, uH = P.unit, HA.unit
    act = _memo(lambda hp: {k: c for k, c in action(*hp).items() if c})

    def act_elem(h: dict, p: dict) -> dict:
        out = {}
        for x, c in h.items():
            for y, d in p.items():
                vadd_into(out, act((x, y)), c * d)
        return out

    def triples(a, h, b):
        return {Smash(*k): c for k, c in expand([a, h, b]).items()}

    def product(x, y):
        out = {}
        for (h1, h2, h3), c in Hd.iterated(x.hopf, 2).items():
            left = P.mul({x.p: 1}, act((h1, y.p)))
            mid = HA.mul_basis(h2, y.hopf)
            right = P.mul(act((h3, y.q)), {x.q: 1})
            vadd_into(out, triples(left, mid, right), c)
        return out

    basis = [Smash(p, h, q) for p in P.basis for h in HA.basis for q in P.basis]
    H = BasedAlgebra(f"{P.name}⋊{HA.name}⋉{P.name}^op", field, product, triples(uP, uH, uP), basis=basis)

    def coproduct(x):
        out = {}
        for (h1, h2), c in Hd.cop(x.hopf).items():
            vadd_into(out, expand([triples({x.p: 1}, {h1: 1}, uP), triples(uP, {h2: 1}, {x.q: 1})]), c)
        return out

    def counit(x):
        e = Hd.counit[x.hopf]
        return {k: e * c for k, c in P.mul_basis(x.p, x.q).items() if e * c}

    def antipode(x):
        out = {}
        for (h1, h2, h3), c in Hd.iterated(x.hopf, 2).items():
            left = act_elem(Hd.antipode[h3], {x.q: 1})
            mid = Hd.antipode[h2]
            right = act_elem(Hd.twisted_antipode(h1), {x.p: 1})
            vadd_into(out, triples(left, mid, right), c)
        return out

    gens = [triples({p: 1}, uH, uP) for p in P.basis]
    gens += [triples(uP, uH, {q: 1}) for q in P.basis]
    gens += [triples(uP, {h: 1}, uP) for h in HA.basis]
    return ParaHopfInstance(
        name=name,
        kind="double_crossed",
        H=H,
        R=P,
        alpha_map=lambda p: triples({p: 1}, uH, uP),
        beta_map=lambda q: triples(uP, uH, {q: 1}),
        coproduct_map=coproduct,
        counit_map=counit,
        antipode_map=antipode,
        generators=_dedupe(gens),
        meta={"hopf": Hd.name},
    )


# --- base algebras used by the bundled examples ----------------------------

def functions_algebra(n: int, field: Field = QQ) -> BasedAlgebra:
    """Functions on n points; basis of indicator idempotents e1..en."""
    one = field.one
    names = [f"e{i}" for i in range(1, n + 1)]
    return BasedAlgebra(
        f"Fun({n})", field, lambda x, y: {x: one} if x == y else {}, {x: one for x in names}, basis=names
    )


def matrix_units_algebra(n: int, field: Field = QQ, upper: bool = False) -> BasedAlgebra:
    """M_n(k) (or its upper triangular part) on matrix units e_ij."""
    one = field.one
    idx = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if not upper or i <= j]
    names = {ij: f"e{ij[0]}{ij[1]}" for ij in idx}
    rev = {v: k for k, v in names.items()}

    def product(x, y):
        (i, j), (k, l) = rev[x], rev[y]
        return {names[(i, l)]: one} if j == k else {}

    unit = {names[(i, i)]: one for i in range(1, n + 1)}
    return BasedAlgebra(("T" if upper else "M") + f"_{n}", field, product, unit, basis=list(names.values()))


def cyclic_shift_action(P: BasedAlgebra, n: int):
    """Z/n acting on Fun(n) by shifting points: g^k(e_i) = e_{i+k}."""
    one = P.field.one

    def action(k, p):
        i = int(p[1:]) - 1
        return {f"e{(i + k) % n + 1}": one}

    return action


# --- raw structure constants -----------------------------------------------

def build_raw(tables: dict, field: Field = QQ, name="raw") -> ParaHopfInstance:
    """Instance from explicit tables, keyed by label strings.

    ``tables`` has keys H, R (each {basis, unit, mult}), alpha, beta,
    coproduct, counit, antipode and optionally generators and haar.  Values
    are scalars or scalar strings.  No axiom is assumed.
    """
    try:
        H = _algebra_from_table("H", tables["H"], field)
        R = _algebra_from_table("R", tables["R"], field)
    except KeyError as e:
        raise InstanceError(f"raw tables missing {e}") from None
    if R.dim == 0:
        raise InstanceError("base algebra R has dimension 0")
    if H.dim == 0:
        raise InstanceError("total algebra H has dimension 0")

    def elem(alg, d, where):
        out = {}
        for k, c in d.items():
            if k not in alg._by_name:
                raise InstanceError(f"{where}: unknown label {k!r} in {alg.name}")
            try:
                v = field.parse(c) if isinstance(c, str) else field.coerce(c)
            except (ScalarError, ZeroDivisionError, TypeError) as e:
                raise InstanceError(f"{where}: non-scalar entry {c!r}") from e
            if v:
                out[alg._by_name[k]] = v
        return out

    def map_table(key, src, dst):
        tab = tables.get(key)
        if tab is None:
            raise InstanceError(f"raw tables missing {key!r}")
        out = {}
        for k, v in tab.items():
            if k not in src._by_name:
                raise InstanceError(f"{key}: unknown source label {k!r}")
            out[src._by_name[k]] = elem(dst, v, key)
        missing = [str(b) for b in src.basis if b not in out]
        if missing:
            raise InstanceError(f"{key}: no value for {missing}")
        return out

    alpha = map_table("alpha", R, H)
    beta = map_table("beta", R, H)
    counit = map_table("counit", H, R)
    antipode = map_table("antipode", H, H)
    cop = {}
    ctab = tables.get("coproduct")
    if ctab is None:
        raise InstanceError("raw tables missing 'coproduct'")
    for k, terms in ctab.items():
        if k not in H._by_name:
            raise InstanceError(f"coproduct: unknown label {k!r}")
        out = {}
        for entry in terms:
            if len(entry) != 3:
                raise InstanceError(f"coproduct: entries are [left, right, coeff], got {entry!r}")
            a, b, c = entry
            ea = elem(H, {a: 1}, "coproduct")
            eb = elem(H, {b: 1}, "coproduct")
            v = elem(H, {a: c}, "coproduct").get(H._by_name[a])
            if v:
                vadd_into(out, {(next(iter(ea)), next(iter(eb))): v})
        cop[H._by_name[k]] = out
    missing = [str(b) for b in H.basis if b not in cop]
    if missing:
        raise InstanceError(f"coproduct: no value for {missing}")
    gens = [elem(H, g, "generators") if isinstance(g, dict) else elem(H, {g: 1}, "generators")
            for g in tables.get("generators", [str(b) for b in H.basis])]
    haar = map_table("haar", H, R) if "haar" in tables else None
    return ParaHopfInstance(
        name=name,
        kind="raw",
        H=H,
        R=R,
        alpha_map=alpha.__getitem__,
        beta_map=beta.__getitem__,
        coproduct_map=cop.__getitem__,
        counit_map=counit.__getitem__,
        antipode_map=antipode.__getitem__,
        generators=gens,
        haar_map=haar.__getitem__ if haar is not None else None,
    )


def _algebra_from_table(name, tab, field):
    basis = tab.get("basis")
    if not basis:
        raise InstanceError(f"{name}: empty basis")
    basis = [str(b) for b in basis]
    if len(set(basis)) != len(basis):
        raise InstanceError(f"{name}: duplicate basis labels")
    known = set(basis)

    def sc(c):
        try:
            return field.parse(c) if isinstance(c, str) else field.coerce(c)
        except (ScalarError, ZeroDivisionError, TypeError) as e:
            raise InstanceError(f"{name}: non-scalar entry {c!r}") from e

    def el(d):
        for k in d:
            if k not in known:
                raise InstanceError(f"{name}: unknown label {k!r}")
        return {k: sc(c) for k, c in d.items() if sc(c)}

    table = {}
    for entry in tab.get("mult", []):
        if len(entry) != 3:
            raise InstanceError(f"{name}: mult entries are [x, y, {{z: c}}]")
        x, y, val = entry
        if x not in known or y not in known:
            raise InstanceError(f"{name}: unknown label in mult entry {entry!r}")
        table[(x, y)] = el(val)
    return table_algebra(name, field, basis, el(tab.get("unit", {})), table)


def export_tables(inst: ParaHopfInstance) -> dict:
    """Inverse of :func:`build_raw` for finite instances (labels as strings)."""
    if not inst.finite:
        raise InstanceError("only finite instances can be exported as tables")

    def s(d):
        return {str(k): str(v) for k, v in sorted(d.items())}

    def alg(A):
        mult = []
        for x in A.basis:
            for y in A.basis:
                p = A.mul_basis(x, y)
                if p:
                    mult.append([str(x), str(y), s(p)])
        return {"basis": [str(b) for b in A.basis], "unit": s(A.unit), "mult": mult}

    out = {
        "H": alg(inst.H),
        "R": alg(inst.R),
        "alpha": {str(r): s(inst.alpha_map(r)) for r in inst.R.basis},
        "beta": {str(r): s(inst.beta_map(r)) for r in inst.R.basis},
        "coproduct": {
            str(h): [[str(a), str(b), str(c)] for (a, b), c in sorted(inst.coproduct_map(h).items())]
            for h in inst.H.basis
        },
        "counit": {str(h): s(inst.counit_map(h)) for h in inst.H.basis},
        "antipode": {str(h): s(inst.antipode_map(h)) for h in inst.H.basis},
        "generators": [s(g) for g in inst.generators],
    }
    if inst.haar_map is not None:
        out["haar"] = {str(h): s(inst.haar_map(h)) for h in inst.H.basis}
    return out


def hopf_instance(Hd: HopfAlgebraData, antipode: Callable, name=None) -> ParaHopfInstance:
    """R = k instance of a plain Hopf algebra with a candidate para-antipode."""
    field = Hd.field
    one = field.one
    K = ground_field_algebra(field)
    unit = Hd.algebra.unit
    return ParaHopfInstance(
        name=name or f"hopf[{Hd.name}]",
        kind="hopf",
        H=Hd.algebra,
        R=K,
        alpha_map=lambda r: dict(unit),
        beta_map=lambda r: dict(unit),
        coproduct_map=Hd.cop,
        counit_map=lambda h: {"1": Hd.counit[h]} if Hd.counit[h] else {},
        antipode_map=antipode,
        generators=[{h: one} for h in Hd.basis],
    )


def instance_summary(inst: ParaHopfInstance) -> dict:
    return {
        "name": inst.name,
        "kind": inst.kind,
        "field": inst.field.name,
        "dim_H": inst.H.dim,
        "dim_R": inst.R.dim,
        "finite": inst.finite,
    }


__all__ = [
    "AlgebraError",
    "GroupoidError",
    "HopfAlgebraData",
    "InstanceError",
    "ParaHopfInstance",
    "TorusBackend",
    "build_double_crossed",
    "build_groupoid",
    "build_quantum_torus",
    "build_raw",
    "build_sandwich",
    "check_module_algebra",
    "cyclic_group_tables",
    "cyclic_shift_action",
    "expand",
    "export_tables",
    "functions_algebra",
    "ground_field_algebra",
    "group_algebra",
    "hopf_instance",
    "matrix_units_algebra",
    "pair_groupoid_tables",
    "sweedler",
    "trivial_hopf",
]
