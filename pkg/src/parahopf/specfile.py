"""Instance description files.

A spec is a JSON document validated with pydantic (unknown keys rejected),
then turned into a :class:`ParaHopfInstance`.  Scalars are integers or
strings in the field's syntax ("1/2", "q^-1", "-q-1").

Example::

    {"schema": 1, "name": "pair", "kind": "groupoid",
     "groupoid": {"preset": "pair", "objects": ["1", "2"]}}
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, PositiveInt, ValidationError, model_validator

from .algebra import AlgebraError
from .instances import (
    InstanceError,
    ParaHopfInstance,
    build_double_crossed,
    build_groupoid,
    build_quantum_torus,
    build_raw,
    build_sandwich,
    cyclic_group_tables,
    cyclic_shift_action,
    functions_algebra,
    ground_field_algebra,
    group_algebra,
    matrix_units_algebra,
    pair_groupoid_tables,
    sweedler,
    trivial_hopf,
    _algebra_from_table,
)
from .scalars import CyclotomicField, RationalFunctionField, ScalarError, get_field

SCHEMA_VERSION = 1

Scalar = Union[int, str]
Vector = Dict[str, Scalar]


class SpecError(ValueError):
    """Input or schema error (CLI exit code 2)."""


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class AlgebraSpec(_Strict):
    preset: Optional[Literal["k", "functions", "matrix", "upper_triangular"]] = None
    n: Optional[PositiveInt] = None
    basis: Optional[List[str]] = None
    unit: Optional[Vector] = None
    mult: Optional[List[Tuple[str, str, Vector]]] = None

    @model_validator(mode="after")
    def _one_form(self):
        if (self.preset is None) == (self.basis is None):
            raise ValueError("give either a preset or an explicit basis/unit/mult table")
        if self.preset in ("functions", "matrix", "upper_triangular") and self.n is None:
            raise ValueError(f"preset {self.preset!r} needs n")
        return self


class HopfSpec(_Strict):
    preset: Literal["group", "trivial", "sweedler"]
    order: Optional[PositiveInt] = None
    delta_generator: Optional[Scalar] = Field(None, description="δ(g) on the generator g (group, sweedler)")

    @model_validator(mode="after")
    def _order(self):
        if self.preset == "group" and self.order is None:
            raise ValueError("group preset needs order")
        return self


class GroupoidSpec(_Strict):
    preset: Optional[Literal["pair", "cyclic_group"]] = None
    objects: Optional[List[str]] = None
    order: Optional[PositiveInt] = None
    morphisms: Optional[List[Tuple[str, str, str]]] = None
    compose: Optional[List[Tuple[str, str, str]]] = None

    @model_validator(mode="after")
    def _shape(self):
        if self.preset == "pair" and not self.objects:
            raise ValueError("pair groupoid needs objects")
        if self.preset == "cyclic_group" and self.order is None:
            raise ValueError("cyclic_group groupoid needs order")
        if self.preset is None and (self.objects is None or self.morphisms is None or self.compose is None):
            raise ValueError("explicit groupoid needs objects, morphisms and compose")
        return self


class TorusSpec(_Strict):
    mode: Literal["formal-q", "cyclotomic"] = "formal-q"
    N: Optional[int] = None


class SandwichSpec(_Strict):
    base: AlgebraSpec
    hopf: HopfSpec


class DoubleCrossedSpec(_Strict):
    base: AlgebraSpec
    hopf: HopfSpec
    action: Literal["cyclic_shift"] = "cyclic_shift"


class RawSpec(_Strict):
    H: dict
    R: dict
    alpha: dict
    beta: dict
    coproduct: dict
    counit: dict
    antipode: dict
    generators: Optional[list] = None
    haar: Optional[dict] = None


class CandidateMap(_Strict):
    name: str
    level: int = Field(2, ge=1, le=6)
    permutation: List[int]

    @model_validator(mode="after")
    def _perm(self):
        if sorted(self.permutation) != list(range(self.level)):
            raise ValueError(f"permutation must rearrange 0..{self.level - 1}")
        return self


class Windows(_Strict):
    verify: PositiveInt = 3
    relation: PositiveInt = 1
    closure_length: PositiveInt = 4


KINDS = ("groupoid", "quantum_torus", "sandwich", "double_crossed", "raw")


class InstanceSpec(_Strict):
    schema_: Literal[1] = Field(SCHEMA_VERSION, alias="schema")
    name: str
    kind: Literal["groupoid", "quantum_torus", "sandwich", "double_crossed", "raw"]
    description: Optional[str] = None
    field: Optional[str] = None
    groupoid: Optional[GroupoidSpec] = None
    quantum_torus: Optional[TorusSpec] = None
    sandwich: Optional[SandwichSpec] = None
    double_crossed: Optional[DoubleCrossedSpec] = None
    raw: Optional[RawSpec] = None
    antipode: Optional[Union[Literal["identity"], Dict[str, Vector]]] = None
    generators: Optional[List[Vector]] = None
    haar: Optional[Union[Literal["default", "none"], Dict[str, Vector]]] = "default"
    windows: Windows = Windows()
    candidate_maps: List[CandidateMap] = []

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    @model_validator(mode="after")
    def _payload(self):
        for k in KINDS:
            present = getattr(self, k) is not None
            if present != (k == self.kind):
                if present:
                    raise ValueError(f"payload {k!r} given for kind {self.kind!r}")
                raise ValueError(f"kind {self.kind!r} needs a {self.kind!r} payload")
        return self


def load_spec(path) -> InstanceSpec:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise SpecError(f"cannot read spec file: {e}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError(f"{path}: invalid JSON: {e}") from None
    return parse_spec(data, str(path))


def parse_spec(data, where="spec") -> InstanceSpec:
    try:
        return InstanceSpec.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        loc = ".".join(str(x) for x in first["loc"]) or "<root>"
        raise SpecError(f"{where}: {loc}: {first['msg']} ({e.error_count()} error(s))") from None


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def _field_for(spec: InstanceSpec, override: Optional[str]):
    name = override or spec.field
    if name is None:
        if spec.kind == "quantum_torus":
            t = spec.quantum_torus
            name = "formal-q" if t.mode == "formal-q" else f"cyclotomic:{t.N}"
        else:
            name = "rational"
    try:
        return get_field(name)
    except ScalarError as e:
        raise SpecError(str(e)) from None


def _scalar(field, v):
    try:
        return field.parse(v) if isinstance(v, str) else field.coerce(v)
    except (ScalarError, ZeroDivisionError, TypeError, ValueError) as e:
        raise SpecError(f"bad scalar {v!r}: {e}") from None


def _algebra(spec: AlgebraSpec, field):
    if spec.preset == "k":
        return ground_field_algebra(field)
    if spec.preset == "functions":
        return functions_algebra(spec.n, field)
    if spec.preset == "matrix":
        return matrix_units_algebra(spec.n, field)
    if spec.preset == "upper_triangular":
        return matrix_units_algebra(spec.n, field, upper=True)
    return _algebra_from_table("base", {"basis": spec.basis, "unit": spec.unit or {}, "mult": spec.mult or []}, field)


def _hopf(spec: HopfSpec, field):
    dg = None if spec.delta_generator is None else _scalar(field, spec.delta_generator)
    if spec.preset == "group":
        return group_algebra(spec.order, field, dg)
    if spec.preset == "trivial":
        return trivial_hopf(field)
    return sweedler(field, -1 if dg is None else dg)


def _vector(alg, field, vec: dict, where: str) -> dict:
    out = {}
    for k, v in vec.items():
        try:
            label = alg.parse_label(k)
        except AlgebraError as e:
            raise SpecError(f"{where}: {e}") from None
        c = _scalar(field, v)
        if c:
            out[label] = out.get(label, 0) + c
    return {k: c for k, c in out.items() if c}


def build_instance(spec: InstanceSpec, field_override: Optional[str] = None) -> ParaHopfInstance:
    field = _field_for(spec, field_override)
    try:
        inst = _build(spec, field)
    except (InstanceError, AlgebraError, ScalarError) as e:
        raise SpecError(f"{spec.name}: {e}") from None
    if spec.antipode is not None:
        if spec.antipode == "identity":
            one = field.one
            inst = inst.with_antipode(lambda h: {h: one})
        else:
            if not inst.H.finite:
                raise SpecError("antipode tables need a finite H")
            table = {inst.H.parse_label(k): _vector(inst.H, field, v, "antipode") for k, v in spec.antipode.items()}
            missing = [str(b) for b in inst.H.basis if b not in table]
            if missing:
                raise SpecError(f"antipode: no value for {missing}")
            inst = inst.with_antipode(table.__getitem__)
    if spec.generators is not None:
        inst.generators = [_vector(inst.H, field, g, "generators") for g in spec.generators]
    if spec.haar == "none":
        inst.haar_map = None
    elif isinstance(spec.haar, dict):
        if not inst.H.finite:
            raise SpecError("haar tables need a finite H")
        table = {inst.H.parse_label(k): _vector(inst.R, field, v, "haar") for k, v in spec.haar.items()}
        inst.haar_map = lambda h: table.get(h, {})
    inst.name = spec.name
    inst.meta["spec"] = spec.kind
    return inst


def _build(spec: InstanceSpec, field) -> ParaHopfInstance:
    if spec.kind == "groupoid":
        g = spec.groupoid
        if g.preset == "pair":
            tables = pair_groupoid_tables(g.objects)
        elif g.preset == "cyclic_group":
            tables = cyclic_group_tables(g.order)
        else:
            tables = (g.objects, g.morphisms, {(a, b): c for a, b, c in g.compose})
        return build_groupoid(*tables, field=field, name=spec.name)
    if spec.kind == "quantum_torus":
        t = spec.quantum_torus
        if t.mode == "formal-q" and not isinstance(field, RationalFunctionField):
            raise SpecError(f"the formal torus needs field formal-q, not {field.name}")
        if t.mode == "cyclotomic" and not (isinstance(field, CyclotomicField) and field.n == t.N):
            raise SpecError(f"the finite torus with N={t.N} needs field cyclotomic:{t.N}, not {field.name}")
        return build_quantum_torus(t.mode, t.N, field)
    if spec.kind == "sandwich":
        return build_sandwich(_algebra(spec.sandwich.base, field), _hopf(spec.sandwich.hopf, field), spec.name)
    if spec.kind == "double_crossed":
        d = spec.double_crossed
        P = _algebra(d.base, field)
        Hd = _hopf(d.hopf, field)
        if d.base.preset != "functions" or d.hopf.preset != "group" or d.hopf.order != d.base.n:
            raise SpecError("cyclic_shift action needs base functions(n) and a group Hopf algebra of order n")
        return build_double_crossed(P, Hd, cyclic_shift_action(P, d.base.n), spec.name)
    raw = spec.raw.model_dump(exclude_none=True)
    return build_raw(raw, field, spec.name)


def load_instance(path, field_override: Optional[str] = None):
    spec = load_spec(path)
    return spec, build_instance(spec, field_override)


def bundled_specs() -> Dict[str, Path]:
    """Spec files shipped with the package, keyed by file stem."""
    root = Path(__file__).parent / "data"
    return {p.stem: p for p in sorted(root.glob("*.json"))}


__all__ = [
    "InstanceSpec",
    "SCHEMA_VERSION",
    "SpecError",
    "build_instance",
    "bundled_specs",
    "load_instance",
    "load_spec",
    "parse_spec",
]
