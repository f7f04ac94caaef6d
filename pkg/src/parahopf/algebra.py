"""Based associative algebras.

An algebra is given by a basis (a finite list, or a window enumerator when the
basis is infinite), a product rule on pairs of basis labels and a unit.
Elements are sparse dicts ``{label: scalar}``; :class:`Element` wraps such a
dict together with its parent for the public API.
"""

from __future__ import annotations

import itertools
import re
from typing import Callable, NamedTuple, Optional

from .linalg import vadd_into
from .reports import Checker, CheckReport
from .scalars import Field


class AlgebraError(ValueError):
    pass


# ---------------------------------------------------------------------------
# basis labels
# ---------------------------------------------------------------------------

class Morphism(NamedTuple):
    """Morphism of a finite groupoid."""
    source: str
    target: str
    name: str

    def __str__(self):
        return self.name


class TorusMonomial(NamedTuple):
    """U^n V^m in normal order."""
    n: int
    m: int

    def __str__(self):
        parts = []
        for sym, e in (("U", self.n), ("V", self.m)):
            if e == 1:
                parts.append(sym)
            elif e:
                parts.append(f"{sym}^{e}")
        return "".join(parts) or "1"


class Sandwich(NamedTuple):
    """a ⊗ h ⊗ b in R ⊗ H ⊗ R^op."""
    left: object
    hopf: object
    right: object

    def __str__(self):
        return f"[{self.left}|{self.hopf}|{self.right}]"


class Smash(NamedTuple):
    """P ⋊ h ⋉ Q in the double crossed product."""
    p: object
    hopf: object
    q: object

    def __str__(self):
        return f"<{self.p}|{self.hopf}|{self.q}>"


_TORUS_RE = re.compile(r"^(?:U(?:\^(-?\d+))?)?(?:V(?:\^(-?\d+))?)?$")


def parse_torus_monomial(text: str) -> TorusMonomial:
    text = text.replace(" ", "")
    if text == "1":
        return TorusMonomial(0, 0)
    m = _TORUS_RE.match(text)
    if not m or not text:
        raise AlgebraError(f"not a torus monomial: {text!r}")
    n = 0 if "U" not in text else int(m.group(1) or 1)
    e = 0 if "V" not in text else int(m.group(2) or 1)
    return TorusMonomial(n, e)


# ---------------------------------------------------------------------------
# algebras
# ---------------------------------------------------------------------------

class BasedAlgebra:
    """Associative unital algebra presented on a basis.

    ``product(x, y)`` returns the product of two basis labels as a sparse
    dict.  For infinite bases pass ``basis=None`` and a ``window`` callable
    returning all labels of size at most ``w``.
    """

    def __init__(
        self,
        name: str,
        field: Field,
        product: Callable,
        unit: dict,
        basis: Optional[list] = None,
        window: Optional[Callable] = None,
        label_parser: Optional[Callable] = None,
        window_description: str = "label size <= {w}",
    ):
        self.name = name
        self.field = field
        self._product = product
        self.unit = dict(unit)
        self.basis = sorted(basis) if basis is not None else None
        self._window = window
        self._label_parser = label_parser
        self.window_description = window_description
        self._cache = {}
        if self.basis is not None:
            self._index = {b: i for i, b in enumerate(self.basis)}
            self._by_name = {str(b): b for b in self.basis}
            if len(self._by_name) != len(self.basis):
                raise AlgebraError(f"basis labels of {name} are not distinct as strings")
        elif window is None:
            raise AlgebraError("infinite algebra needs a window enumerator")

    @property
    def finite(self) -> bool:
        return self.basis is not None

    @property
    def dim(self):
        return len(self.basis) if self.finite else None

    def window(self, w: int) -> list:
        if self.finite:
            return list(self.basis)
        return sorted(self._window(w))

    def describe_window(self, w: int) -> Optional[str]:
        if self.finite:
            return None
        return f"{self.name}: " + self.window_description.format(w=w)

    def index(self, label) -> int:
        return self._index[label]

    def parse_label(self, text):
        if self.finite:
            try:
                return self._by_name[text]
            except KeyError:
                raise AlgebraError(f"unknown basis label {text!r} in {self.name}") from None
        if self._label_parser is None:
            raise AlgebraError(f"{self.name} cannot parse labels")
        return self._label_parser(text)

    def mul_basis(self, x, y) -> dict:
        key = (x, y)
        hit = self._cache.get(key)
        if hit is None:
            hit = {k: c for k, c in self._product(x, y).items() if c}
            self._cache[key] = hit
        return hit

    def mul(self, a: dict, b: dict) -> dict:
        out = {}
        for x, c in a.items():
            for y, d in b.items():
                cd = c * d
                if cd:
                    vadd_into(out, self.mul_basis(x, y), cd)
        return out

    def mul_many(self, *elems: dict) -> dict:
        out = dict(self.unit)
        for e in elems:
            out = self.mul(out, e)
        return out

    def element(self, data=None) -> "Element":
        if data is None:
            return Element(self, {})
        if isinstance(data, dict):
            return Element(self, {k: self.field.coerce(c) for k, c in data.items() if c})
        return Element(self, {data: self.field.one})

    def one(self) -> "Element":
        return Element(self, self.unit)

    def __repr__(self):
        return f"BasedAlgebra({self.name!r}, dim={self.dim})"


class Element:
    """Finite linear combination of basis labels of a fixed parent algebra."""

    __slots__ = ("parent", "coeffs")

    def __init__(self, parent: BasedAlgebra, coeffs: dict):
        self.parent = parent
        self.coeffs = {k: c for k, c in coeffs.items() if c}

    def _check(self, other):
        if not isinstance(other, Element):
            return None
        if other.parent is not self.parent:
            raise AlgebraError(f"parent mismatch: {self.parent.name} vs {other.parent.name}")
        return other

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return elem_combine(self, o, 1)

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return elem_combine(self, o, -1)

    def __neg__(self):
        return Element(self.parent, {k: -c for k, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return elem_mul(self, other)
        c = self.parent.field.coerce(other)
        return Element(self.parent, {k: c * x for k, x in self.coeffs.items()})

    def __rmul__(self, other):
        c = self.parent.field.coerce(other)
        return Element(self.parent, {k: c * x for k, x in self.coeffs.items()})

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.parent is other.parent and self.coeffs == other.coeffs
        if other == 0:
            return not self.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def support(self):
        return sorted(self.coeffs)

    def __repr__(self):
        from .reports import format_vector

        return format_vector(self.coeffs)


def elem_combine(x: Element, y: Element, c=1) -> Element:
    """x + c*y."""
    if x.parent is not y.parent:
        raise AlgebraError(f"parent mismatch: {x.parent.name} vs {y.parent.name}")
    out = dict(x.coeffs)
    vadd_into(out, y.coeffs, x.parent.field.coerce(c))
    return Element(x.parent, out)


def elem_mul(x: Element, y: Element) -> Element:
    if x.parent is not y.parent:
        raise AlgebraError(f"parent mismatch: {x.parent.name} vs {y.parent.name}")
    return Element(x.parent, x.parent.mul(x.coeffs, y.coeffs))


def check_associativity_unit(A: BasedAlgebra, window: int = 2) -> CheckReport:
    """Associativity on all basis triples and unit laws on all basis labels.

    Exhaustive for finite algebras; on window labels otherwise.
    """
    labels = A.window(window)
    chk = Checker(f"associativity-unit[{A.name}]", A.describe_window(window))
    for x in labels:
        xd = {x: A.field.one}
        chk.expect(A.mul(A.unit, xd) == xd, law="left unit", x=x)
        chk.expect(A.mul(xd, A.unit) == xd, law="right unit", x=x)
    triples = 0
    for x, y, z in itertools.product(labels, repeat=3):
        triples += 1
        xy = A.mul_basis(x, y)
        yz = A.mul_basis(y, z)
        left = A.mul(xy, {z: A.field.one})
        right = A.mul({x: A.field.one}, yz)
        chk.expect(left == right, law="associativity", triple=(x, y, z), left=left, right=right)
    return chk.report(detail=f"{triples} triples checked")


def linear(f: Callable, elem: dict) -> dict:
    """Extend a map on basis labels (returning sparse dicts) linearly."""
    out = {}
    for x, c in elem.items():
        vadd_into(out, f(x), c)
    return out


def table_algebra(name, field, basis, unit, table) -> BasedAlgebra:
    """Algebra from a structure-constant table ``{(x, y): {z: c}}``; missing pairs multiply to 0."""
    table = {k: dict(v) for k, v in table.items()}

    def product(x, y):
        return table.get((x, y), {})

    return BasedAlgebra(name, field, product, unit, basis=list(basis))
