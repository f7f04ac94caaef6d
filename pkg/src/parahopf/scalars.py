"""Exact scalar fields.

Three fields are supported:

* ``RationalField``  -- Q, elements are plain :class:`fractions.Fraction`.
* ``RationalFunctionField`` -- Q(q), q a formal indeterminate.  Laurent
  monomials such as ``q^-2`` are ordinary elements.
* ``CyclotomicField(N)`` -- Q[q]/Phi_N(q), q a primitive N-th root of unity.

Every element has a unique canonical representation, so equality and hashing
are structural.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational


class ScalarError(ValueError):
    pass


class FieldMismatchError(ScalarError):
    pass


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q: tuples of Fraction, lowest degree first
# ---------------------------------------------------------------------------

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def pneg(a):
    return tuple(-c for c in a)


def psub(a, b):
    return padd(a, pneg(b))


def pmul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def pscale(a, c):
    if not c:
        return ()
    return tuple(x * c for x in a)


def pdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    lead = b[-1]
    db = len(b) - 1
    quot = [Fraction(0)] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        c = a[-1] / lead
        k = len(a) - 1 - db
        quot[k] = c
        for i, y in enumerate(b):
            a[k + i] -= c * y
        a = list(_trim(a))
    return _trim(quot), tuple(a)


def pmonic(a):
    if not a:
        return a
    lead = a[-1]
    if lead == 1:
        return a
    return tuple(c / lead for c in a)


def pgcd(a, b):
    while b:
        _, r = pdivmod(a, b)
        a, b = b, r
    return pmonic(a)


def pxgcd(a, b):
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = (Fraction(1),), ()
    t0, t1 = (), (Fraction(1),)
    while r1:
        q, r = pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1))
        t0, t1 = t1, psub(t0, pmul(q, t1))
    lead = r0[-1]
    inv = 1 / lead
    return pscale(r0, inv), pscale(s0, inv), pscale(t0, inv)


def _low_degree(p):
    for i, c in enumerate(p):
        if c:
            return i
    return None


def _poly_str(p, var="q"):
    if not p:
        return "0"
    terms = []
    for e in range(len(p) - 1, -1, -1):
        c = p[e]
        if not c:
            continue
        terms.append(_term_str(c, e, var))
    return _join_terms(terms)


def _term_str(c, e, var):
    if e == 0:
        return str(c)
    mono = var if e == 1 else f"{var}^{e}"
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{c}*{mono}"


def _join_terms(terms):
    out = terms[0]
    for t in terms[1:]:
        if t.startswith("-"):
            out += " - " + t[1:]
        else:
            out += " + " + t
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Phi_n as a coefficient tuple (lowest degree first)."""
    if n < 1:
        raise ScalarError(f"invalid cyclotomic index {n}")
    num = tuple([Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)])
    for d in range(1, n):
        if n % d == 0:
            num, r = pdivmod(num, cyclotomic_polynomial(d))
            assert not r
    return num


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------

class Field:
    """Base class; concrete fields are hashable value objects."""

    name = "field"
    has_q = False

    def coerce(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def qpow(self, e: int):
        raise ScalarError(f"the field {self.name} has no parameter q")

    def parse(self, text):
        """Parse an integer, a Fraction or an expression string in q."""
        if isinstance(text, (int, Fraction)):
            return self.coerce(text)
        if not isinstance(text, str):
            raise ScalarError(f"not a scalar: {text!r}")
        return _Parser(text, self).parse()

    def format(self, x) -> str:
        return str(x)

    def __repr__(self):
        return f"<{self.name}>"

    def __eq__(self, other):
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self):
        return hash(self.name)


class RationalField(Field):
    name = "rational"

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (int, Rational)):
            return Fraction(x)
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, _QElement):
            raise FieldMismatchError(f"cannot coerce {x.field.name} element into rational field")
        raise ScalarError(f"cannot coerce {x!r} into the rational field")


class _QElement:
    """Common machinery for elements of the q-fields."""

    __slots__ = ()

    def _other(self, other):
        if isinstance(other, _QElement):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field.name} vs {other.field.name}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.coerce(other)
        return None

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        out = self.field.one
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        try:
            o = self._other(other)
        except FieldMismatchError:
            return False
        if o is None:
            return NotImplemented
        return self._key() == o._key()

    def __hash__(self):
        k = self._key()
        if self._is_rational_constant():
            return hash(self._constant_value())
        return hash(k)

    def __repr__(self):
        return f"{type(self).__name__}({self})"


class RationalFunction(_QElement):
    """num/den in Q(q) with den monic and gcd(num, den) = 1."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den=(Fraction(1),), _reduced=False):
        self.field = field
        if not _reduced:
            num, den = _rf_normalize(_trim(num), _trim(den))
        self.num = num
        self.den = den

    def _key(self):
        return (self.num, self.den)

    def _is_rational_constant(self):
        return len(self.den) == 1 and len(self.num) <= 1

    def _constant_value(self):
        return self.num[0] if self.num else Fraction(0)

    def __bool__(self):
        return bool(self.num)

    def __neg__(self):
        return RationalFunction(self.field, pneg(self.num), self.den, _reduced=True)

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.field, padd(self.num, o.num), self.den)
        return RationalFunction(
            self.field,
            padd(pmul(self.num, o.den), pmul(o.num, self.den)),
            pmul(self.den, o.den),
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._scale(other)
        o = self._other(other)
        if o is None:
            return NotImplemented
        if o._is_rational_constant():
            return self._scale(o._constant_value())
        if self._is_rational_constant():
            return o._scale(self._constant_value())
        return RationalFunction(self.field, pmul(self.num, o.num), pmul(self.den, o.den))

    def _scale(self, c):
        if c == 1:
            return self
        if not c:
            return RationalFunction(self.field, (), (Fraction(1),), _reduced=True)
        return RationalFunction(self.field, tuple(c * x for x in self.num), self.den, _reduced=True)

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.field, self.den, self.num)

    def __str__(self):
        if len(self.den) == 1:
            return _poly_str(self.num)
        k = len(self.den) - 1
        if all(c == 0 for c in self.den[:-1]):
            # Laurent form: den = q^k
            terms = []
            for e in range(len(self.num) - 1, -1, -1):
                c = self.num[e]
                if c:
                    terms.append(_term_str(c, e - k, "q") if e - k != 0 else str(c))
            return _join_terms(terms) if terms else "0"
        return f"({_poly_str(self.num)})/({_poly_str(self.den)})"


def _rf_normalize(num, den):
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return (), (Fraction(1),)
    lowd = _low_degree(den)
    if lowd == len(den) - 1:
        # monomial denominator: cancel powers of q only
        lown = _low_degree(num)
        s = min(lowd, lown)
        lead = den[-1]
        num = num[s:]
        den = den[s:]
        if lead != 1:
            num = tuple(c / lead for c in num)
            den = tuple(c / lead for c in den)
        return num, den
    g = pgcd(num, den)
    if len(g) > 1:
        num, _ = pdivmod(num, g)
        den, _ = pdivmod(den, g)
    lead = den[-1]
    if lead != 1:
        num = tuple(c / lead for c in num)
        den = tuple(c / lead for c in den)
    return num, den


class RationalFunctionField(Field):
    name = "formal-q"
    has_q = True

    def coerce(self, x):
        if isinstance(x, RationalFunction):
            if x.field != self:
                raise FieldMismatchError(f"{x.field.name} vs {self.name}")
            return x
        if isinstance(x, _QElement):
            raise FieldMismatchError(f"{x.field.name} vs {self.name}")
        if isinstance(x, str):
            return self.parse(x)
        x = Fraction(x)
        return RationalFunction(self, (x,) if x else (), (Fraction(1),), _reduced=True)

    def qpow(self, e: int):
        if e >= 0:
            num = tuple([Fraction(0)] * e + [Fraction(1)])
            return RationalFunction(self, num, (Fraction(1),), _reduced=True)
        den = tuple([Fraction(0)] * (-e) + [Fraction(1)])
        return RationalFunction(self, (Fraction(1),), den, _reduced=True)


class CyclotomicNumber(_QElement):
    """Element of Q[q]/Phi_N: coefficient tuple of length exactly phi(N)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def _key(self):
        return self.coeffs

    def _is_rational_constant(self):
        return all(c == 0 for c in self.coeffs[1:])

    def _constant_value(self):
        return self.coeffs[0]

    def __bool__(self):
        return any(self.coeffs)

    def __neg__(self):
        return CyclotomicNumber(self.field, tuple(-c for c in self.coeffs))

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return CyclotomicNumber(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._scale(other)
        o = self._other(other)
        if o is None:
            return NotImplemented
        if o._is_rational_constant():
            return self._scale(o.coeffs[0])
        if self._is_rational_constant():
            return o._scale(self.coeffs[0])
        return self.field._reduce(pmul(_trim(self.coeffs), _trim(o.coeffs)))

    def _scale(self, c):
        if c == 1:
            return self
        return CyclotomicNumber(self.field, tuple(c * x for x in self.coeffs))

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero")
        g, s, _ = pxgcd(_trim(self.coeffs), self.field.modulus)
        assert g == (Fraction(1),)
        return self.field._reduce(s)

    def __str__(self):
        return _poly_str(_trim(self.coeffs))


class CyclotomicField(Field):
    has_q = True

    def __init__(self, n: int):
        if not isinstance(n, int) or n < 2:
            raise ScalarError(f"cyclotomic field needs N >= 2, got {n!r}")
        self.n = n
        self.name = f"cyclotomic:{n}"
        self.modulus = cyclotomic_polynomial(n)
        self.degree = len(self.modulus) - 1
        # reductions of q^k for 0 <= k < 2*degree - 1
        self._powers = []
        for k in range(max(2 * self.degree - 1, n)):
            mono = tuple([Fraction(0)] * k + [Fraction(1)])
            _, r = pdivmod(mono, self.modulus)
            self._powers.append(self._pad(r))

    def _pad(self, p):
        p = tuple(p)
        return p + (Fraction(0),) * (self.degree - len(p))

    def _reduce(self, p):
        if len(p) <= self.degree:
            return CyclotomicNumber(self, self._pad(p))
        out = [Fraction(0)] * self.degree
        for k, c in enumerate(p):
            if not c:
                continue
            if k < self.degree:
                out[k] += c
            else:
                for i, v in enumerate(self._powers[k]):
                    if v:
                        out[i] += c * v
        return CyclotomicNumber(self, tuple(out))

    def coerce(self, x):
        if isinstance(x, CyclotomicNumber):
            if x.field != self:
                raise FieldMismatchError(f"{x.field.name} vs {self.name}")
            return x
        if isinstance(x, _QElement):
            raise FieldMismatchError(f"{x.field.name} vs {self.name}")
        if isinstance(x, str):
            return self.parse(x)
        x = Fraction(x)
        return CyclotomicNumber(self, (x,) + (Fraction(0),) * (self.degree - 1))

    def qpow(self, e: int):
        return CyclotomicNumber(self, self._powers[e % self.n])


QQ = RationalField()


@lru_cache(maxsize=None)
def get_field(name: str) -> Field:
    """Look up a field by its CLI name: rational, formal-q, cyclotomic:N."""
    if name in ("rational", "Q", "QQ"):
        return QQ
    if name in ("formal-q", "rational-function"):
        return RationalFunctionField()
    m = re.fullmatch(r"cyclotomic:(\d+)", name)
    if m:
        return CyclotomicField(int(m.group(1)))
    raise ScalarError(f"unknown field {name!r}")


def qpow(e: int, field: Field):
    return field.qpow(e)


def scalar_arith(a, b, op: str, field: Field = None):
    """Single entry point for the four field operations (b ignored for unary ops)."""
    if field is None:
        field = getattr(a, "field", QQ)
    a = field.coerce(a)
    if op == "neg":
        return -a
    if op == "inv":
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if isinstance(a, Fraction) else a.inverse()
    b = field.coerce(b)
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ScalarError(f"unknown operation {op!r}")


def normalize(x, field: Field):
    """Canonical form: rebuild the element from its components."""
    x = field.coerce(x)
    if isinstance(x, RationalFunction):
        return RationalFunction(field, x.num, x.den)
    if isinstance(x, CyclotomicNumber):
        return field._reduce(_trim(x.coeffs))
    return Fraction(x.numerator, x.denominator)


# ---------------------------------------------------------------------------
# expression parser: integers, q, + - * / ^ and parentheses
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(q)|(\*\*|[-+*/^()]))")


class _Parser:
    def __init__(self, text, field):
        self.text = text
        self.field = field
        self.toks = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ScalarError(f"cannot parse scalar {self.text!r}")
            num, q, op = m.groups()
            if num is not None:
                self.toks.append(("num", int(num)))
            elif q is not None:
                self.toks.append(("q", None))
            else:
                self.toks.append(("op", "^" if op == "**" else op))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self):
        if not self.toks:
            raise ScalarError("empty scalar expression")
        v = self.expr()
        if self.i != len(self.toks):
            raise ScalarError(f"trailing input in scalar {self.text!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, op = self.take()
            w = self.unary()
            if op == "*":
                v = v * w
            else:
                if not w:
                    raise ZeroDivisionError(f"division by zero in {self.text!r}")
                v = v / w
        return v

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            kind, e = self.take()
            if kind != "num":
                raise ScalarError(f"exponent must be an integer in {self.text!r}")
            e *= sign
            if e < 0 and not v:
                raise ZeroDivisionError(f"zero to a negative power in {self.text!r}")
            if isinstance(v, Fraction):
                v = v ** e
            else:
                v = v ** e
        return v

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.field.coerce(val)
        if kind == "q":
            return self.field.qpow(1)
        if (kind, val) == ("op", "("):
            v = self.expr()
            if self.take() != ("op", ")"):
                raise ScalarError(f"unbalanced parentheses in {self.text!r}")
            return v
        raise ScalarError(f"unexpected token in scalar {self.text!r}")
