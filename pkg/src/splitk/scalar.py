"""Exact base rings: ZZ, QQ, ZZ/p and graded ZZ[x].

Matrices store *raw* canonical values and call the ring's methods directly;
``Scalar`` wraps a raw value together with its ring for the public API.

Raw value conventions:

* ``Integers``         -- ``int``
* ``Rationals``        -- ``fractions.Fraction`` (always reduced, positive denominator)
* ``IntegersMod(p)``   -- ``int`` in ``range(p)``
* ``PolyOverIntegers`` -- tuple of ``(exponent, coefficient)`` pairs, ascending
  exponents, no zero coefficients; ``()`` is zero.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotAUnit, RingMismatch


class Homogeneity(enum.Enum):
    NON_HOMOGENEOUS = "non-homogeneous"
    ANY = "any"  # zero is homogeneous of every degree


NON_HOMOGENEOUS = Homogeneity.NON_HOMOGENEOUS
ZERO_DEGREE_ANY = Homogeneity.ANY

_INT_RE = re.compile(r"[+-]?\d+")
_FRAC_RE = re.compile(r"([+-]?\d+)(?:/(\d+))?")
# "c", "c*x", "c*x^e", "x", "x^e"
_TERM_RE = re.compile(r"(\d+)(?:\*(x)(?:\^(\d+))?)?|(x)(?:\^(\d+))?")


def is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class Ring:
    """Common interface. Subclasses are frozen dataclasses, so rings compare by value."""

    graded = False

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return self.canonical(n)

    def canonical(self, a):
        return a

    def is_zero(self, a):
        return a == 0

    def is_one(self, a):
        return a == 1

    def add(self, a, b):
        return self.canonical(a + b)

    def sub(self, a, b):
        return self.canonical(a - b)

    def neg(self, a):
        return self.canonical(-a)

    def mul(self, a, b):
        return self.canonical(a * b)

    def dot(self, xs, ys):
        return self.canonical(sum(a * b for a, b in zip(xs, ys)))

    def degree(self, a):
        return ZERO_DEGREE_ANY if self.is_zero(a) else 0

    def inverse(self, a):
        raise NotImplementedError

    def coerce(self, value):
        """Accept a raw value, an ``int``, a ``Scalar`` of this ring or a canonical string."""
        if isinstance(value, Scalar):
            if value.ring != self:
                raise RingMismatch(f"scalar over {value.ring} used in {self}")
            return value.value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, bool):
            raise TypeError("booleans are not ring elements")
        return self._coerce(value)

    def _coerce(self, value):
        if isinstance(value, int):
            return self.canonical(value)
        raise TypeError(f"cannot interpret {value!r} in {self}")

    def parse(self, text):
        raise NotImplementedError

    def format(self, a):
        return str(a)

    def __call__(self, value):
        return Scalar(self, self.coerce(value))


@dataclass(frozen=True)
class Integers(Ring):
    def inverse(self, a):
        if a in (1, -1):
            return a
        raise NotAUnit(f"{a} is not a unit in ZZ")

    def parse(self, text):
        text = text.strip()
        if not _INT_RE.fullmatch(text):
            raise ValueError(f"not an integer: {text!r}")
        return int(text)

    def __str__(self):
        return "ZZ"


@dataclass(frozen=True)
class Rationals(Ring):
    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def canonical(self, a):
        return Fraction(a)

    def _coerce(self, value):
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        raise TypeError(f"cannot interpret {value!r} in {self}")

    def dot(self, xs, ys):
        return Fraction(sum(a * b for a, b in zip(xs, ys)))

    def inverse(self, a):
        if a == 0:
            raise NotAUnit("0 is not a unit in QQ")
        return 1 / a

    def parse(self, text):
        m = _FRAC_RE.fullmatch(text.strip())
        if not m:
            raise ValueError(f"not a rational: {text!r}")
        den = int(m.group(2) or 1)
        if den == 0:
            raise ValueError(f"zero denominator: {text!r}")
        return Fraction(int(m.group(1)), den)

    def format(self, a):
        return str(a)

    def __str__(self):
        return "QQ"


@dataclass(frozen=True)
class IntegersMod(Ring):
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    def canonical(self, a):
        return a % self.p

    def dot(self, xs, ys):
        return sum(a * b for a, b in zip(xs, ys)) % self.p

    def inverse(self, a):
        if a % self.p == 0:
            raise NotAUnit(f"0 is not a unit in {self}")
        return pow(a, -1, self.p)

    def parse(self, text):
        text = text.strip()
        if not _INT_RE.fullmatch(text):
            raise ValueError(f"not a residue: {text!r}")
        return int(text) % self.p

    def __str__(self):
        return f"ZZ/{self.p}"


@dataclass(frozen=True)
class PolyOverIntegers(Ring):
    """Univariate ZZ[x] where ``x`` has internal degree ``x_degree``."""

    x_degree: int = 1
    graded = True

    def __post_init__(self):
        if self.x_degree == 0:
            raise ValueError("x_degree must be nonzero")

    def zero(self):
        return ()

    def one(self):
        return ((0, 1),)

    def from_int(self, n):
        return ((0, n),) if n else ()

    def canonical(self, a):
        if isinstance(a, dict):
            items = a.items()
        else:
            acc = {}
            for e, c in a:
                acc[e] = acc.get(e, 0) + c
            items = acc.items()
        return tuple(sorted((e, c) for e, c in items if c))

    def _coerce(self, value):
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, (tuple, list)):
            return self.canonical(value)
        raise TypeError(f"cannot interpret {value!r} in {self}")

    def is_zero(self, a):
        return not a

    def is_one(self, a):
        return a == ((0, 1),)

    def add(self, a, b):
        if not a:
            return b
        if not b:
            return a
        acc = dict(a)
        for e, c in b:
            acc[e] = acc.get(e, 0) + c
        return self.canonical(acc)

    def neg(self, a):
        return tuple((e, -c) for e, c in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return ()
        acc = {}
        for e1, c1 in a:
            for e2, c2 in b:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return self.canonical(acc)

    def dot(self, xs, ys):
        acc = {}
        for a, b in zip(xs, ys):
            if not a or not b:
                continue
            for e1, c1 in a:
                for e2, c2 in b:
                    acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return self.canonical(acc)

    def degree(self, a):
        if not a:
            return ZERO_DEGREE_ANY
        if len(a) > 1:
            return NON_HOMOGENEOUS
        return a[0][0] * self.x_degree

    def inverse(self, a):
        if a in (((0, 1),), ((0, -1),)):
            return a
        raise NotAUnit(f"{self.format(a)} is not a unit in {self}")

    def monomial(self, coeff, exp):
        return ((exp, coeff),) if coeff else ()

    def parse(self, text):
        s = text.replace(" ", "")
        if s and s[0] not in "+-":
            s = "+" + s
        if not re.fullmatch(r"(?:[+-][^+-]+)+", s):
            raise ValueError(f"bad polynomial {text!r}")
        acc = {}
        for sign, body in re.findall(r"([+-])([^+-]+)", s):
            m = _TERM_RE.fullmatch(body)
            if not m:
                raise ValueError(f"bad polynomial term {sign + body!r} in {text!r}")
            if m.group(1) is not None:
                c = int(m.group(1))
                e = 0 if m.group(2) is None else int(m.group(3) or 1)
            else:
                c = 1
                e = int(m.group(5) or 1)
            acc[e] = acc.get(e, 0) + (-c if sign == "-" else c)
        return self.canonical(acc)

    def format(self, a):
        if not a:
            return "0"
        out = []
        for e, c in reversed(a):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                mono = "x" if e == 1 else f"x^{e}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            out.append((sign, body))
        first_sign, first = out[0]
        text = ("-" if first_sign == "-" else "") + first
        return text + "".join(s + b for s, b in out[1:])

    def __str__(self):
        return "ZZ[x]" if self.x_degree == 1 else f"ZZ[x]@{self.x_degree}"


_RING_RE = re.compile(r"ZZ/(\d+)|ZZ\[x\](?:@([+-]?\d+))?")


def parse_ring(text):
    """Inverse of ``str(ring)``: ``ZZ``, ``QQ``, ``ZZ/7``, ``ZZ[x]``, ``ZZ[x]@2``."""
    t = text.strip()
    if t == "ZZ":
        return Integers()
    if t == "QQ":
        return Rationals()
    m = _RING_RE.fullmatch(t)
    if not m:
        raise ValueError(f"unknown ring {text!r}")
    if m.group(1) is not None:
        return IntegersMod(int(m.group(1)))
    return PolyOverIntegers(int(m.group(2) or 1))


class Scalar:
    """Immutable ring element. Supports ``+ - *``, ``==`` and ``hash``."""

    __slots__ = ("ring", "value")

    def __init__(self, ring, value):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "value", ring.canonical(value))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _check(self, other):
        if not isinstance(other, Scalar):
            other = Scalar(self.ring, self.ring.coerce(other))
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return Scalar(self.ring, self.ring.add(self.value, other.value))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return Scalar(self.ring, self.ring.sub(self.value, other.value))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        return Scalar(self.ring, self.ring.mul(self.value, other.value))

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.ring, self.ring.neg(self.value))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.ring == other.ring and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == self.ring.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.value))

    def __bool__(self):
        return not self.ring.is_zero(self.value)

    def inverse(self):
        return Scalar(self.ring, self.ring.inverse(self.value))

    def homogeneous_degree(self):
        return self.ring.degree(self.value)

    def __str__(self):
        return self.ring.format(self.value)

    def __repr__(self):
        return f"Scalar({self.ring}, {self.ring.format(self.value)!r})"


def ring_arith(op, a, b=None):
    """Functional form of ``a op b`` for ``op`` in add/sub/mul/neg."""
    if op == "neg":
        return -a
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def inverse(a):
    return a.inverse()


def homogeneous_degree(a):
    return a.homogeneous_degree()
