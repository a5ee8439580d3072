"""Exact coefficient rings.

A descriptor knows how to do arithmetic on *payloads*: plain Python values in
canonical form (``int`` for ZZ, ``Fraction`` for QQ, a residue in
``[0, n)`` for ZZ/n, a normal-form polynomial for quotient rings).  Because
every payload is canonical, ring equality is Python equality.

:class:`RingElement` wraps a payload together with its descriptor and is what
the public API hands out.  Polynomials store raw payloads for speed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

from .errors import DescriptorMismatch

UNIT = "unit"
NONUNIT = "nonunit"
UNDECIDED = "undecided"


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24, probabilistic beyond."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class RingDescriptor:
    """Interface for exact commutative rings with canonical payloads."""

    is_field = False

    def zero(self) -> Any:
        return self.from_int(0)

    def one(self) -> Any:
        return self.from_int(1)

    def from_int(self, n: int) -> Any:
        raise NotImplementedError

    def from_fraction(self, q: Fraction) -> Any:
        if q.denominator == 1:
            return self.from_int(q.numerator)
        d = self.inverse(self.from_int(q.denominator))
        if d is None:
            raise ValueError(f"{q} is not an element of {self}")
        return self.mul(self.from_int(q.numerator), d)

    def add(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def neg(self, a: Any) -> Any:
        raise NotImplementedError

    def sub(self, a: Any, b: Any) -> Any:
        return self.add(a, self.neg(b))

    def mul(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def is_zero(self, a: Any) -> bool:
        return a == self.zero()

    def is_one(self, a: Any) -> bool:
        return a == self.one()

    def unit_status(self, a: Any) -> str:
        """One of ``"unit"``, ``"nonunit"``, ``"undecided"``."""
        raise NotImplementedError

    def is_unit(self, a: Any) -> bool:
        return self.unit_status(a) == UNIT

    def inverse(self, a: Any) -> Optional[Any]:
        raise NotImplementedError

    def split_sign(self, a: Any) -> tuple[bool, Any]:
        """Return ``(negative, magnitude)`` for printing; rings without a sign
        convention report ``False``."""
        return False, a

    def format(self, a: Any) -> str:
        return str(a)

    def convert(self, value: Any) -> Any:
        """Coerce an int, Fraction or RingElement of this ring to a payload."""
        if isinstance(value, RingElement):
            if value.ring != self:
                raise DescriptorMismatch(f"{value.ring} element used in {self}")
            return value.value
        if isinstance(value, bool):
            raise TypeError("bool is not a ring element")
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, Fraction):
            return self.from_fraction(value)
        return self.validate(value)

    def validate(self, payload: Any) -> Any:
        raise TypeError(f"cannot interpret {payload!r} as an element of {self}")

    def element(self, value: Any) -> "RingElement":
        return RingElement(self, self.convert(value))

    __call__ = element


@dataclass(frozen=True)
class Integers(RingDescriptor):
    def from_int(self, n):
        return int(n)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a == 0

    def unit_status(self, a):
        return UNIT if a in (1, -1) else NONUNIT

    def inverse(self, a):
        return a if a in (1, -1) else None

    def from_fraction(self, q):
        if q.denominator != 1:
            raise ValueError(f"rational literal {q} is not an integer")
        return q.numerator

    def split_sign(self, a):
        return (a < 0, -a) if a < 0 else (False, a)

    def validate(self, payload):
        if isinstance(payload, int) and not isinstance(payload, bool):
            return payload
        return super().validate(payload)

    def __str__(self):
        return "ZZ"


@dataclass(frozen=True)
class Rationals(RingDescriptor):
    is_field = True

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, q):
        return Fraction(q)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a == 0

    def unit_status(self, a):
        return NONUNIT if a == 0 else UNIT

    def inverse(self, a):
        return None if a == 0 else 1 / a

    def split_sign(self, a):
        return (a < 0, -a) if a < 0 else (False, a)

    def format(self, a):
        return str(a)

    def validate(self, payload):
        if isinstance(payload, Fraction):
            return payload
        return super().validate(payload)

    def __str__(self):
        return "QQ"


@dataclass(frozen=True)
class IntegersMod(RingDescriptor):
    modulus: int

    def __post_init__(self):
        if not isinstance(self.modulus, int) or self.modulus < 2:
            raise ValueError(f"modulus must be an integer >= 2, got {self.modulus!r}")

    @property
    def is_field(self):
        return is_probable_prime(self.modulus)

    def from_int(self, n):
        return n % self.modulus

    def add(self, a, b):
        return (a + b) % self.modulus

    def neg(self, a):
        return -a % self.modulus

    def sub(self, a, b):
        return (a - b) % self.modulus

    def mul(self, a, b):
        return a * b % self.modulus

    def is_zero(self, a):
        return a == 0

    def unit_status(self, a):
        return UNIT if self.inverse(a) is not None else NONUNIT

    def inverse(self, a):
        try:
            return pow(a, -1, self.modulus)
        except ValueError:
            return None

    def from_fraction(self, q):
        inv = self.inverse(q.denominator % self.modulus)
        if inv is None:
            raise ValueError(f"denominator of {q} is not invertible modulo {self.modulus}")
        return q.numerator * inv % self.modulus

    def validate(self, payload):
        if isinstance(payload, int) and 0 <= payload < self.modulus:
            return payload
        return super().validate(payload)

    def __str__(self):
        return f"ZZ/{self.modulus}"


ZZ = Integers()
QQ = Rationals()


@dataclass(frozen=True)
class RingElement:
    """An element of a ring: descriptor plus canonical payload."""

    ring: RingDescriptor
    value: Any

    def _other(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise DescriptorMismatch(f"{self.ring} vs {other.ring}")
            return other.value
        return self.ring.convert(other)

    def __add__(self, other):
        return RingElement(self.ring, self.ring.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return RingElement(self.ring, self.ring.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return RingElement(self.ring, self.ring.sub(self._other(other), self.value))

    def __mul__(self, other):
        return RingElement(self.ring, self.ring.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.value))

    def __pow__(self, e: int):
        if e < 0:
            inv = self.inverse()
            if inv is None:
                raise ZeroDivisionError(f"{self} is not a unit")
            return inv ** (-e)
        result, base = self.ring.one(), self.value
        while e:
            if e & 1:
                result = self.ring.mul(result, base)
            base = self.ring.mul(base, base)
            e >>= 1
        return RingElement(self.ring, result)

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.value)

    def inverse(self) -> Optional["RingElement"]:
        inv = self.ring.inverse(self.value)
        return None if inv is None else RingElement(self.ring, inv)

    def __str__(self):
        return self.ring.format(self.value)

    def __repr__(self):
        return f"RingElement({self.ring}, {self.ring.format(self.value)})"


def _same(a: RingElement, b: RingElement) -> RingDescriptor:
    if a.ring != b.ring:
        raise DescriptorMismatch(f"{a.ring} vs {b.ring}")
    return a.ring


def ring_add(a: RingElement, b: RingElement) -> RingElement:
    ring = _same(a, b)
    return RingElement(ring, ring.add(a.value, b.value))


def ring_mul(a: RingElement, b: RingElement) -> RingElement:
    ring = _same(a, b)
    return RingElement(ring, ring.mul(a.value, b.value))


def ring_inverse(a: RingElement) -> Optional[RingElement]:
    """Inverse of ``a`` if it is a unit, else ``None``.

    ``None`` covers both non-units and cases the ring cannot decide; use
    ``a.ring.unit_status(a.value)`` to tell them apart.
    """
    return a.inverse()
