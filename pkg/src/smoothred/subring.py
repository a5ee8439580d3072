"""The subring of an ambient ring generated by finitely many elements.

Elements are integer polynomial expressions in generator symbols ``c1..cr``
carried together with their image in the ambient ring.  Since the subring
sits injectively inside the ambient ring, two elements are equal exactly
when their images are; there is deliberately no membership test for
arbitrary ambient elements.
"""

from __future__ import annotations

from typing import Any, Iterable, Sequence

from .poly import Polynomial
from .rings import UNDECIDED, UNIT, ZZ, RingDescriptor, RingElement


class SubringElement:
    __slots__ = ("expr", "image")

    def __init__(self, expr: Polynomial, image: Any):
        self.expr = expr
        self.image = image

    def __eq__(self, other):
        if isinstance(other, SubringElement):
            return self.image == other.image
        return NotImplemented

    def __hash__(self):
        return hash(self.image)

    def __repr__(self):
        return f"SubringElement({self.expr})"


class SubringView(RingDescriptor):
    """``ZZ[c1, ..., cr] -> ambient``, with ``ci`` sent to ``generators[i]``.

    Generators are deduplicated keeping first occurrences.
    """

    def __init__(self, ambient: RingDescriptor, generators: Iterable[Any] = ()):
        self.ambient = ambient
        gens: list = []
        for g in generators:
            g = ambient.convert(g)
            if g not in gens:
                gens.append(g)
        self.generators = tuple(gens)
        self.symbols = tuple(f"c{i + 1}" for i in range(len(gens)))

    def _key(self):
        return (self.ambient, self.generators)

    def __eq__(self, other):
        return isinstance(other, SubringView) and (self is other or self._key() == other._key())

    def __hash__(self):
        return hash(("subring",) + self._key())

    def __str__(self):
        if not self.generators:
            return "ZZ"
        gens = ", ".join(self.ambient.format(g) for g in self.generators)
        return f"ZZ[{gens}] in {self.ambient}"

    __repr__ = __str__

    def __len__(self):
        return len(self.generators)

    # expressions ------------------------------------------------------------
    def expression(self, terms=()) -> Polynomial:
        return Polynomial(ZZ, self.symbols, terms)

    def evaluate(self, expr: Polynomial) -> Any:
        """Image in the ambient ring of an integer expression in the generators."""
        amb = self.ambient
        total = amb.zero()
        for e, c in expr.terms.items():
            term = amb.from_int(c)
            for g, k in zip(self.generators, e):
                for _ in range(k):
                    term = amb.mul(term, g)
            total = amb.add(total, term)
        return total

    def gen(self, index: int) -> SubringElement:
        """The element given by the single symbol ``c{index + 1}``."""
        e = tuple(int(i == index) for i in range(len(self.generators)))
        return SubringElement(self.expression({e: 1}), self.generators[index])

    def index_of(self, ambient_value: Any) -> int:
        return self.generators.index(ambient_value)

    def from_expression(self, expr: Polynomial) -> SubringElement:
        return SubringElement(expr, self.evaluate(expr))

    def is_consistent(self, a: SubringElement) -> bool:
        return self.evaluate(a.expr) == a.image

    # ring interface ---------------------------------------------------------
    def from_int(self, n):
        return SubringElement(self.expression().constant_like(n), self.ambient.from_int(n))

    def from_fraction(self, q):
        if q.denominator != 1:
            raise ValueError(f"{q} has no canonical expression in {self}")
        return self.from_int(q.numerator)

    def add(self, a, b):
        return SubringElement(a.expr + b.expr, self.ambient.add(a.image, b.image))

    def neg(self, a):
        return SubringElement(-a.expr, self.ambient.neg(a.image))

    def sub(self, a, b):
        return SubringElement(a.expr - b.expr, self.ambient.sub(a.image, b.image))

    def mul(self, a, b):
        return SubringElement(a.expr * b.expr, self.ambient.mul(a.image, b.image))

    def is_zero(self, a):
        return self.ambient.is_zero(a.image)

    def is_one(self, a):
        return self.ambient.is_one(a.image)

    def unit_status(self, a):
        if a.expr.is_constant() and a.expr.constant_term() in (1, -1):
            return UNIT
        return UNDECIDED

    def inverse(self, a):
        return a if self.unit_status(a) == UNIT else None

    def validate(self, payload):
        if isinstance(payload, SubringElement):
            return payload
        return super().validate(payload)

    def format(self, a):
        return str(a.expr)

    def split_sign(self, a):
        if len(a.expr) == 1:
            negative, _ = ZZ.split_sign(a.expr.leading_coefficient)
            if negative:
                return True, self.neg(a)
        return False, a

    def element(self, value) -> RingElement:
        if isinstance(value, Polynomial):
            return RingElement(self, self.from_expression(value))
        return super().element(value)

    __call__ = element


def subring_generated(ambient: RingDescriptor, gens: Sequence[Any]) -> SubringView:
    return SubringView(ambient, gens)
