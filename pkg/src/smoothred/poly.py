"""Sparse multivariate polynomials over any :class:`RingDescriptor`.

A polynomial is a map from exponent tuples to nonzero coefficient payloads,
tagged with its coefficient ring, variable names and term order.  Values are
treated as immutable.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import comb
from typing import Any, Callable, Iterable, Iterator, Mapping, Optional, Sequence

from .errors import ContextMismatch, InternalError
from .rings import RingDescriptor, RingElement

Monomial = tuple  # tuple[int, ...], one exponent per variable


@lru_cache(maxsize=1 << 16)
def grevlex_key(e: Monomial):
    return (sum(e), tuple(-x for x in reversed(e)))


@lru_cache(maxsize=1 << 16)
def grlex_key(e: Monomial):
    return (sum(e), e)


def lex_key(e: Monomial):
    return e


ORDERS: dict[str, Callable[[Monomial], Any]] = {
    "grevlex": grevlex_key,
    "grlex": grlex_key,
    "lex": lex_key,
}


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomials_up_to(nvars: int, degree: int) -> Iterator[Monomial]:
    """All exponent vectors with total degree <= ``degree``."""
    if nvars == 0:
        yield ()
        return
    for d in range(degree + 1):
        yield from _monomials_of_degree(nvars, d)


def _monomials_of_degree(nvars: int, d: int) -> Iterator[Monomial]:
    if nvars == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _monomials_of_degree(nvars - 1, d - first):
            yield (first,) + rest


def format_monomial(variables: Sequence[str], e: Monomial) -> str:
    parts = []
    for name, k in zip(variables, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts) if parts else "1"


class Polynomial:
    __slots__ = ("ring", "variables", "terms", "order", "_hash", "_sorted")

    def __init__(
        self,
        ring: RingDescriptor,
        variables: Iterable[str],
        terms: Mapping[Monomial, Any] | Iterable[tuple[Monomial, Any]] = (),
        order: str = "grevlex",
    ):
        variables = tuple(variables)
        if order not in ORDERS:
            raise ValueError(f"unknown term order {order!r}")
        n = len(variables)
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Monomial, Any] = {}
        for e, c in items:
            e = tuple(e)
            if len(e) != n or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e} for variables {variables}")
            c = ring.convert(c)
            if e in clean:
                c = ring.add(clean[e], c)
            clean[e] = c
        self._init(ring, variables, {e: c for e, c in clean.items() if not ring.is_zero(c)}, order)

    def _init(self, ring, variables, terms, order):
        self.ring = ring
        self.variables = variables
        self.terms = terms
        self.order = order
        self._hash = None
        self._sorted = None

    @classmethod
    def _raw(cls, ring, variables, terms, order="grevlex") -> "Polynomial":
        # terms must already be clean (no zero payloads, valid exponents)
        p = cls.__new__(cls)
        p._init(ring, variables, terms, order)
        return p

    # -- constructors --------------------------------------------------------
    @classmethod
    def zero(cls, ring, variables, order="grevlex") -> "Polynomial":
        return cls._raw(ring, tuple(variables), {}, order)

    @classmethod
    def constant(cls, ring, variables, c, order="grevlex") -> "Polynomial":
        variables = tuple(variables)
        return cls(ring, variables, {(0,) * len(variables): c}, order)

    @classmethod
    def monomial(cls, ring, variables, e: Monomial, c=1, order="grevlex") -> "Polynomial":
        return cls(ring, variables, {tuple(e): c}, order)

    @classmethod
    def variable(cls, ring, variables, name: str, order="grevlex") -> "Polynomial":
        variables = tuple(variables)
        i = variables.index(name)
        e = tuple(int(j == i) for j in range(len(variables)))
        return cls(ring, variables, {e: 1}, order)

    def _like(self, terms) -> "Polynomial":
        return Polynomial._raw(self.ring, self.variables, terms, self.order)

    def zero_like(self) -> "Polynomial":
        return self._like({})

    def one_like(self) -> "Polynomial":
        return self.constant_like(self.ring.one())

    def constant_like(self, c) -> "Polynomial":
        c = self.ring.convert(c)
        if self.ring.is_zero(c):
            return self._like({})
        return self._like({(0,) * len(self.variables): c})

    # -- structure -----------------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def context(self):
        return (self.ring, self.variables, self.order)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[Monomial, Any]]:
        """Terms in decreasing term order."""
        if self._sorted is None:
            key = ORDERS[self.order]
            self._sorted = sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)
        return self._sorted

    def __iter__(self):
        return iter(self.sorted_terms())

    def __len__(self):
        return len(self.terms)

    @property
    def leading_monomial(self) -> Monomial:
        return self.sorted_terms()[0][0]

    @property
    def leading_coefficient(self):
        return self.sorted_terms()[0][1]

    def coefficient(self, e: Monomial):
        return self.terms.get(tuple(e), self.ring.zero())

    def constant_term(self):
        return self.coefficient((0,) * self.nvars)

    # -- arithmetic ----------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.variables != other.variables or self.order != other.order or (
            self.ring is not other.ring and self.ring != other.ring
        ):
            raise ContextMismatch(
                f"{self.ring}[{','.join(self.variables)}] vs {other.ring}[{','.join(other.variables)}]"
            )

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return self.constant_like(other)

    def __add__(self, other):
        other = self._coerce(other)
        ring = self.ring
        terms = dict(self.terms)
        for e, c in other.terms.items():
            if e in terms:
                s = ring.add(terms[e], c)
                if ring.is_zero(s):
                    del terms[e]
                else:
                    terms[e] = s
            else:
                terms[e] = c
        return self._like(terms)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ring.neg
        return self._like({e: neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(self.ring.convert(other))
        self._check(other)
        ring = self.ring
        add, mul, is_zero = ring.add, ring.mul, ring.is_zero
        acc: dict[Monomial, Any] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = mul(c1, c2)
                if e in acc:
                    acc[e] = add(acc[e], c)
                else:
                    acc[e] = c
        return self._like({e: c for e, c in acc.items() if not is_zero(c)})

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        ring = self.ring
        if ring.is_zero(c):
            return self._like({})
        mul, is_zero = ring.mul, ring.is_zero
        terms = {}
        for e, d in self.terms.items():
            v = mul(d, c)
            if not is_zero(v):
                terms[e] = v
        return self._like(terms)

    def mul_term(self, m: Monomial, c) -> "Polynomial":
        """Multiply by the single term ``c * x^m``."""
        ring = self.ring
        mul, is_zero = ring.mul, ring.is_zero
        terms = {}
        for e, d in self.terms.items():
            v = mul(d, c)
            if not is_zero(v):
                terms[tuple(a + b for a, b in zip(e, m))] = v
        return self._like(terms)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result, base = self.one_like(), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return (
                self.variables == other.variables
                and self.order == other.order
                and (self.ring is other.ring or self.ring == other.ring)
                and self.terms == other.terms
            )
        if isinstance(other, (int, RingElement)):
            try:
                return self == self.constant_like(other)
            except (TypeError, ValueError):
                return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    # -- transformations -----------------------------------------------------
    def map_coefficients(self, fn: Callable[[Any], Any], ring: Optional[RingDescriptor] = None) -> "Polynomial":
        """Apply ``fn`` to every payload, optionally landing in another ring."""
        target = ring or self.ring
        terms = {}
        for e, c in self.terms.items():
            v = fn(c)
            if not target.is_zero(v):
                terms[e] = v
        return Polynomial._raw(target, self.variables, terms, self.order)

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        return substitute(self, images)

    def hasse_derivative(self, alpha: Sequence[int]) -> "Polynomial":
        return hasse_derivative(self, alpha)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self.ring}, {list(self.variables)}, {format_polynomial(self)!r})"


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    ring = p.ring
    out = []
    for e, c in p.sorted_terms():
        negative, mag = ring.split_sign(c)
        mono = format_monomial(p.variables, e)
        coeff = ring.format(mag)
        if mono == "1":
            body = coeff if " " not in coeff or not out else f"({coeff})"
        elif coeff == "1":
            body = mono
        elif " " in coeff:
            body = f"({coeff})*{mono}"
        else:
            body = f"{coeff}*{mono}"
        if not out:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f" - {body}" if negative else f" + {body}")
    return "".join(out)


def gens(ring: RingDescriptor, variables: Iterable[str] | str, order: str = "grevlex") -> tuple[Polynomial, ...]:
    """Variables of ``ring[variables]`` as polynomials.

    >>> x, y = gens(QQ, "x y")
    """
    if isinstance(variables, str):
        variables = variables.replace(",", " ").split()
    variables = tuple(variables)
    return tuple(Polynomial.variable(ring, variables, v, order) for v in variables)


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    p._check(q)
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    p._check(q)
    return p * q


def poly_neg(p: Polynomial) -> Polynomial:
    return -p


def substitute(p: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """Compose: replace the i-th variable of ``p`` by ``images[i]``."""
    images = list(images)
    if len(images) != p.nvars:
        raise ContextMismatch(f"expected {p.nvars} images, got {len(images)}")
    if not images:
        return p
    target = images[0]
    for img in images:
        target._check(img)
    if p.ring != target.ring:
        raise ContextMismatch(f"images over {target.ring}, polynomial over {p.ring}")
    powers: list[list[Polynomial]] = [[target.one_like()] for _ in images]

    def power(i, k):
        cache = powers[i]
        while len(cache) <= k:
            cache.append(cache[-1] * images[i])
        return cache[k]

    result = target.zero_like()
    for e, c in p.sorted_terms():
        term = target.constant_like(c)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        result = result + term
    return result


def hasse_derivative(p: Polynomial, alpha: Sequence[int]) -> Polynomial:
    """Divided-power derivative: ``x^b -> C(b, alpha) x^(b - alpha)``.

    Integer binomials only, so the Taylor expansion
    ``p(x + h) = sum_alpha D^alpha p * h^alpha`` holds over every ring.
    """
    alpha = tuple(alpha)
    if len(alpha) != p.nvars or any(a < 0 for a in alpha):
        raise ValueError(f"bad multi-index {alpha} for {p.nvars} variables")
    ring = p.ring
    terms: dict[Monomial, Any] = {}
    for e, c in p.terms.items():
        if not monomial_divides(alpha, e):
            continue
        k = 1
        for b, a in zip(e, alpha):
            k *= comb(b, a)
        v = ring.mul(c, ring.from_int(k))
        if not ring.is_zero(v):
            terms[tuple(b - a for b, a in zip(e, alpha))] = v
    return p._like(terms)


def hasse_expansion(p: Polynomial) -> list[tuple[Monomial, Polynomial]]:
    """Every ``(alpha, D^alpha p)`` with nonzero derivative, ordered by (|alpha|, alpha)."""
    if p.is_zero():
        return []
    bounds = [max(e[i] for e in p.terms) for i in range(p.nvars)]
    alphas = sorted(product(*(range(b + 1) for b in bounds)), key=lambda a: (sum(a), a))
    out = []
    for alpha in alphas:
        d = hasse_derivative(p, alpha)
        if not d.is_zero():
            out.append((alpha, d))
    return out


def monomial_in(images: Sequence[Polynomial], alpha: Monomial, like: Polynomial) -> Polynomial:
    """``prod_i images[i] ** alpha[i]``."""
    result = like.one_like()
    for img, k in zip(images, alpha):
        if k:
            result = result * img**k
    return result


def taylor_shift(p: Polynomial, shifts: Sequence[Polynomial]) -> list[tuple[Monomial, Polynomial, Polynomial]]:
    """Nonzero contributions ``(alpha, D^alpha p, shifts^alpha)`` of ``p(x + shifts)``.

    The sum of ``D^alpha p * shifts^alpha`` is checked against direct
    substitution before returning.
    """
    shifts = list(shifts)
    if len(shifts) != p.nvars:
        raise ContextMismatch(f"expected {p.nvars} shifts, got {len(shifts)}")
    for s in shifts:
        p._check(s)
    contributions = []
    for alpha, d in hasse_expansion(p):
        h = monomial_in(shifts, alpha, p)
        if not h.is_zero():
            contributions.append((alpha, d, h))
    total = p.zero_like()
    for _, d, h in contributions:
        total = total + d * h
    xs = gens(p.ring, p.variables, p.order)
    if total != substitute(p, [x + s for x, s in zip(xs, shifts)]):
        raise InternalError("Taylor expansion disagrees with substitution")
    return contributions


def coefficients_of(p: Polynomial) -> list[RingElement]:
    """Nonzero coefficients in decreasing term order, duplicates kept."""
    return [RingElement(p.ring, c) for _, c in p.sorted_terms()]
