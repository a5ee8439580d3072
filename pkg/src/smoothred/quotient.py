"""Explicit quotient rings ``base[t_1..t_r] / (relators)`` as coefficient rings."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .errors import UnsupportedCoefficientRing
from .ideals import GroebnerData, IdealBasis, groebner
from .linalg import solve_field, solve_integer
from .poly import Polynomial, monomials_up_to
from .rings import NONUNIT, UNDECIDED, UNIT, Integers, RingDescriptor


class PolynomialQuotient(RingDescriptor):
    """``base[variables] / (relators)`` with normal-form payloads.

    Over a field base the relators are replaced by their reduced Gröbner
    basis at construction.  Over other bases the basis must be completable
    with unit leading coefficients in grevlex or lex; otherwise the
    construction is rejected.
    """

    def __init__(self, base: RingDescriptor, variables: Sequence[str] | str, relators: Sequence[Polynomial]):
        if isinstance(variables, str):
            variables = variables.replace(",", " ").split()
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        self.base = base
        self.variables = variables
        self.relators = tuple(relators)
        for f in self.relators:
            if f.is_zero():
                raise ValueError("quotient relators must be nonzero")
            if f.ring != base or f.variables != variables:
                raise ValueError(f"relator {f} is not a polynomial over {base} in {variables}")
        self.strategy = "groebner" if base.is_field else "monic"
        self.gb = self._basis()
        self.order = self.gb.order if self.gb is not None else "grevlex"

    def _basis(self) -> Optional[GroebnerData]:
        if not self.relators:
            return None
        last = None
        for order in ("grevlex", "lex"):
            rels = tuple(Polynomial(self.base, self.variables, f.terms, order) for f in self.relators)
            try:
                return groebner(IdealBasis(self.base, self.variables, rels, order))
            except UnsupportedCoefficientRing as exc:
                last = exc
        raise UnsupportedCoefficientRing(
            f"relators of {self} are not monic-reducible over {self.base}: {last}"
        )

    # identity
    def _key(self):
        return (self.base, self.variables, tuple(self.relators))

    def __eq__(self, other):
        return isinstance(other, PolynomialQuotient) and (self is other or self._key() == other._key())

    def __hash__(self):
        return hash(("quotient",) + self._key())

    def __str__(self):
        rels = ", ".join(str(f) for f in self.relators)
        return f"{self.base}[{', '.join(self.variables)}]/({rels})"

    __repr__ = __str__

    @property
    def is_field(self):
        return False

    # payloads are normal-form polynomials in self.order
    def normal_form(self, p: Polynomial) -> Polynomial:
        if self.gb is None:
            return p
        return self.gb.normal_form(p)

    def lift(self, payload) -> Polynomial:
        return payload

    def symbol(self, name: str) -> Polynomial:
        return self.normal_form(Polynomial.variable(self.base, self.variables, name, self.order))

    def from_int(self, n):
        return self.normal_form(Polynomial.constant(self.base, self.variables, self.base.from_int(n), self.order))

    def from_fraction(self, q: Fraction):
        c = self.base.from_fraction(q)
        return self.normal_form(Polynomial.constant(self.base, self.variables, c, self.order))

    def from_base(self, c):
        return self.normal_form(Polynomial.constant(self.base, self.variables, c, self.order))

    def from_polynomial(self, p: Polynomial):
        if p.ring != self.base or p.variables != self.variables:
            raise ValueError(f"{p} is not a polynomial over {self.base} in {self.variables}")
        return self.normal_form(Polynomial(self.base, self.variables, p.terms, self.order))

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return self.normal_form(a * b)

    def is_zero(self, a):
        return a.is_zero()

    def is_one(self, a):
        return a == self.one()

    def validate(self, payload):
        if isinstance(payload, Polynomial) and payload.ring == self.base and payload.variables == self.variables:
            nf = self.from_polynomial(payload)
            if nf != payload:
                raise ValueError(f"{payload} is not in normal form for {self}")
            return nf
        return super().validate(payload)

    def format(self, a):
        return str(a)

    def split_sign(self, a):
        if len(a) == 1:
            (e, c), = a.terms.items()
            negative, mag = self.base.split_sign(c)
            if negative:
                return True, a._like({e: mag})
        return False, a

    # units ------------------------------------------------------------------
    def _standard_basis(self, degree: Optional[int]) -> Optional[list]:
        """All standard monomials if finitely many (degree=None), else those of
        degree <= degree."""
        nv = len(self.variables)
        if self.gb is None:
            if degree is None:
                return [()] if nv == 0 else None
            return list(monomials_up_to(nv, degree))
        if degree is None:
            lms = self.gb.leading_monomials
            # zero-dimensional iff every variable has a pure power among the leading monomials
            bounds = []
            for i in range(nv):
                pure = [lm[i] for lm in lms if all(x == 0 for k, x in enumerate(lm) if k != i) and lm[i] > 0]
                if not pure:
                    return None
                bounds.append(min(pure))
            return self.gb.standard_monomials(sum(b - 1 for b in bounds))
        return self.gb.standard_monomials(degree)

    def _solve_inverse(self, a, monos: list):
        base = self.base
        cols = []
        for mu in monos:
            prod = self.normal_form(a.mul_term(mu, base.one()))
            cols.append(prod.terms)
        one = self.one()
        keys = sorted(set().union(one.terms, *cols))
        if isinstance(base, Integers):
            A = [[c.get(k, 0) for c in cols] for k in keys]
            b = [one.terms.get(k, 0) for k in keys]
            return solve_integer(A, b)
        A = [[c.get(k, base.zero()) for c in cols] for k in keys]
        b = [one.terms.get(k, base.zero()) for k in keys]
        return solve_field(base, A, b)

    def _inverse_and_status(self, a):
        if a.is_zero():
            return (self.one(), UNIT) if self.one().is_zero() else (None, NONUNIT)
        base = self.base
        if a.is_constant():
            c = a.constant_term()
            inv = base.inverse(c)
            if inv is not None:
                return self.from_base(inv), UNIT
        if not (base.is_field or isinstance(base, Integers)):
            return None, UNDECIDED
        if self.gb is None:
            # plain polynomial ring over a domain: units are unit constants
            return None, NONUNIT
        finite = self._standard_basis(None)
        if finite is not None:
            x = self._solve_inverse(a, finite)
            if x is None:
                # the solve is complete on the finite standard basis
                return None, NONUNIT
            return self._assemble(finite, x), UNIT
        cap = max(a.degree(), 1) + max(g.degree() for g in self.gb.basis)
        monos = self._standard_basis(cap)
        x = self._solve_inverse(a, monos)
        if x is None:
            return None, UNDECIDED
        return self._assemble(monos, x), UNIT

    def _assemble(self, monos, x):
        base = self.base
        terms = {mu: c for mu, c in zip(monos, x) if not base.is_zero(c)}
        return self.normal_form(Polynomial._raw(base, self.variables, terms, self.order))

    def unit_status(self, a):
        return self._inverse_and_status(a)[1]

    def inverse(self, a):
        return self._inverse_and_status(a)[0]
