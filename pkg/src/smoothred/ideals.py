"""Gröbner bases with transformation rows, cofactor witnesses, and linear
solving modulo an ideal.

Buchberger's algorithm here only ever divides by leading coefficients that
are units.  Over a field that is no restriction.  Over ZZ (or ZZ/n) it means
every basis element the algorithm needs must be monic up to a unit; if one is
not, :class:`UnsupportedCoefficientRing` is raised.  A basis built that way
is a strong Gröbner basis, so normal forms stay canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Optional, Sequence

from .errors import ContextMismatch, IntegralSolveFailed, InternalError, UnsupportedCoefficientRing
from .linalg import solve_field, solve_integer
from .poly import (
    ORDERS,
    Monomial,
    Polynomial,
    monomial_divides,
    monomial_lcm,
    monomials_up_to,
)
from .rings import QQ, Integers, RingDescriptor


@dataclass(frozen=True)
class IdealBasis:
    """The ideal ``(f_1, ..., f_m)`` with stable 0-based indexing."""

    ring: RingDescriptor
    variables: tuple[str, ...]
    relators: tuple[Polynomial, ...]
    order: str = "grevlex"

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "relators", tuple(self.relators))
        for j, f in enumerate(self.relators):
            if f.is_zero():
                raise ValueError(f"relator {j + 1} is zero")
            if f.context != (self.ring, self.variables, self.order):
                raise ContextMismatch(f"relator {j + 1} lives in a different context")

    @classmethod
    def of(cls, relators: Sequence[Polynomial], like: Optional[Polynomial] = None) -> "IdealBasis":
        ref = relators[0] if relators else like
        if ref is None:
            raise ValueError("an empty basis needs a reference polynomial for its context")
        return cls(ref.ring, ref.variables, tuple(relators), ref.order)

    def __len__(self):
        return len(self.relators)

    def zero(self) -> Polynomial:
        return Polynomial.zero(self.ring, self.variables, self.order)

    def one(self) -> Polynomial:
        return Polynomial.constant(self.ring, self.variables, 1, self.order)

    def combine(self, cofactors: Sequence[Polynomial]) -> Polynomial:
        total = self.zero()
        for c, f in zip(cofactors, self.relators):
            if not c.is_zero():
                total = total + c * f
        return total


@dataclass(frozen=True)
class GroebnerData:
    """Reduced (monic) basis; ``rows[i]`` expresses ``basis[i]`` in the source relators."""

    source: IdealBasis
    basis: tuple[Polynomial, ...]
    rows: tuple[tuple[Polynomial, ...], ...]

    @property
    def order(self) -> str:
        return self.source.order

    @property
    def leading_monomials(self) -> list[Monomial]:
        return [g.leading_monomial for g in self.basis]

    def is_standard(self, e: Monomial) -> bool:
        return not any(monomial_divides(lm, e) for lm in self.leading_monomials)

    def standard_monomials(self, degree: int) -> list[Monomial]:
        key = ORDERS[self.order]
        mons = [e for e in monomials_up_to(len(self.source.variables), degree) if self.is_standard(e)]
        return sorted(mons, key=key)

    def normal_form(self, p: Polynomial) -> Polynomial:
        return _reduce(p, self.basis, track=False)[1]


@dataclass(frozen=True)
class CofactorWitness:
    """``target = sum_j cofactors[j] * f_j + remainder``, exactly."""

    target: Polynomial
    cofactors: tuple[Polynomial, ...]
    remainder: Polynomial

    def check(self, basis: IdealBasis) -> bool:
        return self.target == basis.combine(self.cofactors) + self.remainder


def _leading(terms: dict, key) -> Monomial:
    return max(terms, key=key)


def _reduce(p: Polynomial, divisors: Sequence[Polynomial], track: bool = True):
    """Full multivariate division by monic ``divisors``.

    Returns ``(quotients, remainder)``; quotients is a dict index -> term map,
    or ``None`` when not tracking.
    """
    ring = p.ring
    key = ORDERS[p.order]
    add, neg, mul, is_zero = ring.add, ring.neg, ring.mul, ring.is_zero
    leads = [(g.leading_monomial, g) for g in divisors]
    work = dict(p.terms)
    rem: dict[Monomial, Any] = {}
    quotients: dict[int, dict] = {} if track else None
    while work:
        e = _leading(work, key)
        c = work[e]
        for idx, (lm, g) in enumerate(leads):
            if monomial_divides(lm, e):
                shift = tuple(a - b for a, b in zip(e, lm))
                nc = neg(c)
                for ge, gc in g.terms.items():
                    t = tuple(a + b for a, b in zip(ge, shift))
                    v = mul(nc, gc)
                    if t in work:
                        v = add(work[t], v)
                        if is_zero(v):
                            del work[t]
                        else:
                            work[t] = v
                    elif not is_zero(v):
                        work[t] = v
                if track:
                    q = quotients.setdefault(idx, {})
                    q[shift] = add(q[shift], c) if shift in q else c
                break
        else:
            rem[e] = c
            del work[e]
    return quotients, p._like(rem)


def _quotient_polys(quotients: dict, like: Polynomial) -> dict[int, Polynomial]:
    ring = like.ring
    return {
        i: like._like({e: c for e, c in q.items() if not ring.is_zero(c)}) for i, q in quotients.items()
    }


def _row_sub(row, quotients: dict[int, Polynomial], rows) -> list[Polynomial]:
    row = list(row)
    for i, q in quotients.items():
        if q.is_zero():
            continue
        for j, r in enumerate(rows[i]):
            if not r.is_zero():
                row[j] = row[j] - q * r
    return row


def _make_monic(p: Polynomial, row, ring: RingDescriptor):
    lc = p.leading_coefficient
    if ring.is_one(lc):
        return p, row
    inv = ring.inverse(lc)
    if inv is None:
        raise UnsupportedCoefficientRing(
            f"leading coefficient {ring.format(lc)} of {p} is not a unit in {ring}; "
            "only unit-leading (monic) bases are supported over this ring"
        )
    return p.scale(inv), [r.scale(inv) for r in row]


def groebner(basis: IdealBasis) -> GroebnerData:
    """Reduced Gröbner basis with transformation rows.

    Over a non-field every intermediate basis element must have a unit
    leading coefficient, otherwise :class:`UnsupportedCoefficientRing`.
    Deterministic: pairs are processed by (degree of lcm, index pair).
    """
    return _groebner_cached(basis)


@lru_cache(maxsize=512)
def _groebner_cached(basis: IdealBasis) -> GroebnerData:
    ring = basis.ring
    m = len(basis)
    zero = basis.zero()
    G: list[Polynomial] = []
    rows: list[list[Polynomial]] = []
    for j, f in enumerate(basis.relators):
        row = [zero] * m
        row[j] = basis.one()
        g, row = _make_monic(f, row, ring)
        G.append(g)
        rows.append(row)

    pairs = {(i, j) for j in range(len(G)) for i in range(j)}
    done: set[tuple[int, int]] = set()

    def pair_key(pr):
        i, j = pr
        return (sum(monomial_lcm(G[i].leading_monomial, G[j].leading_monomial)), i, j)

    while pairs:
        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        done.add((i, j))
        lmi, lmj = G[i].leading_monomial, G[j].leading_monomial
        lcm = monomial_lcm(lmi, lmj)
        if all(a == 0 or b == 0 for a, b in zip(lmi, lmj)):
            continue
        if any(
            k not in (i, j)
            and monomial_divides(G[k].leading_monomial, lcm)
            and (min(i, k), max(i, k)) in done
            and (min(j, k), max(j, k)) in done
            for k in range(len(G))
        ):
            continue
        si = tuple(a - b for a, b in zip(lcm, lmi))
        sj = tuple(a - b for a, b in zip(lcm, lmj))
        one = ring.one()
        s = G[i].mul_term(si, one) - G[j].mul_term(sj, one)
        srow = [a.mul_term(si, one) - b.mul_term(sj, one) for a, b in zip(rows[i], rows[j])]
        q, r = _reduce(s, G)
        if r.is_zero():
            continue
        rrow = _row_sub(srow, _quotient_polys(q, s), rows)
        r, rrow = _make_monic(r, rrow, ring)
        G.append(r)
        rows.append(rrow)
        k = len(G) - 1
        pairs.update((i2, k) for i2 in range(k))

    # minimalize: drop elements whose leading monomial is divisible by another's
    keep = []
    for i, g in enumerate(G):
        lm = g.leading_monomial
        if any(
            k != i and monomial_divides(G[k].leading_monomial, lm)
            and (G[k].leading_monomial != lm or k < i)
            for k in range(len(G))
        ):
            continue
        keep.append(i)

    # interreduce tails
    final, final_rows = [], []
    for i in keep:
        g = G[i]
        others = [G[k] for k in keep if k != i]
        lm, lc = g.leading_monomial, g.leading_coefficient
        tail = g - g._like({lm: lc})
        q, r = _reduce(tail, others)
        qp = _quotient_polys(q, tail)
        index_map = [k for k in keep if k != i]
        reduced_row = _row_sub(rows[i], {index_map[t]: poly for t, poly in qp.items()}, rows)
        final.append(r + g._like({lm: lc}))
        final_rows.append(tuple(reduced_row))

    key = ORDERS[basis.order]
    order_idx = sorted(range(len(final)), key=lambda t: key(final[t].leading_monomial))
    data = GroebnerData(
        basis,
        tuple(final[t] for t in order_idx),
        tuple(final_rows[t] for t in order_idx),
    )
    for g, row in zip(data.basis, data.rows):
        if basis.combine(row) != g:
            raise InternalError("transformation row does not reproduce its basis element")
    return data


def reduce_with_cofactors(p: Polynomial, gb: GroebnerData) -> CofactorWitness:
    """Normal form of ``p`` plus cofactors against the original relators."""
    src = gb.source
    if p.context != (src.ring, src.variables, src.order):
        raise ContextMismatch("polynomial and ideal live in different contexts")
    q, r = _reduce(p, gb.basis)
    cofactors = [src.zero()] * len(src)
    for i, qi in _quotient_polys(q, p).items():
        if qi.is_zero():
            continue
        for j, rij in enumerate(gb.rows[i]):
            if not rij.is_zero():
                cofactors[j] = cofactors[j] + qi * rij
    witness = CofactorWitness(p, tuple(cofactors), r)
    if not witness.check(src):
        raise InternalError("cofactor witness failed to re-expand")
    return witness


def membership(p: Polynomial, basis: IdealBasis) -> Optional[tuple[Polynomial, ...]]:
    """Cofactors ``c`` with ``p = sum_j c_j f_j``, or ``None`` if ``p`` is not in the ideal."""
    w = reduce_with_cofactors(p, groebner(basis))
    return w.cofactors if w.remainder.is_zero() else None


@dataclass(frozen=True)
class MatrixSolution:
    """``J @ U + Id == W . f`` entrywise.

    ``U`` is n x m; ``W[j][k]`` is the cofactor tuple over the relators for
    entry ``(j, k)``.
    """

    U: tuple[tuple[Polynomial, ...], ...]
    W: tuple[tuple[tuple[Polynomial, ...], ...], ...]
    degree: int


def _solver_kind(ring: RingDescriptor) -> str:
    if ring.is_field:
        return "field"
    if isinstance(ring, Integers):
        return "integer"
    raise UnsupportedCoefficientRing(f"linear solving modulo an ideal is not supported over {ring}")


def _vector(p: Polynomial, j: int, out: dict):
    for e, c in p.terms.items():
        out[(j, e)] = c


def solve_matrix_unit_mod_ideal(
    J: Sequence[Sequence[Polynomial]], basis: IdealBasis, degree_cap: int
) -> Optional[MatrixSolution]:
    """Find ``U`` with ``J U + Id ≡ 0`` modulo the ideal, with explicit witnesses.

    Entries of ``U`` are searched among standard monomials of degree
    ``0, 1, ..., degree_cap``.  ``None`` means nothing was found within the
    cap.  Over ZZ the solve is integral; if only rational solutions were
    seen, :class:`IntegralSolveFailed` is raised instead.
    """
    if degree_cap < 0:
        raise ValueError("degree_cap must be >= 0")
    ring = basis.ring
    kind = _solver_kind(ring)
    m = len(J)
    n = len(basis.variables)
    if m != len(basis):
        raise ContextMismatch(f"matrix has {m} rows but the ideal has {len(basis)} relators")
    for row in J:
        if len(row) != n:
            raise ContextMismatch("every matrix row needs one entry per variable")
    gb = groebner(basis)
    zero = basis.zero()

    nf_cache: dict[tuple[int, int, Monomial], dict] = {}

    def column(i: int, mu: Monomial) -> dict:
        # coordinates of NF(J[j][i] * x^mu) for all j
        out = {}
        for j in range(m):
            k = (j, i, mu)
            if k not in nf_cache:
                vec: dict = {}
                _vector(gb.normal_form(J[j][i].mul_term(mu, ring.one())), j, vec)
                nf_cache[k] = vec
            out.update(nf_cache[k])
        return out

    nf_one = gb.normal_form(basis.one())
    saw_rational = False
    for d in range(degree_cap + 1):
        std = gb.standard_monomials(d)
        unknowns = [(i, mu) for i in range(n) for mu in std]
        cols = [column(i, mu) for i, mu in unknowns]
        U = [[zero] * m for _ in range(n)]
        solved = True
        for k in range(m):
            rhs_vec: dict = {}
            _vector(-nf_one, k, rhs_vec)
            rows_keys = sorted(set().union(rhs_vec, *cols), key=lambda t: (t[0], ORDERS[basis.order](t[1])))
            if kind == "field":
                A = [[col.get(key, ring.zero()) for col in cols] for key in rows_keys]
                b = [rhs_vec.get(key, ring.zero()) for key in rows_keys]
                x = solve_field(ring, A, b) if cols else (None if any(not ring.is_zero(v) for v in b) else [])
            else:
                A = [[col.get(key, 0) for col in cols] for key in rows_keys]
                b = [rhs_vec.get(key, 0) for key in rows_keys]
                x = solve_integer(A, b) if cols else (None if any(b) else [])
                if x is None and not saw_rational and cols:
                    Aq = [[Fraction(v) for v in r] for r in A]
                    if solve_field(QQ, Aq, [Fraction(v) for v in b]) is not None:
                        saw_rational = True
            if x is None:
                solved = False
                break
            for (i, mu), coeff in zip(unknowns, x):
                if not ring.is_zero(coeff):
                    U[i][k] = U[i][k] + zero._like({mu: coeff})
        if not solved:
            continue
        W = []
        for j in range(m):
            wrow = []
            for k in range(m):
                entry = basis.one() if j == k else zero
                for i in range(n):
                    if not U[i][k].is_zero():
                        entry = entry + J[j][i] * U[i][k]
                w = reduce_with_cofactors(entry, gb)
                if not w.remainder.is_zero():
                    raise InternalError("linear solve produced a non-member entry")
                wrow.append(w.cofactors)
            W.append(tuple(wrow))
        return MatrixSolution(tuple(tuple(r) for r in U), tuple(W), d)
    if saw_rational:
        raise IntegralSolveFailed(degree_cap)
    return None
