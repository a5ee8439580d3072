"""Presentations ``B = A[x_1..x_n] / (f_1..f_m)`` and smoothness certificates.

A certificate is the data ``(g, u, h)`` with

    (C1)  g_i = sum_j u_ij * f_j
    (C2)  f_j(x_1 + g_1, ..., x_n + g_n) = sum_{k,l} h_jkl * f_k * f_l

as exact equalities of polynomials.  Such data describes a section of
``P/I^2 -> P/I`` sending the class of ``x_i`` to the class of ``x_i + g_i``.
Checking it is pure expansion, so it works over every coefficient ring.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import InternalError, Inconclusive, ShapeMismatch
from .ideals import IdealBasis, solve_matrix_unit_mod_ideal
from .poly import Polynomial, gens, hasse_derivative, hasse_expansion, monomial_in, substitute
from .rings import RingDescriptor


@dataclass(frozen=True)
class Presentation:
    base: RingDescriptor
    variables: tuple[str, ...]
    relators: tuple[Polynomial, ...] = ()
    order: str = "grevlex"

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "relators", tuple(self.relators))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names: {self.variables}")
        for j, f in enumerate(self.relators):
            if f.is_zero():
                raise ValueError(f"relator {j + 1} is zero")
            if f.context != self.context:
                raise ShapeMismatch(f"relator {j + 1} is not a polynomial over {self.base} in {self.variables}")

    @property
    def context(self):
        return (self.base, self.variables, self.order)

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def m(self) -> int:
        return len(self.relators)

    def gens(self) -> tuple[Polynomial, ...]:
        return gens(self.base, self.variables, self.order)

    def zero(self) -> Polynomial:
        return Polynomial.zero(self.base, self.variables, self.order)

    def ideal(self) -> IdealBasis:
        return IdealBasis(self.base, self.variables, self.relators, self.order)

    def max_degree(self) -> int:
        return max((f.degree() for f in self.relators), default=0)

    def default_degree_cap(self) -> int:
        return 2 * self.max_degree() + 2


@dataclass(frozen=True)
class SmoothnessCertificate:
    g: tuple[Polynomial, ...]
    u: tuple[tuple[Polynomial, ...], ...]
    h: tuple[tuple[tuple[Polynomial, ...], ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "g", tuple(self.g))
        object.__setattr__(self, "u", tuple(tuple(r) for r in self.u))
        object.__setattr__(self, "h", tuple(tuple(tuple(r) for r in plane) for plane in self.h))

    @classmethod
    def zero(cls, pres: Presentation) -> "SmoothnessCertificate":
        z = pres.zero()
        n, m = pres.n, pres.m
        return cls(
            (z,) * n,
            tuple((z,) * m for _ in range(n)),
            tuple(tuple((z,) * m for _ in range(m)) for _ in range(m)),
        )

    def polynomials(self):
        yield from self.g
        for row in self.u:
            yield from row
        for plane in self.h:
            for row in plane:
                yield from row

    def map(self, fn) -> "SmoothnessCertificate":
        return SmoothnessCertificate(
            tuple(fn(p) for p in self.g),
            tuple(tuple(fn(p) for p in row) for row in self.u),
            tuple(tuple(tuple(fn(p) for p in row) for row in plane) for plane in self.h),
        )


def check_shape(pres: Presentation, cert: SmoothnessCertificate):
    n, m = pres.n, pres.m
    if len(cert.g) != n:
        raise ShapeMismatch(f"g has {len(cert.g)} entries, expected {n}")
    if len(cert.u) != n or any(len(row) != m for row in cert.u):
        raise ShapeMismatch(f"u must be {n} x {m}")
    if len(cert.h) != m or any(len(plane) != m or any(len(r) != m for r in plane) for plane in cert.h):
        raise ShapeMismatch(f"h must be {m} x {m} x {m}")
    for p in cert.polynomials():
        if p.context != pres.context:
            raise ShapeMismatch(f"certificate entry {p} is not over {pres.base} in {pres.variables}")


@dataclass(frozen=True)
class IdentityCheck:
    identity: str  # "C1" or "C2"
    index: int  # 1-based i (C1) or j (C2)
    discrepancy: Polynomial  # lhs - rhs

    @property
    def passed(self) -> bool:
        return self.discrepancy.is_zero()


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[IdentityCheck, ...]
    elapsed: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def status(self, identity: str) -> bool:
        return all(c.passed for c in self.checks if c.identity == identity)

    def failures(self) -> list[IdentityCheck]:
        return [c for c in self.checks if not c.passed]

    def summary(self) -> str:
        return ", ".join(f"{name} {'pass' if self.status(name) else 'fail'}" for name in ("C1", "C2"))

    def to_dict(self) -> dict:
        return {
            "status": "pass" if self.passed else "fail",
            "summary": self.summary(),
            "checks": [
                {
                    "identity": c.identity,
                    "index": c.index,
                    "status": "pass" if c.passed else "fail",
                    "discrepancy": str(c.discrepancy),
                }
                for c in self.checks
            ],
        }


def jacobian(pres: Presentation) -> list[list[Polynomial]]:
    """``m x n`` matrix of first Hasse derivatives ``D^{e_i} f_j``."""
    n = pres.n
    unit = [tuple(int(k == i) for k in range(n)) for i in range(n)]
    return [[hasse_derivative(f, unit[i]) for i in range(n)] for f in pres.relators]


def verify_certificate(pres: Presentation, cert: SmoothnessCertificate) -> VerificationReport:
    """Check both identities by exact expansion (no Gröbner bases involved)."""
    check_shape(pres, cert)
    start = time.perf_counter()
    f = pres.relators
    checks = []
    for i in range(pres.n):
        rhs = pres.zero()
        for j in range(pres.m):
            rhs = rhs + cert.u[i][j] * f[j]
        checks.append(IdentityCheck("C1", i + 1, cert.g[i] - rhs))
    shifted = [x + g for x, g in zip(pres.gens(), cert.g)]
    for j in range(pres.m):
        lhs = substitute(f[j], shifted) if pres.n else f[j]
        rhs = pres.zero()
        for k in range(pres.m):
            for l in range(pres.m):
                hjkl = cert.h[j][k][l]
                if not hjkl.is_zero():
                    rhs = rhs + hjkl * f[k] * f[l]
        checks.append(IdentityCheck("C2", j + 1, lhs - rhs))
    return VerificationReport(tuple(checks), time.perf_counter() - start)


def synthesize_certificate(pres: Presentation, degree_cap: Optional[int] = None) -> SmoothnessCertificate:
    """Search for a certificate.

    Solves ``J U + Id ≡ 0 (mod I)`` with explicit witnesses ``W``, sets
    ``u = U`` and ``g = U f``, then assembles ``h`` from ``W`` (first-order
    Taylor part) and from the higher Hasse derivatives, expanding the first
    two ``g`` factors of each ``g^alpha`` through ``u``.  Contributions go to
    ``h[j][k][l]`` with ``k <= l``.

    Raises :class:`Inconclusive` when nothing is found within
    ``degree_cap`` (default ``2 * max deg f + 2``).  That is not a proof of
    non-smoothness.
    """
    n, m = pres.n, pres.m
    if m == 0:
        return SmoothnessCertificate.zero(pres)
    cap = pres.default_degree_cap() if degree_cap is None else degree_cap
    J = jacobian(pres)
    solution = solve_matrix_unit_mod_ideal(J, pres.ideal(), cap)
    if solution is None:
        raise Inconclusive(cap)
    U, W = solution.U, solution.W
    f = pres.relators
    zero = pres.zero()

    g = []
    for i in range(n):
        gi = zero
        for k in range(m):
            if not U[i][k].is_zero():
                gi = gi + U[i][k] * f[k]
        g.append(gi)

    h = [[[zero] * m for _ in range(m)] for _ in range(m)]

    def bump(j, k, l, p):
        if k > l:
            k, l = l, k
        h[j][k][l] = h[j][k][l] + p

    for j in range(m):
        # f_j + sum_i D^{e_i} f_j g_i = sum_k (delta_jk + (JU)_jk) f_k = sum_kl W[j][k][l] f_l f_k
        for k in range(m):
            for l, w in enumerate(W[j][k]):
                if not w.is_zero():
                    bump(j, k, l, w)
        for alpha, d in hasse_expansion(f[j]):
            if sum(alpha) < 2 or any(a and g[i].is_zero() for i, a in enumerate(alpha)):
                continue
            factors = [i for i, a in enumerate(alpha) for _ in range(a)]
            a, b = factors[0], factors[1]
            rest = list(alpha)
            rest[a] -= 1
            rest[b] -= 1
            coeff = d * monomial_in(g, tuple(rest), d)
            for k in range(m):
                if U[a][k].is_zero():
                    continue
                left = coeff * U[a][k]
                for l in range(m):
                    if not U[b][l].is_zero():
                        bump(j, k, l, left * U[b][l])

    cert = SmoothnessCertificate(tuple(g), U, h)
    report = verify_certificate(pres, cert)
    if not report.passed:
        bad = ", ".join(f"{c.identity}[{c.index}]" for c in report.failures())
        raise InternalError(f"synthesized certificate failed verification at {bad}")
    return cert


def certificate_from_arrays(
    pres: Presentation,
    g: Sequence[Polynomial],
    u: Sequence[Sequence[Polynomial]],
    h: Sequence[Sequence[Sequence[Polynomial]]],
) -> SmoothnessCertificate:
    cert = SmoothnessCertificate(tuple(g), u, h)
    check_shape(pres, cert)
    return cert
