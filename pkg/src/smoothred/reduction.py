"""Descent of a certified presentation to a finitely generated subring.

Given ``B = A[x]/(f)`` with a valid certificate ``(g, u, h)``, let ``A0`` be
the subring of ``A`` generated by every coefficient of ``f``, ``u`` and
``h``.  All of that data is then defined over ``A0``; ``B0 = A0[x]/(f)`` is
smooth over ``A0`` (the same identities hold there) and ``A ⊗ B0 = B``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .certificate import Presentation, SmoothnessCertificate, verify_certificate
from .errors import InvalidCertificate
from .poly import Polynomial, gens
from .rings import RingElement
from .subring import SubringView

NOETHERIAN_NOTE = (
    "A0 is a finitely generated ZZ-algebra, hence noetherian by the Hilbert basis theorem "
    "(cited, not computed)."
)
FLATNESS_NOTE = (
    "Flatness (cited, not computed): when A -> B is smooth, it is the base change along "
    "A0 -> A of the smooth homomorphism A0 -> B0 of noetherian rings, hence flat."
)


def extract_generators(pres: Presentation, cert: SmoothnessCertificate) -> list[RingElement]:
    """Distinct nonzero coefficients of f, then u, then h, each in term order."""
    if not verify_certificate(pres, cert).passed:
        raise InvalidCertificate("certificate does not verify against the presentation")
    return [RingElement(pres.base, c) for c in _generator_payloads(pres, cert)]


def _generator_payloads(pres: Presentation, cert: SmoothnessCertificate) -> list[Any]:
    seen: list[Any] = []
    polys: list[Polynomial] = list(pres.relators)
    polys += [p for row in cert.u for p in row]
    polys += [p for plane in cert.h for row in plane for p in row]
    for p in polys:
        for _, c in p.sorted_terms():
            if c not in seen:
                seen.append(c)
    return seen


@dataclass(frozen=True)
class NoetherianReduction:
    source: Presentation
    certificate: SmoothnessCertificate
    subring: SubringView
    descended: Presentation
    descended_certificate: SmoothnessCertificate

    @property
    def generator_count(self) -> int:
        return len(self.subring.generators)

    def generators(self) -> list[RingElement]:
        return [RingElement(self.subring.ambient, g) for g in self.subring.generators]

    def embed(self, p0: Polynomial) -> Polynomial:
        """Push a polynomial over A0 to A by evaluating each coefficient expression."""
        A = self.subring.ambient
        return p0.map_coefficients(lambda c: self.subring.evaluate(c.expr), A)


def _symbolize(p: Polynomial, view: SubringView) -> Polynomial:
    index = {g: k for k, g in enumerate(view.generators)}
    terms = {e: view.gen(index[c]) for e, c in p.terms.items()}
    return Polynomial._raw(view, p.variables, terms, p.order)


def build_reduction(pres: Presentation, cert: SmoothnessCertificate) -> NoetherianReduction:
    """Adjoin all coefficients of f, u, h to ZZ and descend everything to that subring.

    Each descended coefficient of f, u, h is a single generator symbol; ``g``
    is recomputed over A0 as ``u f`` so it lands there too.
    """
    if not verify_certificate(pres, cert).passed:
        raise InvalidCertificate("certificate does not verify against the presentation")
    view = SubringView(pres.base, _generator_payloads(pres, cert))
    f0 = tuple(_symbolize(f, view) for f in pres.relators)
    descended = Presentation(view, pres.variables, f0, pres.order)
    u0 = tuple(tuple(_symbolize(p, view) for p in row) for row in cert.u)
    h0 = tuple(tuple(tuple(_symbolize(p, view) for p in row) for row in plane) for plane in cert.h)
    zero = descended.zero()
    g0 = []
    for i in range(pres.n):
        gi = zero
        for j in range(pres.m):
            gi = gi + u0[i][j] * f0[j]
        g0.append(gi)
    return NoetherianReduction(pres, cert, view, descended, SmoothnessCertificate(tuple(g0), u0, h0))


@dataclass(frozen=True)
class ReductionCheck:
    code: str
    title: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ReductionReport:
    generators: tuple[str, ...]
    descended_relators: tuple[str, ...]
    checks: tuple[ReductionCheck, ...]

    @property
    def generator_count(self) -> int:
        return len(self.generators)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, code: str) -> ReductionCheck:
        return next(c for c in self.checks if c.code == code)

    def to_dict(self) -> dict:
        return {
            "status": "pass" if self.passed else "fail",
            "generator_count": self.generator_count,
            "generators": [
                {"symbol": f"c{k + 1}", "image": g} for k, g in enumerate(self.generators)
            ],
            "descended_relators": list(self.descended_relators),
            "checks": [
                {"code": c.code, "title": c.title, "status": "pass" if c.passed else "fail", "detail": c.detail}
                for c in self.checks
            ],
            "noetherian": NOETHERIAN_NOTE,
            "flatness": FLATNESS_NOTE,
        }

    def format(self) -> str:
        lines = [f"A0 generators ({self.generator_count}):"]
        for k, g in enumerate(self.generators):
            lines.append(f"  c{k + 1} -> {g}")
        if not self.generators:
            lines.append("  (none: A0 is the prime subring)")
        lines.append("descended relators over A0:")
        for j, f in enumerate(self.descended_relators):
            lines.append(f"  f{j + 1} = {f}")
        for c in self.checks:
            status = "pass" if c.passed else "FAIL"
            line = f"{c.code} {c.title}: {status}"
            if c.detail:
                line += f" ({c.detail})"
            lines.append(line)
        lines.append(f"overall: {'pass' if self.passed else 'FAIL'}")
        lines.append(NOETHERIAN_NOTE)
        lines.append(FLATNESS_NOTE)
        return "\n".join(lines)


def _descent_well_formed(red: NoetherianReduction) -> ReductionCheck:
    view = red.subring
    pairs = [("f", a, b) for a, b in zip(red.descended.relators, red.source.relators)]
    c0, c = red.descended_certificate, red.certificate
    pairs += [("g", a, b) for a, b in zip(c0.g, c.g)]
    pairs += [("u", a, b) for r0, r in zip(c0.u, c.u) for a, b in zip(r0, r)]
    pairs += [("h", a, b) for p0, p in zip(c0.h, c.h) for r0, r in zip(p0, p) for a, b in zip(r0, r)]
    problems = []
    for name, p0, p in pairs:
        if p0.ring is not view and p0.ring != view:
            problems.append(f"{name} not over A0")
            continue
        if not all(view.is_consistent(coef) for coef in p0.terms.values()):
            problems.append(f"{name}: cached image disagrees with its expression")
        if red.embed(p0) != p:
            problems.append(f"{name}: evaluation does not recover the source")
    return ReductionCheck("R1", "descent well-formed", not problems, "; ".join(dict.fromkeys(problems)))


def _identities_over_subring(red: NoetherianReduction):
    report = verify_certificate(red.descended, red.descended_certificate)
    r2 = ReductionCheck(
        "R2",
        "g0 = u0 f0 over A0",
        report.status("C1"),
        ", ".join(f"i={c.index}" for c in report.failures() if c.identity == "C1"),
    )
    r3 = ReductionCheck(
        "R3",
        "sigma(I0) in I0^2",
        report.status("C2"),
        ", ".join(f"j={c.index}" for c in report.failures() if c.identity == "C2"),
    )
    return r2, r3


def _section_law(red: NoetherianReduction) -> ReductionCheck:
    # sigma(x_i) - x_i must equal the membership witness sum_j u0_ij f0_j, so
    # p0(sigma(x_i)) = p0(x_i) and q0 s0 p0 = p0 on generators
    pres0, cert0 = red.descended, red.descended_certificate
    xs = gens(pres0.base, pres0.variables, pres0.order)
    sigma = [x + g for x, g in zip(xs, cert0.g)]
    bad = []
    for i, (x, sx) in enumerate(zip(xs, sigma)):
        witness = pres0.zero()
        for j in range(pres0.m):
            witness = witness + cert0.u[i][j] * pres0.relators[j]
        if sx - x != witness:
            bad.append(f"i={i + 1}")
    return ReductionCheck("R4", "section law q0 s0 p0 = p0", not bad, ", ".join(bad))


def _base_change(red: NoetherianReduction) -> ReductionCheck:
    problems = []
    if red.descended.variables != red.source.variables:
        problems.append("variables differ")
    if red.descended.m != red.source.m:
        problems.append("relator count differs")
    for j, (f0, f) in enumerate(zip(red.descended.relators, red.source.relators)):
        back = red.embed(f0)
        if back != f or str(back) != str(f):
            problems.append(f"f{j + 1}")
    return ReductionCheck("R5", "base change recovers B", not problems, ", ".join(problems))


def verify_reduction(red: NoetherianReduction) -> ReductionReport:
    """Run the five descent checks in order; failures become report entries."""
    r1 = _descent_well_formed(red)
    r2, r3 = _identities_over_subring(red)
    r4 = _section_law(red)
    r5 = _base_change(red)
    A = red.subring.ambient
    return ReductionReport(
        tuple(A.format(g) for g in red.subring.generators),
        tuple(str(f) for f in red.descended.relators),
        (r1, r2, r3, r4, r5),
    )


def reduce_presentation(pres: Presentation, cert: SmoothnessCertificate) -> tuple[NoetherianReduction, ReductionReport]:
    red = build_reduction(pres, cert)
    return red, verify_reduction(red)
