import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import Field, as_dict, d_add, d_mul, d_scale, d_substitute
from smoothred import (
    QQ,
    ZZ,
    Inconclusive,
    IntegersMod,
    Polynomial,
    PolynomialQuotient,
    Presentation,
    SmoothnessCertificate,
    jacobian,
    synthesize_certificate,
    verify_certificate,
)
from smoothred.certificate import certificate_from_arrays
from smoothred.errors import ShapeMismatch
from smoothred.poly import gens

x, y = gens(QQ, "x y")
(X,) = gens(QQ, "x")
(Z,) = gens(ZZ, "x")

XY = Presentation(QQ, ("x", "y"), (x * y - 1,))
SQRT2 = Presentation(QQ, ("x",), (X**2 - 2,))
IDEM = Presentation(ZZ, ("x",), (Z**2 - Z,))


def cert_xy():
    f = x * y - 1
    z = x.zero_like()
    return SmoothnessCertificate((-x * f, z), ((-x,), (z,)), (((-f.one_like(),),),))


def cert_sqrt2(h=None):
    f = X**2 - 2
    u = -X * Fraction(1, 4)
    h = X**2 * Fraction(1, 16) - Fraction(1, 2) if h is None else h
    return SmoothnessCertificate((u * f,), ((u,),), (((h,),),))


def naive_verify(pres, cert, modulus=None):
    """Both identities by dict arithmetic from tests/oracles.py."""
    field = Field(modulus) if modulus else None
    n, m = pres.n, pres.m
    f = [as_dict(p, field) for p in pres.relators]
    for i in range(n):
        rhs = {}
        for j in range(m):
            rhs = d_add(rhs, d_mul(as_dict(cert.u[i][j], field), f[j], field), field)
        if rhs != as_dict(cert.g[i], field):
            return False
    shifted = []
    for i in range(n):
        e = tuple(int(k == i) for k in range(n))
        shifted.append(d_add({e: 1}, as_dict(cert.g[i], field), field))
    for j in range(m):
        lhs = d_substitute(f[j], shifted, n, field)
        rhs = {}
        for k in range(m):
            for l in range(m):
                rhs = d_add(rhs, d_mul(d_mul(as_dict(cert.h[j][k][l], field), f[k], field), f[l], field), field)
        if d_add(lhs, d_scale(rhs, -1, field), field):
            return False
    return True


def test_jacobian_examples():
    assert jacobian(XY) == [[y, x]]
    assert jacobian(SQRT2) == [[2 * X]]
    assert jacobian(IDEM) == [[2 * Z - 1]]
    assert jacobian(Presentation(QQ, ("x",))) == []


def test_verify_examples():
    r = verify_certificate(XY, cert_xy())
    assert r.passed and r.summary() == "C1 pass, C2 pass"
    assert verify_certificate(SQRT2, cert_sqrt2()).passed
    assert naive_verify(XY, cert_xy()) and naive_verify(SQRT2, cert_sqrt2())


def test_verify_perturbed_h_reports_discrepancy():
    r = verify_certificate(SQRT2, cert_sqrt2(h=X**2 * Fraction(1, 16)))
    assert not r.passed
    assert r.status("C1") and not r.status("C2")
    (bad,) = r.failures()
    # lhs - rhs = (h_true - h_perturbed) f^2 = -(1/2)(x^2 - 2)^2
    assert bad.discrepancy == (X**2 - 2) ** 2 * Fraction(-1, 2)
    assert r.summary() == "C1 pass, C2 fail"


def test_verify_degenerate_presentations():
    free = Presentation(QQ, ("x", "y"))
    r = verify_certificate(free, SmoothnessCertificate.zero(free))
    assert r.passed and [c.identity for c in r.checks] == ["C1", "C1"]
    c = Polynomial.constant(QQ, (), 2)
    point = Presentation(QQ, (), (c,))
    cert = SmoothnessCertificate((), (), (((c.one_like() * Fraction(1, 2),),),))
    assert verify_certificate(point, cert).passed
    assert verify_certificate(point, synthesize_certificate(point)).passed


def test_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        verify_certificate(SQRT2, cert_xy())
    with pytest.raises(ShapeMismatch):
        certificate_from_arrays(XY, [x.zero_like()], [[x.zero_like()]], [[[x.zero_like()]]])
    (xz,) = gens(ZZ, "x")
    with pytest.raises(ShapeMismatch):
        verify_certificate(SQRT2, SmoothnessCertificate((xz,), ((xz,),), (((xz,),),)))


def test_synthesize_examples():
    c = synthesize_certificate(XY, 2)
    assert c.g == (-x * (x * y - 1), x.zero_like())
    assert c.u == ((-x,), (x.zero_like(),))
    assert c.h[0][0][0] == -1

    c = synthesize_certificate(SQRT2, 2)
    assert c.u == ((-X * Fraction(1, 4),),)
    assert c.h[0][0][0] == X**2 * Fraction(1, 16) - Fraction(1, 2)

    c = synthesize_certificate(IDEM, 2)
    assert c.u == ((-(2 * Z - 1),),)
    assert c.g == (-(2 * Z - 1) * (Z**2 - Z),)
    assert c.h[0][0][0] == 4 * Z**2 - 4 * Z - 3
    assert naive_verify(IDEM, c)


def test_synthesize_inconclusive():
    pres = Presentation(QQ, ("x",), (X**2,))
    for cap in (0, 3, 6):
        with pytest.raises(Inconclusive) as info:
            synthesize_certificate(pres, cap)
        assert "inconclusive at degree cap" in str(info.value)


def test_synthesize_degenerate():
    free = Presentation(QQ, ("x",))
    c = synthesize_certificate(free)
    assert c.g == (X.zero_like(),) and c.u == ((),) and c.h == ()


def test_synthesize_multirelator():
    # the two points (x, y) = (1, 2), (2, 3): smooth of relative dimension zero
    pres = Presentation(QQ, ("x", "y"), (x**2 - 3 * x + 2, y - x - 1))
    c = synthesize_certificate(pres)
    assert verify_certificate(pres, c).passed and naive_verify(pres, c)
    # h is accumulated only in k <= l slots
    for plane in c.h:
        for k, row in enumerate(plane):
            for l, p in enumerate(row):
                assert k <= l or p.is_zero()


@st.composite
def monic_squarefree_case(draw):
    p = draw(st.sampled_from([3, 5, 7]))
    deg = draw(st.integers(1, 3))
    coeffs = draw(st.lists(st.integers(0, p - 1), min_size=deg, max_size=deg))
    return p, coeffs


@settings(max_examples=40, deadline=None)
@given(monic_squarefree_case())
def test_synth_verify_roundtrip_finite_fields(case):
    p, coeffs = case
    ring = IntegersMod(p)
    (t,) = gens(ring, "x")
    f = t ** len(coeffs) + sum((c * t**k for k, c in enumerate(coeffs)), t.zero_like())
    pres = Presentation(ring, ("x",), (f,))
    try:
        cert = synthesize_certificate(pres)
    except Inconclusive:
        # f' not invertible mod f (f has a repeated factor); confirm that by brute force
        df = f.hasse_derivative((1,))
        quot = PolynomialQuotient(ring, ("x",), [f])
        assert quot.inverse(quot.from_polynomial(df)) is None
        return
    assert verify_certificate(pres, cert).passed
    assert naive_verify(pres, cert, modulus=p)


def test_mutation_makes_verify_fail():
    rng = random.Random(7)
    base_certs = [(XY, cert_xy()), (SQRT2, cert_sqrt2()), (IDEM, synthesize_certificate(IDEM))]
    for _ in range(30):
        pres, cert = rng.choice(base_certs)
        polys = list(cert.polynomials())
        idx = rng.randrange(len(polys))
        target = polys[idx]
        mon = rng.choice(list(target.terms) or [(0,) * pres.n])
        delta = Polynomial(pres.base, pres.variables, {mon: rng.choice([-2, -1, 1, 3])})
        it = iter(range(len(polys)))
        mutated = cert.map(lambda q: q + delta if next(it) == idx else q)
        r = verify_certificate(pres, mutated)
        assert not r.passed and any(not c.discrepancy.is_zero() for c in r.failures())
