import copy
from fractions import Fraction

import pytest

from smoothred import (
    QQ,
    ZZ,
    InvalidCertificate,
    Presentation,
    SmoothnessCertificate,
    build_reduction,
    extract_generators,
    reduce_presentation,
    synthesize_certificate,
    verify_certificate,
    verify_reduction,
)
from smoothred.poly import Polynomial, gens
from smoothred.reduction import FLATNESS_NOTE, NOETHERIAN_NOTE
from smoothred.subring import SubringElement

x, y = gens(QQ, "x y")
(X,) = gens(QQ, "x")
(Z,) = gens(ZZ, "x")

XY = Presentation(QQ, ("x", "y"), (x * y - 1,))
SQRT2 = Presentation(QQ, ("x",), (X**2 - 2,))
IDEM = Presentation(ZZ, ("x",), (Z**2 - Z,))


def values(elems):
    return [e.value for e in elems]


def test_extract_generators_examples():
    assert values(extract_generators(XY, synthesize_certificate(XY))) == [1, -1]
    got = values(extract_generators(SQRT2, synthesize_certificate(SQRT2)))
    assert got == [1, -2, Fraction(-1, 4), Fraction(1, 16), Fraction(-1, 2)]
    idem = values(extract_generators(IDEM, synthesize_certificate(IDEM)))
    assert idem == [1, -1, -2, 4, -4, -3] and all(type(v) is int for v in idem)
    free = Presentation(QQ, ("x",))
    assert extract_generators(free, SmoothnessCertificate.zero(free)) == []


def test_extract_rejects_invalid_certificate():
    bad = SmoothnessCertificate.zero(SQRT2)
    with pytest.raises(InvalidCertificate):
        extract_generators(SQRT2, bad)
    with pytest.raises(InvalidCertificate):
        build_reduction(SQRT2, bad)


def test_build_reduction_sqrt2():
    red = build_reduction(SQRT2, synthesize_certificate(SQRT2))
    assert red.generator_count == 5
    (f0,) = red.descended.relators
    assert str(f0) == "c1*x^2 + c2"
    c1, c2 = f0.coefficient((2,)), f0.coefficient((0,))
    assert (c1.image, c2.image) == (1, -2)
    assert str(red.descended_certificate.u[0][0]) == "c3*x"
    assert str(red.descended_certificate.h[0][0][0]) == "c4*x^2 + c5"
    assert red.embed(f0) == SQRT2.relators[0]


def test_build_reduction_over_zz_integers_only():
    red = build_reduction(IDEM, synthesize_certificate(IDEM))
    assert all(type(g) is int for g in red.subring.generators)
    for p in red.descended_certificate.polynomials():
        for c in p.terms.values():
            assert type(c.image) is int and red.subring.evaluate(c.expr) == c.image


def test_build_reduction_free_algebra():
    free = Presentation(QQ, ("x",))
    red, report = reduce_presentation(free, SmoothnessCertificate.zero(free))
    assert red.generator_count == 0 and str(red.subring) == "ZZ"
    assert report.passed


@pytest.mark.parametrize("pres", [XY, SQRT2, IDEM], ids=["xy-1", "x^2-2", "x^2-x"])
def test_all_checks_pass(pres):
    red, report = reduce_presentation(pres, synthesize_certificate(pres))
    assert [c.code for c in report.checks] == ["R1", "R2", "R3", "R4", "R5"]
    assert report.passed
    text = report.format()
    assert text.endswith(FLATNESS_NOTE) and NOETHERIAN_NOTE in text
    # functoriality: the evaluated descended certificate verifies over A
    lifted = red.descended_certificate.map(red.embed)
    assert lifted == red.certificate
    assert verify_certificate(pres, lifted).passed
    for f0, f in zip(red.descended.relators, pres.relators):
        assert str(red.embed(f0)) == str(f)


def test_corrupted_generator_image_fails_r1_and_r5():
    # c2 = -1 appears in f = c1*x*y + c2 and as h = c2; corrupt its entry in
    # the generator table that every cached image is checked against
    red = build_reduction(XY, synthesize_certificate(XY))
    assert str(red.descended_certificate.h[0][0][0]) == "c2"
    bad = copy.deepcopy(red)
    bad.subring.generators = (bad.subring.generators[0], Fraction(-3))
    report = verify_reduction(bad)
    assert not report.check("R1").passed
    assert not report.check("R5").passed
    assert not report.passed


def test_corrupted_h_coefficient_image_fails_r1():
    red = build_reduction(SQRT2, synthesize_certificate(SQRT2))
    h0 = red.descended_certificate.h[0][0][0]
    lead = h0.coefficient((2,))
    wrong = SubringElement(lead.expr, Fraction(1, 8))
    terms = dict(h0.terms)
    terms[(2,)] = wrong
    corrupt = Polynomial._raw(h0.ring, h0.variables, terms, h0.order)
    cert0 = red.descended_certificate
    bad = copy.copy(red)
    object.__setattr__(bad, "descended_certificate", SmoothnessCertificate(cert0.g, cert0.u, (((corrupt,),),)))
    report = verify_reduction(bad)
    assert not report.check("R1").passed
    assert "cached image" in report.check("R1").detail
    assert report.check("R5").passed
    assert not report.passed


def test_reports_are_deterministic():
    a = reduce_presentation(SQRT2, synthesize_certificate(SQRT2))[1]
    b = reduce_presentation(SQRT2, synthesize_certificate(SQRT2))[1]
    assert a.format() == b.format() and a.to_dict() == b.to_dict()
    assert a.to_dict()["generators"][2] == {"symbol": "c3", "image": "-1/4"}
