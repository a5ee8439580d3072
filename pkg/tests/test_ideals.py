from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import Field, as_dict, naive_membership, sympy_expr
from smoothred import (
    QQ,
    ZZ,
    IdealBasis,
    IntegersMod,
    IntegralSolveFailed,
    Polynomial,
    UnsupportedCoefficientRing,
    gens,
    groebner,
    membership,
    reduce_with_cofactors,
    solve_matrix_unit_mod_ideal,
)
from smoothred.linalg import solve_field, solve_integer

x, y = gens(QQ, "x y")
(X,) = gens(QQ, "x")
(Z,) = gens(ZZ, "x")


def rows_ok(gb):
    return all(gb.source.combine(row) == g for g, row in zip(gb.basis, gb.rows))


def test_zero_relator_rejected():
    with pytest.raises(ValueError):
        IdealBasis.of([X**2, X.zero_like()])


def test_single_relator_is_its_own_basis():
    gb = groebner(IdealBasis.of([X**2 - 2]))
    assert gb.basis == (X**2 - 2,)
    gb = groebner(IdealBasis.of([x * y - 1]))
    assert gb.basis == (x * y - 1,) and rows_ok(gb)


def test_basis_collapsing_to_one():
    # x*(xy+1) - y*x^2 = x, then x*y + 1 - y*x = 1
    basis = IdealBasis.of([x**2, x * y + 1])
    gb = groebner(basis)
    assert gb.basis == (x.one_like(),)
    assert rows_ok(gb)
    ref = sympy.groebner([sympy_expr(f) for f in basis.relators], *sympy.symbols("x y"), order="grevlex")
    assert list(ref.exprs) == [1]


def test_gb_against_sympy():
    basis = IdealBasis.of([x**2 * y - x + 1, x * y**2 - y])
    gb = groebner(basis)
    assert rows_ok(gb)
    sx, sy = sympy.symbols("x y")
    ref = sympy.groebner([sympy_expr(f) for f in basis.relators], sx, sy, order="grevlex")
    mine = {sympy.expand(sympy_expr(g)) for g in gb.basis}
    theirs = {sympy.expand(g / sympy.Poly(g, sx, sy).LC(order="grevlex")) for g in ref.exprs}
    assert mine == theirs


def test_reduce_with_cofactors_examples():
    gb = groebner(IdealBasis.of([X**2 - 2]))
    w = reduce_with_cofactors(X**2 * Fraction(1, 2) - 1, gb)
    assert w.cofactors == (X.one_like() * Fraction(1, 2),) and w.remainder.is_zero()
    gb2 = groebner(IdealBasis.of([X**2]))
    w = reduce_with_cofactors(X.one_like(), gb2)
    assert w.cofactors == (X.zero_like(),) and w.remainder == 1
    w = reduce_with_cofactors(X.zero_like(), gb2)
    assert w.cofactors == (X.zero_like(),) and w.remainder.is_zero()


def test_membership_examples():
    assert membership(-(X**3 - 2 * X) * Fraction(1, 4), IdealBasis.of([X**2 - 2])) == (-X * Fraction(1, 4),)
    f = x * y - 1
    assert membership(-x * f, IdealBasis.of([f])) == (-x,)
    assert membership(X.one_like(), IdealBasis.of([X**2])) is None


def test_groebner_over_zz():
    gb = groebner(IdealBasis.of([Z**2 - Z]))
    assert gb.basis == (Z**2 - Z,)
    with pytest.raises(UnsupportedCoefficientRing):
        groebner(IdealBasis.of([2 * Z**2 - 1]))


def test_groebner_over_zz_mod_n():
    (t,) = gens(IntegersMod(6), "t")
    gb = groebner(IdealBasis.of([t**2 + 5]))
    assert gb.basis == (t**2 - 1,)
    with pytest.raises(UnsupportedCoefficientRing):
        groebner(IdealBasis.of([2 * t + 1, 3 * t]))


def test_solve_examples():
    f = x * y - 1
    J = [[y, x]]
    sol = solve_matrix_unit_mod_ideal(J, IdealBasis.of([f]), 1)
    assert sol.U == ((-x,), (x.zero_like(),))
    assert sol.W == (((x.one_like() * -1,),),)

    J = [[2 * X]]
    sol = solve_matrix_unit_mod_ideal(J, IdealBasis.of([X**2 - 2]), 1)
    assert sol.U == ((-X * Fraction(1, 4),),)
    assert sol.W == (((X.one_like() * Fraction(-1, 2),),),)

    for cap in range(6):
        assert solve_matrix_unit_mod_ideal(J, IdealBasis.of([X**2]), cap) is None


def test_solve_over_zz():
    sol = solve_matrix_unit_mod_ideal([[2 * Z - 1]], IdealBasis.of([Z**2 - Z]), 2)
    assert sol.U == ((-2 * Z + 1,),)
    # 2x * u + 1 = 0 mod x^2 - 2 needs u = -x/4: no integral solution
    with pytest.raises(IntegralSolveFailed):
        solve_matrix_unit_mod_ideal([[2 * Z]], IdealBasis.of([Z**2 - 2]), 3)


def test_solve_unsupported_ring():
    (t,) = gens(IntegersMod(6), "t")
    with pytest.raises(UnsupportedCoefficientRing):
        solve_matrix_unit_mod_ideal([[2 * t]], IdealBasis.of([t**2 - 1]), 1)


def test_linalg_field_and_integer():
    assert solve_field(QQ, [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]], [Fraction(3), Fraction(2)]) == [1, 1]
    assert solve_field(QQ, [[Fraction(1)], [Fraction(1)]], [Fraction(1), Fraction(2)]) is None
    assert solve_integer([[2, 4], [1, 3]], [6, 4]) == [1, 1]
    assert solve_integer([[2]], [1]) is None
    x_ = solve_integer([[6, 10, 15]], [1])
    assert x_ is not None and 6 * x_[0] + 10 * x_[1] + 15 * x_[2] == 1


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=3), st.lists(st.integers(-9, 9), min_size=3, max_size=3))
def test_integer_solve_complete(A, sol):
    rhs = [sum(a * s for a, s in zip(row, sol)) for row in A]
    x_ = solve_integer(A, rhs)
    assert x_ is not None
    assert [sum(a * s for a, s in zip(row, x_)) for row in A] == rhs


# -- property: witnesses and oracle agreement -----------------------------


def poly_st(ring, nvars, max_deg, max_terms):
    mon = st.lists(st.integers(0, max_deg), min_size=nvars, max_size=nvars).filter(lambda e: sum(e) <= max_deg)
    return st.dictionaries(mon.map(tuple), st.integers(-5, 5), max_size=max_terms).map(
        lambda d: Polynomial(ring, tuple("xyz"[:nvars]), d)
    )


@st.composite
def membership_case(draw):
    ring, modulus = draw(st.sampled_from([(QQ, None), (IntegersMod(5), 5)]))
    n = draw(st.integers(1, 3))
    m = draw(st.integers(1, 2))
    rels = [draw(poly_st(ring, n, 4, 4).filter(lambda p: not p.is_zero())) for _ in range(m)]
    cof = [draw(poly_st(ring, n, 2, 3)) for _ in range(m)]
    rem = draw(poly_st(ring, n, 3, 2))
    return rels, cof, rem, modulus


@settings(max_examples=120, deadline=None)
@given(membership_case())
def test_membership_matches_naive_oracle(case):
    rels, cof, rem, modulus = case
    basis = IdealBasis.of(rels)
    field = Field(modulus)
    n = len(rels[0].variables)
    known = basis.combine(cof)
    got = membership(known, basis)
    assert got is not None and basis.combine(got) == known

    target = known + rem
    w = reduce_with_cofactors(target, groebner(basis))
    assert w.check(basis)
    got = membership(target, basis)
    rd = [as_dict(r, field) for r in rels]
    if got is None:
        assert naive_membership(as_dict(target, field), rd, n, 3, field) is None
    else:
        bound = max(c.degree() for c in got)
        assert naive_membership(as_dict(target, field), rd, n, bound, field) is not None
