import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbfrob.errors import BranchAmbiguity, NonIsolated, NotQuasiHomogeneous, NotRootOfUnity
from orbfrob.exact import (ONE, ZERO, Cyclotomic, MultiPoly, cyclotomic_poly, det, inverse,
                           matmul, milnor_ring, nullspace, rank, solve, sqrt_rational, sqrt_unit)
from orbfrob.exact.linalg import identity
from orbfrob.textio import parse_poly, parse_scalar, parse_vec, scalar_text, vec_text

ORDERS = [1, 2, 3, 4, 5, 6, 8, 12]


@st.composite
def cyclotomics(draw, orders=ORDERS):
    order = draw(st.sampled_from(orders))
    terms = draw(st.lists(st.tuples(st.integers(0, order - 1),
                                    st.fractions(min_value=-3, max_value=3, max_denominator=4)),
                          max_size=3))
    acc = ZERO
    for k, c in terms:
        acc = acc + Cyclotomic.zeta(order, k).scale(c)
    return acc


def close(a: Cyclotomic, z: complex) -> bool:
    return abs(complex(a) - z) < 1e-9


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)


def test_roots_of_unity_and_text():
    i = Cyclotomic.root(Fraction(1, 4))
    assert i * i == -1
    assert str(Cyclotomic.root(Fraction(3, 8))) == "w(3/8)"
    assert Cyclotomic.zeta(6, 3) == -1
    assert Cyclotomic.zeta(3) + Cyclotomic.zeta(3, 2) == -1


@given(cyclotomics(), cyclotomics())
def test_field_ops_match_complex_oracle(a, b):
    assert close(a + b, complex(a) + complex(b))
    assert close(a * b, complex(a) * complex(b))
    assert close(a - b, complex(a) - complex(b))
    if b:
        assert close(a / b, complex(a) / complex(b))


@given(cyclotomics(), cyclotomics(), cyclotomics())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if a:
        assert a * a.inverse() == ONE


@given(cyclotomics())
def test_hash_agrees_with_equality_across_orders(a):
    lifted = a.lift(24 if 24 % a.order == 0 else a.order * 24)
    assert lifted == a
    assert hash(lifted) == hash(a)


@given(cyclotomics())
def test_conjugation_oracle(a):
    assert close(a.conj(), complex(a).conjugate())


@given(st.integers(1, 24).flatmap(lambda b: st.tuples(st.integers(0, b - 1), st.just(b))))
def test_sqrt_unit_principal_branch(ab):
    a = Fraction(*ab)
    if a == Fraction(1, 2):
        return
    c = Cyclotomic.root(a)
    r = sqrt_unit(c)
    assert r * r == c
    assert close(r, cmath.exp(1j * cmath.pi * float(a)))


def test_sqrt_unit_branch_cut_and_errors():
    with pytest.raises(BranchAmbiguity):
        sqrt_unit(-1)
    assert sqrt_unit(-1, minus_one=1) == Cyclotomic.root(Fraction(1, 4))
    with pytest.raises(NotRootOfUnity):
        sqrt_unit(2)


@settings(max_examples=25)
@given(st.integers(-12, 12), st.integers(1, 4))
def test_sqrt_rational(a, b):
    q = Fraction(a, b)
    r = sqrt_rational(q)
    assert r * r == q
    if q > 0:
        assert complex(r).real > 0


@given(cyclotomics())
def test_scalar_text_round_trip(a):
    assert parse_scalar(scalar_text(a)) == a


def test_scalar_parse_forms():
    assert parse_scalar("-3/4") == Fraction(-3, 4)
    assert parse_scalar("i") == Cyclotomic.root(Fraction(1, 4))
    assert parse_scalar("w(-1/8)") == Cyclotomic.root(Fraction(7, 8))
    assert parse_scalar("2*w(1/3)+1") == 1 + 2 * Cyclotomic.zeta(3)
    assert parse_vec("0") == {}
    v = parse_vec("2:w(1/8),0:-1")
    assert vec_text(v) == "0:-1,2:w(1/8)"


def test_polynomial_parse_and_arith():
    p = parse_poly("x^3 + x*y^2", ("x", "y"))
    x = MultiPoly.var(("x", "y"), "x")
    y = MultiPoly.var(("x", "y"), "y")
    assert p == x ** 3 + x * y ** 2
    assert p.diff(1) == 2 * x * y


def test_linear_algebra():
    z = Cyclotomic.zeta(3)
    m = [[ONE, z], [z * z, ONE]]
    assert det(m) == ONE - z ** 3
    assert rank(m) == 1
    ns = nullspace(m)
    assert len(ns) == 1
    a = [[ONE, z], [ZERO, 2 * ONE]]
    assert matmul(a, inverse(a)) == identity(2)
    x = solve(a, [ONE, ONE])
    assert [a[0][0] * x[0] + a[0][1] * x[1], a[1][1] * x[1]] == [ONE, ONE]


@pytest.mark.parametrize("n", range(1, 9))
def test_milnor_ring_an(n):
    w = [Fraction(1, n + 1)]
    ring = milnor_ring(MultiPoly(("z",), {(n + 1,): 1}, w), w)
    assert ring.dim == n
    assert ring.degrees == tuple(Fraction(k, n + 1) for k in range(n))


def test_milnor_ring_dn_basis():
    n = 5
    w = (Fraction(1, n - 1), Fraction(n - 2, 2 * (n - 1)))
    ring = milnor_ring(MultiPoly(("x", "y"), {(n - 1, 0): 1, (1, 2): 1}, w), w)
    assert ring.dim == n
    assert max(ring.degrees) == sum(1 - 2 * q for q in w)


def test_milnor_ring_errors():
    with pytest.raises(NotQuasiHomogeneous):
        milnor_ring(MultiPoly(("x",), {(3,): 1, (4,): 1}), [Fraction(1, 3)])
    with pytest.raises(NonIsolated):
        milnor_ring(MultiPoly(("x", "y"), {(2, 0): 1}), [Fraction(1, 2), Fraction(1, 2)])


@settings(max_examples=30)
@given(st.integers(2, 12))
def test_hessian_is_top_class(n):
    w = [Fraction(1, n)]
    ring = milnor_ring(MultiPoly(("z",), {(n,): 1}, w), w)
    assert ring.hessian_scale == n * (n - 1)
