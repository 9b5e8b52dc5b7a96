from fractions import Fraction

import pytest
from conftest import an_build, dn_build, point_build

from orbfrob.errors import IncompatibleMultiplication, NotEuler
from orbfrob.exact import Cyclotomic, MultiPoly
from orbfrob.gfrob import ramond
from orbfrob.group import generate_group
from orbfrob.jacobian import JacobianOrbifoldInput, build_orbifold
from orbfrob.mirror import (bigrade_type, check_dual, check_point_boundary, compare_an_action,
                            compare_point_dual, dual, dual_invariants_algebra, images_by_ebar,
                            is_euler, point_tables, transport_product, twist_operator)

from test_frobenius import an


def standard_product(n, form):
    D = dual(an_build(n))
    inv = dual_invariants_algebra(D, form=form)
    B = an(n)
    mult, unit, _ = transport_product(inv, B, images_by_ebar(inv, B))
    return D, mult, unit


def test_bigrade_type():
    assert bigrade_type([(Fraction(1, 2), Fraction(1, 2))]) == "(c,c)"
    assert bigrade_type([(Fraction(1, 2), Fraction(-1, 2))]) == "(a,c)"
    assert bigrade_type([(0, 0)]) == "(c,c)+(a,c)"
    assert bigrade_type([(0, 1), (1, 1)]) == "mixed"


@pytest.mark.parametrize("n", [2, 3, 5])
def test_twist_is_generator_of_an(n):
    t = twist_operator(an_build(n))
    assert t.name == "j"
    assert t.order == n + 1


@pytest.mark.parametrize("n", range(2, 7))
def test_an_dual_spectrum(n):
    b = an_build(n)
    assert is_euler(b)
    D = dual(b)
    assert check_dual(D, ramond(b.algebra)).ok
    assert D.e_spectrum() == sorted(-x for x in D.ebar_spectrum())
    assert compare_an_action(D, 1) == []


@pytest.mark.parametrize("n", range(2, 7))
def test_an_dual_invariants_are_ac_and_self_dual(n):
    D, mult, unit = standard_product(n, "symmetric")
    inv = dual_invariants_algebra(D, mult, unit, form="symmetric")
    assert inv.kind() == "(a,c)"
    assert inv.dim == n
    assert inv.report.ok
    assert inv.symmetric


@pytest.mark.xfail(strict=True, raises=IncompatibleMultiplication,
                   reason="pulled-back form is not symmetric across twisted sectors")
def test_an_self_duality_with_pulled_back_form():
    D, mult, unit = standard_product(3, "pulled-back")
    dual_invariants_algebra(D, mult, unit)


def test_point_dual_is_trivially_graded():
    for n in (2, 4):
        D = dual(point_build(n))
        assert set(D.bidegrees) == {(0, 0)}
        assert check_dual(D, ramond(point_build(n).algebra)).ok


def test_point_dual_pairs_inverse_sectors():
    D = dual(point_build(4))
    t = point_tables(4)
    diff = compare_point_dual(D, t, 1)
    # ours pairs i + k = 0 mod n, the display pairs i + k = n - 1
    assert {(i, k) for i, k, ours, _ in diff if ours == "1"} == {(0, 0), (1, 3), (2, 2), (3, 1)}


def test_point_table_boundary_row_breaks_invariance():
    rep = check_point_boundary(point_tables(2))
    bad = rep.get("eta(ab,c) = eta(a,bc)")
    assert not bad.passed
    assert bad.witness == ("1~0", "1~2", "1~2")
    assert point_tables(3).algebra().dim == 3


def test_odd_point_is_not_euler():
    with pytest.raises(NotEuler):
        dual(point_build(3))


def test_dn_needs_enclosing_group():
    n = 4
    small = dn_build(n, 0)
    assert not is_euler(small)
    w = [Fraction(1, 2 * n - 2)]
    f = MultiPoly(("z",), {(2 * n - 2,): 1}, w)
    big = build_orbifold(JacobianOrbifoldInput(f, w, generate_group([[[Cyclotomic.zeta(2 * n - 2)]]])))
    v = is_euler(small, big)
    assert v and v.embedding == [0, 3]
    D = dual(small, big)
    rep = check_dual(D, ramond(big.algebra))
    # both dual sectors come from the twisted Ramond sectors j^-1 and j^2
    assert not rep.get("pairing non-degenerate").passed
    assert rep.get("action is a representation").passed
