import copy
from fractions import Fraction

import pytest
from conftest import an_build, dn_build, fermat_build, point_build
from hypothesis import given
from hypothesis import strategies as st

from orbfrob.errors import CharacterMismatch, GroupMismatch, InputSyntaxError
from orbfrob.exact import ONE, Cyclotomic
from orbfrob.gfrob import (RamondSpace, braided_tensor, check_braided, check_gfrob, check_ramond,
                           chi_from_phi, dump, gf_direct_sum, gf_tensor, group_algebra,
                           invariants, load, ramond, restrict, trivial_group_algebra, unramond)
from orbfrob.group import ParityChoice, cyclic_group, direct_product

from test_frobenius import an


def small_algebras():
    yield an_build(2).algebra
    yield an_build(3).algebra
    yield an_build(3, True).algebra
    yield dn_build(4, 1).algebra
    yield point_build(2).algebra
    yield group_algebra(cyclic_group(4))
    yield group_algebra(cyclic_group(2), ParityChoice([0, 1]))


ALGEBRAS = list(small_algebras())
indices = st.integers(0, len(ALGEBRAS) - 1)


def same(A, B) -> bool:
    return (A.labels == B.labels and A.sector == B.sector and A.mult == B.mult and A.eta == B.eta
            and A.phi == B.phi and A.chi == B.chi and A.unit == B.unit)


@given(indices)
def test_ramond_round_trip(k):
    A = ALGEBRAS[k]
    V = ramond(A)
    assert isinstance(V, RamondSpace)
    assert check_ramond(V).ok
    B = unramond(V)
    assert same(A, B)
    assert B.degrees == A.degrees


@given(indices)
def test_dump_load_round_trip(k):
    A = ALGEBRAS[k]
    text = dump(A)
    B = load(text)
    assert same(A, B)
    assert dump(B) == text
    V = ramond(A)
    assert dump(load(dump(V))) == dump(V)


def test_load_errors():
    with pytest.raises(InputSyntaxError):
        load("")
    text = dump(an_build(2).algebra).replace("eta 0 1 1", "eta 0 1 w(")
    with pytest.raises(InputSyntaxError) as exc:
        load(text)
    assert exc.value.line > 1


def test_ramond_degree_shift_is_minus_half_d():
    A = an_build(3).algebra
    V = ramond(A)
    assert all(v == a - A.d / 2 for v, a in zip(V.degrees, A.degrees))


@given(indices, st.sampled_from([0, 1]))
def test_chi_recovered_from_action(k, strict):
    A = ALGEBRAS[k]
    for c in chi_from_phi(A, strict=False):
        if c.chi is not None:
            assert c.chi == A.chi[c.g]
        if c.chi_squared is not None:
            assert c.chi_squared == A.chi[c.g] * A.chi[c.g]


def test_invariants_criterion_is_literal_sum():
    inv = invariants(an_build(3).algebra)
    # chi = (1, i, -1, -i): the sum of chi^-2 is 1 - 1 + 1 - 1
    assert inv.criterion == 0
    assert not inv.frobenius
    assert len(inv.basis) == 1
    inv = invariants(dn_build(5, 0).algebra)
    assert inv.frobenius and inv.algebra.dim == 4


def test_restriction_to_subgroup():
    A = an_build(3).algebra
    G = A.group
    H = [0, G.names.index("j^2")]
    R = restrict(A, H)
    assert R.group.order == 2
    assert R.dim == 4
    assert check_gfrob(R).ok


def test_direct_sum_and_tensor():
    A = an_build(2).algebra
    S = gf_direct_sum(A, A)
    assert S.dim == 2 * A.dim and check_gfrob(S).ok
    P = group_algebra(cyclic_group(3))
    T = gf_tensor(A, P)
    # sector-wise product: T_g = A_g (x) P_g
    assert T.group.order == 3
    assert T.sector_dims() == [a * b for a, b in zip(A.sector_dims(), P.sector_dims())]
    assert check_gfrob(T).ok
    with pytest.raises(GroupMismatch):
        gf_direct_sum(A, an_build(3).algebra)


def test_braided_tensor():
    A = group_algebra(cyclic_group(3))
    T = braided_tensor(A, A)
    assert T.eta == {}
    assert check_braided(T).ok
    B = group_algebra(cyclic_group(2), ParityChoice([0, 1]))
    C = group_algebra(cyclic_group(2))
    with pytest.raises(CharacterMismatch):
        braided_tensor(B, C)


def test_trivial_group_algebra_from_frobenius():
    A = trivial_group_algebra(an(4))
    assert check_gfrob(A).ok
    assert A.group.order == 1


def test_super_group_algebra_passes_super_axioms():
    G = direct_product(cyclic_group(2), cyclic_group(2))
    A = group_algebra(G, ParityChoice([0, 1, 1, 0]))
    assert A.is_super
    assert check_gfrob(A).ok


def test_fermat_orbifold_axioms():
    A = fermat_build(3).algebra
    assert A.group.order == 9
    assert check_gfrob(A).ok


def test_zeroed_phibar_is_caught():
    V = ramond(an_build(3).algebra)
    bad = copy.deepcopy(V)
    bad.phi[1] = {i: {} for i in bad.phi[1]}
    rep = check_ramond(bad)
    assert not rep.ok
    assert rep.first_failure().witness is not None


def test_bad_eta_degree_is_caught():
    A = copy.deepcopy(an_build(3).algebra)
    A.eta[(1, 2)] = ONE
    A.eta[(2, 1)] = ONE
    rep = check_gfrob(A)
    assert not rep.ok
    names = [c.name for c in rep.checks if not c.passed]
    assert "eta homogeneous of degree d" in names


def test_character_must_be_a_character():
    A = copy.deepcopy(an_build(2).algebra)
    A.chi[1] = Cyclotomic.root(Fraction(1, 5))
    assert not check_gfrob(A).ok
