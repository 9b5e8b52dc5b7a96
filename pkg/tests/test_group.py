from fractions import Fraction
from math import lcm

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbfrob.errors import NotFinite, PreconditionError
from orbfrob.exact import ONE, Cyclotomic
from orbfrob.group import (DiscreteTorsion, ParityChoice, cyclic_group, direct_product,
                           element_data, enumerate_discrete_torsion, enumerate_parities,
                           generate_group, restricted_det)


def diag(*args):
    n = len(args)
    return [[Cyclotomic.root(Fraction(args[i])) if i == j else 0 for j in range(n)] for i in range(n)]


def s3():
    z = Cyclotomic.zeta(3)
    return generate_group([[[z, 0], [0, z.inverse()]], [[0, 1], [1, 0]]])


def test_cyclic_closure_names_in_power_order():
    G = generate_group([diag(Fraction(1, 5))])
    assert G.order == 5
    assert G.names == ["e", "j", "j^2", "j^3", "j^4"]
    assert G.elements[3] == diag(Fraction(3, 5))


def test_generator_name_is_used():
    G = generate_group([[[-1]]], name="s")
    assert G.names == ["e", "s"]


def test_nonabelian_closure():
    G = s3()
    assert G.order == 6
    assert not G.is_abelian()
    assert G.is_associative()
    assert G.names[0] == "e" and G.names[1:] == [f"g{k}" for k in range(1, 6)]


@given(st.integers(1, 12), st.integers(1, 12))
def test_direct_product_of_cyclics(a, b):
    G = direct_product(cyclic_group(a), cyclic_group(b))
    assert G.order == a * b
    assert G.is_abelian()
    assert max(G.element_order(g) for g in range(G.order)) == lcm(a, b)


def test_group_bound(monkeypatch):
    monkeypatch.setenv("ORBFROB_MAX_GROUP", "4")
    with pytest.raises(NotFinite):
        generate_group([diag(Fraction(1, 7))])


def test_element_data_diagonal_and_permutation():
    G = generate_group([diag(Fraction(1, 3), 0)])
    d = element_data(G, 1)
    assert d.fixed_vars == (1,) and d.moved_vars == (0,)
    assert d.det == Cyclotomic.zeta(3)
    P = generate_group([[[0, 1], [1, 0]]])
    p = element_data(P, 1)
    assert sorted(p.eigen_args) == [0, Fraction(1, 2)]
    assert p.n_moved == 1
    assert p.det == -1


def test_restricted_det_on_commuting_pair():
    G = generate_group([diag(Fraction(1, 3), 0), diag(0, Fraction(1, 3))])
    g = G.find(diag(Fraction(1, 3), Fraction(1, 3)))
    h = G.find(diag(Fraction(1, 3), 0))
    # h fixes the second coordinate, so only the first eigenvalue of g survives
    assert restricted_det(G, g, h) == Cyclotomic.zeta(3)


@pytest.mark.parametrize("n", range(1, 9))
def test_parity_count_for_cyclic(n):
    # homomorphisms Z/n -> Z/2
    assert len(enumerate_parities(cyclic_group(n))) == (2 if n % 2 == 0 else 1)


def test_parity_from_generators():
    G = cyclic_group(4)
    p = ParityChoice.from_generators(G, [1], [1])
    assert [p(g) for g in range(4)] == [0, 1, 0, 1]
    assert ParityChoice.from_generators(cyclic_group(3), [1], [1]) is None


@pytest.mark.parametrize("n,count", [(2, 2), (3, 3), (4, 4)])
def test_discrete_torsion_count_matches_schur_multiplier(n, count):
    # H^2(Z/n x Z/n, U(1)) = Z/n
    G = direct_product(cyclic_group(n), cyclic_group(n))
    found = enumerate_discrete_torsion(G)
    assert len(found) == count
    assert all(t.audit() is None for t in found)


def test_cyclic_groups_carry_no_torsion():
    assert len(enumerate_discrete_torsion(cyclic_group(6))) == 1


def test_torsion_audit_witness():
    G = cyclic_group(2)
    bad = DiscreteTorsion(G, {(0, 0): ONE, (0, 1): ONE, (1, 0): ONE, (1, 1): -ONE})
    assert bad.audit() == ("eps(g,g)=1", (1,))


def test_identity_must_be_first():
    from orbfrob.group import FiniteGroup
    with pytest.raises(PreconditionError):
        FiniteGroup([[1, 0], [0, 1]])


def test_find_round_trip():
    G = s3()
    for g in range(G.order):
        assert G.find(G.elements[g]) == g
