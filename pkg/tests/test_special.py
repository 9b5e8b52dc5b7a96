import copy
from fractions import Fraction

import pytest
from conftest import an_build, an_input, dn_build, fermat_build, point_build

from orbfrob.errors import SearchSpaceTooLarge
from orbfrob.exact import ONE, Cyclotomic
from orbfrob.gfrob import check_gfrob
from orbfrob.jacobian import build_special
from orbfrob.special import (check_cocycle, check_conditions, check_gamma_diag, check_nonabelian,
                             check_structure, dump_cocycles, gamma_diag, zerocheck,
                             reconstruct, sector_frobenius, shifts, solve_gamma)
from orbfrob.textio import parse_scalar


def an_gamma(n: int, i: int) -> Cyclotomic:
    """i * exp(-pi i k/(n+1)): the antidiagonal A_n cocycle value, frozen from the build."""
    return Cyclotomic.root(Fraction(1, 4)) * Cyclotomic.root(Fraction(1, 2 * (n + 1))) ** (-i)


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_special_structure_of_an(n):
    S = an_build(n).special
    assert check_structure(S).ok
    assert check_conditions(S).ok
    assert check_cocycle(S).ok
    assert check_nonabelian(S).ok
    assert check_gamma_diag(S).ok
    assert zerocheck(S) is None


@pytest.mark.parametrize("n", [2, 3, 5])
def test_an_cocycle_closed_form(n):
    S = an_build(n).special
    top = n - 1
    for i in range(1, n + 1):
        assert S.gamma[(i, n + 1 - i)] == {top: an_gamma(n, i)}
        # squares to -zeta^-i; the complex oracle fixes the branch
        val = complex(an_gamma(n, i))
        assert abs(val * val + complex(Cyclotomic.zeta(n + 1, -i))) < 1e-12


@pytest.mark.parametrize("n", [2, 3, 4])
def test_solver_returns_branch_pair(n):
    S = copy.deepcopy(an_build(n).special)
    sols = solve_gamma(S)
    assert len(sols) == 2
    a, b = sols
    assert a.keys() == b.keys()
    for k in a:
        assert {x: -c for x, c in a[k].items()} == b[k]


def test_dn_gamma_is_top_class():
    for n in range(3, 7):
        for s in (0, 1):
            S = dn_build(n, s).special
            assert S.gamma[(1, 1)] == {2 * n - 4: ONE}
            assert S.Ae.labels[2 * n - 4] == f"z^{2 * (n - 2)}"


def test_sector_frobenius_of_twisted_point():
    S = point_build(3).special
    for g in range(3):
        A = sector_frobenius(S, g)
        assert A.dim == 1


def test_degree_violating_gamma_is_caught():
    S = copy.deepcopy(an_build(3).special)
    S.gamma[(1, 3)] = {0: ONE}
    rep = check_cocycle(S)
    bad = rep.get("graded")
    assert not bad.passed
    assert bad.witness is not None


def test_reconstruct_round_trip_passes_axioms():
    for b in (an_build(4), dn_build(4, 1), fermat_build(3, False)):
        A = reconstruct(b.special)
        assert check_gfrob(A).ok


def test_gamma_diag_is_dual_element():
    S = an_build(3).special
    x = gamma_diag(S, 1)
    assert x == {2: ONE}


def test_standard_shift():
    # A_3 sector j: one moved coordinate with eigenvalue argument 1/4, d = 1/2, d_g = 0
    s_plus, s_minus, s = shifts([Fraction(1, 4)], Fraction(1, 2), 0)
    assert (s_plus, s_minus, s) == (Fraction(1, 2), Fraction(-1, 2), 0)


def test_solver_bound(monkeypatch):
    S, *_ = build_special(an_input(5))
    with pytest.raises(SearchSpaceTooLarge):
        solve_gamma(S, bound=0)


def test_cocycle_dump_text():
    text = dump_cocycles(an_build(2).special)
    lines = text.splitlines()
    assert lines[0] == "# orbfrob cocycle dump v1"
    gam = [l for l in lines if l.startswith("gamma 1 2")][0]
    _, _, _, vec = gam.split()
    k, c = vec.split(":")
    assert int(k) == 1 and parse_scalar(c) == an_gamma(2, 1)
