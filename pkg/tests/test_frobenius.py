import warnings
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbfrob.exact import ONE, Cyclotomic, MultiPoly, milnor_ring
from orbfrob.frobenius import (FrobAlgebra, GradingWarning, char_series, check_euler,
                               check_frobenius, counit_rho, direct_sum, dump, format_series,
                               from_quotient_ring, ground_field, mu_round_trip, tensor)


def an(n: int) -> FrobAlgebra:
    w = [Fraction(1, n + 1)]
    return from_quotient_ring(milnor_ring(MultiPoly(("z",), {(n + 1,): 1}, w), w))


def dn(n: int) -> FrobAlgebra:
    w = (Fraction(1, n - 1), Fraction(n - 2, 2 * (n - 1)))
    return from_quotient_ring(milnor_ring(MultiPoly(("x", "y"), {(n - 1, 0): 1, (1, 2): 1}, w), w))


def group_ring(n: int, twist: Cyclotomic = ONE) -> FrobAlgebra:
    """C[Z/n] with eta(e_i, e_j) = twist * [i + j = 0]."""
    mult = {(i, j): {(i + j) % n: ONE} for i in range(n) for j in range(n)}
    eta = {(i, (-i) % n): twist for i in range(n)}
    return FrobAlgebra([f"e{i}" for i in range(n)], mult, eta, {0: ONE})


POOL = [ground_field, lambda: an(2), lambda: an(3), lambda: an(5), lambda: dn(4),
        lambda: group_ring(3), lambda: group_ring(2, Cyclotomic.zeta(4))]
algebras = st.sampled_from(POOL).map(lambda f: f())


def test_an_is_frobenius_with_expected_grading():
    A = an(3)
    assert check_frobenius(A).ok
    assert A.labels == ["1", "z", "z^2"]
    assert A.D == Fraction(1, 2)
    assert format_series(char_series(A)) == "1 + t^{1/4} + t^{1/2}"


def test_counit_and_rho():
    A = an(4)
    eps, rho = counit_rho(A)
    assert rho == {3: ONE}
    assert eps == {3: ONE}


@given(algebras)
def test_pool_passes_axioms(A):
    assert check_frobenius(A).ok
    assert mu_round_trip(A)


@given(algebras, algebras)
def test_tensor_is_frobenius(A, B):
    T = tensor(A, B)
    assert T.dim == A.dim * B.dim
    assert check_frobenius(T).ok
    if A.graded and B.graded:
        assert char_series(T) == _convolve(char_series(A), char_series(B))


def _convolve(a, b):
    out = {}
    for x, m in a.items():
        for y, k in b.items():
            out[x + y] = out.get(x + y, 0) + m * k
    return dict(sorted(out.items()))


@given(algebras, algebras)
def test_direct_sum_is_frobenius(A, B):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", GradingWarning)
        S = direct_sum(A, B)
    assert check_frobenius(S).ok


def test_direct_sum_grading_needs_matching_scale():
    # A_3 has D = 1/2, A_5 has D = 2/3: scaling the second by 3/4 matches
    S = direct_sum(an(3), an(5))
    assert S.graded
    assert S.degrees[3:] == [Fraction(3, 4) * Fraction(k, 6) for k in range(5)]
    with pytest.warns(GradingWarning):
        T = direct_sum(an(3), ground_field())
    assert not T.graded


def test_scaling_multiplies_degrees():
    A = an(3).scaled(4)
    assert A.degrees == [0, 1, 2]
    assert A.D == 2


def test_euler_field_check():
    A = an(3)
    assert check_euler(A, A.degrees).ok
    assert not check_euler(A, [0, Fraction(1, 3), Fraction(1, 2)]).ok


def test_corrupt_metric_is_caught():
    A = an(3)
    A.eta[(0, 2)] = 2 * ONE
    rep = check_frobenius(A)
    assert not rep.ok
    assert rep.first_failure().witness is not None


def test_dump_is_stable():
    text = dump(an(2))
    assert text.splitlines()[0] == "# orbfrob frobenius dump v1"
    assert text == dump(an(2))
    assert "eta 0 1 1" in text
