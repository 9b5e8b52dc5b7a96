import copy

import pytest
from conftest import an_build, dn_build, point_build
from hypothesis import given
from hypothesis import strategies as st

from orbfrob.errors import InputSyntaxError, WiringMismatch
from orbfrob.exact import ONE
from orbfrob.gfrob import ramond, unramond
from orbfrob.tqft import (CobordismWord, Step, check_relations, eval_object, eval_word, obj,
                          parse_word, spectral_flow_action, torus_trace)


@pytest.mark.parametrize("n", range(2, 7))
def test_relations_on_an(n):
    rep = check_relations(an_build(n).algebra)
    assert rep.ok, rep.first_failure()


def test_relations_on_point_and_super_dn():
    assert check_relations(point_build(2).algebra).ok
    assert check_relations(dn_build(4, 1).algebra).ok


def test_zeroed_action_is_caught():
    V = copy.deepcopy(ramond(an_build(3).algebra))
    V.phi[1] = {i: {} for i in V.phi[1]}
    rep = check_relations(V, unramond(ramond(an_build(3).algebra)))
    bad = rep.first_failure()
    assert bad is not None and bad.witness is not None


def test_torus_two_ways_agree():
    V = ramond(an_build(4).algebra)
    G = V.group
    for g in range(G.order):
        for h in range(G.order):
            for c in V.sectors[G.commutator(g, h)]:
                assert torus_trace(V, g, h, c, 0) == torus_trace(V, g, h, c, 1)


def test_spectral_flow_matches_action():
    A = an_build(3).algebra
    for k in range(A.group.order):
        flow = spectral_flow_action(A, k)
        for i in range(A.dim):
            assert flow[i] == A.act(k, {i: ONE})


def test_eval_object_dimensions():
    A = an_build(3).algebra
    d = eval_object(A, obj((0, 0), (1, 0), (3, 0, -1)))
    assert d.dim == 3
    assert d.factors == ["V_e", "V_j", "V_j^3*"]
    assert eval_object(A, obj()).dim == 1


def test_disc_then_pairing_with_unit():
    A = an_build(2).algebra
    G = A.group
    w = parse_word("D ; C[e;j] ; II[j^2]", G)
    f = eval_word(A, w, obj())
    assert len(f.target) == 1
    assert f.images[()]


GROUP = an_build(3).algebra.group
names = st.sampled_from(GROUP.names)
steps = st.one_of(
    st.just(Step("D")),
    st.builds(lambda a, b, c: Step("T", (a, b, c)), *[st.integers(0, 3)] * 3),
    st.builds(lambda a, b: Step("C", (a, b)), st.integers(0, 3), st.integers(0, 3)),
    st.builds(lambda a: Step("C", (a,)), st.integers(0, 3)),
    st.builds(lambda a, b: Step("E", (a, b)), st.integers(0, 3), st.integers(0, 3)),
    st.builds(lambda a, p: Step("II", tuple(a), p), st.lists(st.integers(0, 3), max_size=3),
              st.just(0)),
    st.builds(lambda p: Step("P", (), p), st.integers(0, 3)),
    st.builds(lambda p: Step("F", (), p), st.integers(0, 3)),
)


@given(st.lists(steps, min_size=1, max_size=6))
def test_word_print_parse_round_trip(ss):
    w = CobordismWord(ss)
    text = w.format(GROUP)
    assert parse_word(text, GROUP) == w
    assert parse_word(text, GROUP).format(GROUP) == text


@pytest.mark.parametrize("text", ["Q", "T[e,j]", "C[e,j]", "T[e,j;q]", "D ; ; D", "E[e]"])
def test_parse_errors_have_position(text):
    with pytest.raises(InputSyntaxError) as exc:
        parse_word(text, GROUP, line=7)
    assert exc.value.line == 7
    assert exc.value.col >= 1


def test_wiring_mismatch():
    A = an_build(3).algebra
    with pytest.raises(WiringMismatch):
        eval_word(A, parse_word("T[j,j;e]", A.group), obj((1, 0)))
    with pytest.raises(WiringMismatch):
        eval_word(A, parse_word("E[j,e]", A.group), obj((1, 0)))
