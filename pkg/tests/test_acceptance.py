"""Acceptance criteria, one reported line each.

Tolerances are pinned: every algebraic comparison is exact equality of
cyclotomic numbers or rationals; the only inexact quantities are the
wall-clock limits below.  Criteria whose literal reading cannot hold get
a separate strict xfail test that reports FAIL with the witness.
"""

import copy
import time
from fractions import Fraction
from pathlib import Path

import pytest
from conftest import (ACCEPTANCE_LINES, an_build, an_input, dn_build, dn_input, fermat_build,
                      point_build, point_input)

from orbfrob.cli import format_config, main, parse_input
from orbfrob.exact import ONE, Cyclotomic, MultiPoly, sqrt_unit
from orbfrob.gfrob import check_gfrob, check_ramond, dump, invariants, load, ramond, unramond
from orbfrob.group import generate_group
from orbfrob.jacobian import (JacobianOrbifoldInput, an_isomorphism, arnold_character,
                              build_orbifold, dn_isomorphism, literal_dim_identity,
                              trace_identities)
from orbfrob.jacobian import _trace
from orbfrob.mirror import (check_dual, compare_point_dual, dual, dual_invariants_algebra,
                            images_by_ebar, point_tables, transport_product)
from orbfrob.special import check_cocycle, check_nonabelian, reconstruct, solve_gamma
from orbfrob.tqft import check_relations

from test_frobenius import an

SESSIONS = Path(__file__).resolve().parent.parent / "sessions"
AN_LIMIT = 5.0
DN_LIMIT = 10.0


def record(name: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {name}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)


def an_closed_gamma(n: int, i: int) -> Cyclotomic:
    """i * exp(-pi i k/(n+1)): the branch of (-zeta^-1)^(i/2) the build produces."""
    return Cyclotomic.root(Fraction(1, 4)) * Cyclotomic.root(Fraction(1, 2 * (n + 1))) ** (-i)


def an_literal_gamma(n: int, i: int) -> Cyclotomic:
    return sqrt_unit(-Cyclotomic.zeta(n + 1)) ** i


# corpus for the exhaustive axiom and identity checks

def _input(vars_, weights, terms, gens):
    w = [Fraction(q) for q in weights]
    return JacobianOrbifoldInput(MultiPoly(vars_, terms, w), w, generate_group(gens))


def corpus():
    z3, z9 = Cyclotomic.zeta(3), Cyclotomic.zeta(9)
    i = Cyclotomic.zeta(4)
    out = {f"A_{n}": an_input(n) for n in range(2, 7)}
    out["A_3 odd"] = an_input(3, odd=True)
    out.update({f"D_{n} sigma={s}": dn_input(n, s) for n in (4, 5) for s in (0, 1)})
    out["point Z/4"] = point_input(4)
    out["x^3+y^3 swap"] = _input(("x", "y"), ("1/3", "1/3"), {(3, 0): 1, (0, 3): 1},
                                 [[[0, 1], [1, 0]]])
    out["x^2y+y^3 Z/3"] = _input(("x", "y"), ("1/3", "1/3"), {(2, 1): 1, (0, 3): 1},
                                 [[[z3, 0], [0, z3]]])
    out["x^3+y^3+z^3 Z/3"] = _input(("x", "y", "z"), ("1/3",) * 3,
                                    {(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 1},
                                    [[[z3, 0, 0], [0, z3, 0], [0, 0, z3]]])
    out["x^2+y^2 Z/2xZ/2"] = _input(("x", "y"), ("1/2", "1/2"), {(2, 0): 1, (0, 2): 1},
                                    [[[-1, 0], [0, 1]], [[1, 0], [0, -1]]])
    out["x^4+y^2 Z/4"] = _input(("x", "y"), ("1/4", "1/2"), {(4, 0): 1, (0, 2): 1},
                                [[[i, 0], [0, -1]]])
    out["x^3y+y^3 Z/9"] = _input(("x", "y"), ("2/9", "1/3"), {(3, 1): 1, (0, 3): 1},
                                 [[[z9 ** 2, 0], [0, z3]]])
    out["A_11"] = an_input(11)
    out["A_23"] = an_input(23)
    return out


def corpus_builds():
    for name, inp in corpus().items():
        yield name, build_orbifold(inp)
    yield "x^3+y^3 Z/3xZ/3", fermat_build(3)
    yield "x^4+y^4 Z/4xZ/4", fermat_build(4)


CORPUS = None


def built_corpus():
    global CORPUS
    if CORPUS is None:
        CORPUS = list(corpus_builds())
    return CORPUS


# 1

def test_criterion_1_an_golden():
    failures = []
    slowest = 0.0
    for n in range(2, 11):
        t0 = time.perf_counter()
        b = build_orbifold(an_input(n))
        A, S = b.algebra, b.special
        G = A.group
        ok = b.report.ok and A.sector_dims() == [n] + [1] * n
        zeta = Cyclotomic.zeta(n + 1)
        for g in range(G.order):
            for h in range(G.order):
                want = {n - 1: an_closed_gamma(n, g)} if g and (g + h) % (n + 1) == 0 else {}
                ok = ok and S.gamma.get((g, h), {}) == want
                if h:
                    ok = ok and S.phi2[(g, h)] == zeta ** (-g)
        for k in range(1, n + 1):
            idx = A.sectors[k][0]
            ok = ok and A.bidegrees[idx] == (Fraction(k - 1, n + 1), Fraction(n - k, n + 1))
        ok = ok and len(invariants(A).basis) == 1
        elapsed = time.perf_counter() - t0
        slowest = max(slowest, elapsed)
        if not ok or elapsed >= AN_LIMIT:
            failures.append(n)
    record("1", not failures,
           f"n=2..10, gamma = (-zeta^-1)^(i/2) z^(n-1) exactly, slowest {slowest:.2f}s < {AN_LIMIT}s"
           + (f", failing n={failures}" if failures else ""))
    assert not failures


@pytest.mark.xfail(strict=True, reason="the literal branch of (-zeta)^(i/2) breaks the conjugation compatibility")
def test_criterion_1b_literal_closed_form():
    mismatched = []
    for n in range(2, 11):
        S = an_build(n).special
        if any(S.gamma[(i, n + 1 - i)] != {n - 1: an_literal_gamma(n, i)} for i in range(1, n + 1)):
            mismatched.append(n)
    broken = []
    for n in (2, 4, 5):
        S = copy.deepcopy(an_build(n).special)
        S.gamma = {(i, n + 1 - i): {n - 1: an_literal_gamma(n, i)} for i in range(1, n + 1)}
        if not check_nonabelian(S).ok:
            broken.append(n)
    record("1b-literal", not mismatched,
           f"literal branch differs for n={mismatched}; as a cocycle it fails compatibility for n={broken}")
    assert not mismatched


# 2

def test_criterion_2_dn_golden():
    failures = []
    slowest = 0.0
    for n in range(3, 9):
        t0 = time.perf_counter()
        odd = build_orbifold(dn_input(n, 1))
        even = build_orbifold(dn_input(n, 0))
        ok = odd.report.ok and even.report.ok
        ok = ok and dn_isomorphism(odd, n).ok and an_isomorphism(even, n - 1).ok
        for b in (odd, even):
            top = b.special.Ae.labels.index(f"z^{2 * (n - 2)}")
            ok = ok and b.special.gamma[(1, 1)] == {top: ONE}
        elapsed = time.perf_counter() - t0
        slowest = max(slowest, elapsed)
        if not ok or elapsed >= DN_LIMIT:
            failures.append(n)
    record("2", not failures,
           f"n=3..8, sigma=1 gives D_n, sigma=0 gives A_(n-1), gamma_(-1,-1) = z^(2n-4); "
           f"slowest {slowest:.2f}s < {DN_LIMIT}s" + (f", failing n={failures}" if failures else ""))
    assert not failures


# 3

def _is_twisted_group_algebra(A) -> bool:
    G = A.group
    one = [A.sectors[g][0] for g in range(G.order)]
    if A.sector_dims() != [1] * G.order:
        return False
    c = {}
    for g in range(G.order):
        for h in range(G.order):
            prod = A.mul({one[g]: ONE}, {one[h]: ONE})
            gh = G.mul(g, h)
            if set(prod) != {one[gh]}:
                return False
            c[(g, h)] = prod[one[gh]]
    return all(c[(g, h)] * c[(G.mul(g, h), k)] == c[(h, k)] * c[(g, G.mul(h, k))]
               for g in range(G.order) for h in range(G.order) for k in range(G.order))


def test_criterion_3a_point_twisted_group_algebra():
    bad = []
    for n in range(2, 7):
        A = point_build(n).algebra
        if not (check_gfrob(A).ok and _is_twisted_group_algebra(A)
                and set(A.bidegrees) == {(0, 0)}):
            bad.append(n)
    record("3a", not bad, "point mod Z/n, n=2..6: 2-cocycle multiplication, bigrade (0,0)")
    assert not bad


@pytest.mark.xfail(strict=True, reason="dual pairs inverse sectors; the displayed tables pair i+k=n-1")
def test_criterion_3b_point_dual_tables():
    diffs = {}
    for n in (2, 4, 6):
        D = dual(point_build(n))
        d = compare_point_dual(D, point_tables(n), 1)
        if d:
            diffs[n] = d[0]
    record("3b", not diffs, f"first metric mismatch (i, k, ours, displayed) per n: {diffs}")
    assert not diffs


# 4

def test_criterion_4_axioms_exhaustive():
    bad = []
    sizes = []
    for name, b in built_corpus():
        A = b.algebra
        assert A.group.order <= 24 and A.dim <= 200
        sizes.append((A.group.order, A.dim))
        if not (b.report.ok and check_gfrob(A).ok):
            bad.append(name)
    record("4", not bad, f"{len(sizes)} builds, max |G| {max(s[0] for s in sizes)}, "
           f"max dim {max(s[1] for s in sizes)}" + (f", failing {bad}" if bad else ""))
    assert not bad


# 5

def test_criterion_5_formula_identities():
    bad = []
    arnold = 0
    for name, b in built_corpus():
        inp, S, A = b.input, b.special, b.algebra
        G = inp.group
        ok = trace_identities(inp, S, A).ok
        for g in range(G.order):
            n_moved = b.sectors[g].n_moved
            direct = _trace(S.action[g], S.Ae.dim)
            ok = ok and direct == G.det(g).inverse() * (-1 if n_moved % 2 else 1) * S.sectors[g].dim
            if all(inp.group.elements[g][r][c] == 0 for r in range(inp.n)
                   for c in range(inp.n) if r != c):
                ok = ok and arnold_character(inp, g) == direct
                arnold += 1
        if not ok:
            bad.append(name)
    record("5", not bad, f"sdim A_g = chi_(g^-1) Tr(phi_(g^-1)), direct trace, phi_g(rho), "
           f"Arnold limit on {arnold} diagonal elements" + (f", failing {bad}" if bad else ""))
    assert not bad


@pytest.mark.xfail(strict=True, reason="dim A_g = chi_(g^-1) Tr(phi_g) fails on sectors with an odd number of moved coordinates")
def test_criterion_5_literal_dimension_identity():
    witnesses = {name: literal_dim_identity(b.special) for name, b in built_corpus()}
    bad = {k: v for k, v in witnesses.items() if v is not None}
    record("5-literal", not bad, f"{len(bad)} builds fail, e.g. {next(iter(bad.items()), None)}")
    assert not bad


# 6

def test_criterion_6_round_trips():
    checks = {}
    algebras = [b.algebra for _, b in built_corpus()]
    checks["unramond(ramond(A)) = A"] = all(dump(unramond(ramond(A))) == dump(A) for A in algebras)
    checks["dump/load"] = all(dump(load(dump(A))) == dump(A) for A in algebras)
    checks["reconstruct"] = all(check_gfrob(reconstruct(b.special)).ok for _, b in built_corpus())
    sols_ok = True
    for n in range(2, 7):
        ours = {(i, n + 1 - i): {n - 1: an_closed_gamma(n, i)} for i in range(1, n + 1)}
        neg = {k: {x: -c for x, c in v.items()} for k, v in ours.items()}
        sols = solve_gamma(copy.deepcopy(an_build(n).special))
        sols_ok = sols_ok and len(sols) == 2 and ours in sols and neg in sols
    for n in range(3, 7):
        for s in (0, 1):
            S = dn_build(n, s).special
            top = S.Ae.labels.index(f"z^{2 * (n - 2)}")
            sols = solve_gamma(copy.deepcopy(S))
            sols_ok = sols_ok and all(sol[(1, 1)] in ({top: ONE}, {top: -ONE}) for sol in sols)
            sols_ok = sols_ok and {(1, 1): {top: ONE}} in sols
    checks["solver = closed form up to sign"] = sols_ok
    texts = [p.read_text() for p in sorted(SESSIONS.glob("*.session"))]
    checks["session print/parse"] = all(format_config(parse_input(t)) == t for t in texts)
    bad = [k for k, v in checks.items() if not v]
    record("6", not bad, ", ".join(checks) + (f"; failing {bad}" if bad else ""))
    assert not bad


# 7

def test_criterion_7_tqft_relations():
    targets = [(f"A_{n}", an_build(n).algebra) for n in range(2, 7)]
    targets.append(("point Z/2", point_build(2).algebra))
    bad = []
    families = 0
    for name, A in targets:
        rep = check_relations(A)
        families = len(rep.checks)
        if not rep.ok:
            bad.append((name, rep.first_failure().name))
    record("7", not bad, f"{families} relation families incl. torus gluings and spectral flow on "
           f"A_2..A_6 and the Z/2 point" + (f", failing {bad}" if bad else ""))
    assert not bad


# 8

def _self_duality(n: int, form: str):
    D = dual(an_build(n))
    inv = dual_invariants_algebra(D, form=form)
    B = an(n)
    mult, unit, _ = transport_product(inv, B, images_by_ebar(inv, B))
    return D, dual_invariants_algebra(D, mult, unit, form=form)


def test_criterion_8_mirror_self_duality():
    bad = []
    for n in range(2, 11):
        D, inv = _self_duality(n, "symmetric")
        ok = check_dual(D, ramond(an_build(n).algebra)).ok
        ok = ok and D.e_spectrum() == sorted(-x for x in D.ebar_spectrum())
        ok = ok and inv.kind() == "(a,c)" and inv.report.ok and inv.dim == n
        if not ok:
            bad.append(n)
    record("8", not bad, "n=2..10: E-spectrum = -Ebar-spectrum, invariants (a,c), "
           "standard A_n product compatible with the symmetrised form"
           + (f", failing n={bad}" if bad else ""))
    assert not bad


@pytest.mark.xfail(strict=True, reason="the full dual mixes (c,c) and (a,c) elements and the pulled-back form is not symmetric")
def test_criterion_8_literal():
    kinds = {n: dual(an_build(n)).kind() for n in range(2, 11)}
    failure = None
    try:
        _self_duality(3, "pulled-back")
    except Exception as exc:  # noqa: BLE001 - reported, then asserted below
        failure = f"{type(exc).__name__} witness={getattr(exc, 'witness', None)}"
    ok = set(kinds.values()) == {"(a,c)"} and failure is None
    record("8-literal", ok, f"full dual types {sorted(set(kinds.values()))}; pulled-back form: {failure}")
    assert ok


# 9

def test_criterion_9_corruptions(tmp_path, capsys):
    found = {}
    A = copy.deepcopy(an_build(3).algebra)
    A.eta[(1, 2)] = ONE
    A.eta[(2, 1)] = ONE
    c = check_gfrob(A).first_failure()
    found["bad eta degree"] = c.witness if c else None

    V = copy.deepcopy(ramond(an_build(3).algebra))
    V.phi[1] = {i: {} for i in V.phi[1]}
    c = check_ramond(V).first_failure()
    found["zeroed phibar"] = c.witness if c else None

    S = copy.deepcopy(an_build(3).special)
    S.gamma[(1, 3)] = {0: ONE}
    c = check_cocycle(S).get("graded")
    found["degree-violating gamma"] = c.witness if c and not c.passed else None

    codes = {}
    for name, text in (("bad eta degree", dump(A)), ("zeroed phibar", dump(V))):
        p = tmp_path / "corrupt.dump"
        p.write_text(text)
        codes[name] = main(["check", str(p)])
    s = tmp_path / "gamma.session"
    s.write_text("vars z\nweights 1/4\npoly f = z^4\ngroup j = [[w(1/4)]]\n"
                 "cocycle table(j, j^3: 0:1; j^2, j^2: 2:1; j^3, j: 2:1)\n")
    codes["degree-violating gamma"] = main(["build", str(s)])
    capsys.readouterr()
    ok = all(w is not None for w in found.values()) and all(v != 0 for v in codes.values())
    record("9", ok, "; ".join(f"{k}: witness {found[k]}, exit {codes[k]}" for k in found))
    assert ok
