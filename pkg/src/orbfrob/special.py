"""Special G-Frobenius algebras: sectors presented inside A_e.

Each sector A_g is a cyclic A_e-module with generator 1_g.  It is stored
through its section: ``ibasis[k]`` is i_g of the k-th basis vector of A_g
(a vector in A_e) and ``restrict`` is the matrix of r_g.  The product is
encoded by the cocycle gamma and the action on generators by the scalars
phi_{g,h}: phi_g(1_h) = phi_{g,h} 1_{ghg^-1}.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import sparse
from .errors import (DegenerateSectorMetric, NoSolution, NotUnique, PreconditionFailed,
                     SearchSpaceTooLarge, SignObstruction)
from .exact import ONE, ZERO, Cyclotomic, rank, rref, solve, sqrt_rational, sqrt_unit
from .frobenius import FrobAlgebra
from .gfrob import GFrobenius, _trace_axiom, check_gfrob
from .group import FiniteGroup
from .report import Report
from .textio import scalar_text, vec_text

Vec = sparse.Vec


def solver_bound() -> int:
    return int(os.environ.get("ORBFROB_MAX_SEARCH", "4096"))


@dataclass
class Sector:
    g: int
    labels: list[str]
    ibasis: list[Vec]
    restrict: dict[int, Vec]
    degrees: list[Fraction]
    d_g: Fraction
    counit: Vec
    parity: int = 0
    shift: Fraction = Fraction(0)
    cobishift: Fraction = Fraction(0)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def rho(self) -> Vec:
        """The top element rho_g of A_g, normalised by eps_g(rho_g) = 1."""
        k = next(iter(self.counit))
        return {k: self.counit[k].inverse()}


@dataclass
class SpecialGFrob:
    group: FiniteGroup
    Ae: FrobAlgebra
    action: list[dict[int, Vec]]
    sectors: list[Sector]
    gamma: dict[tuple[int, int], Vec]
    phi2: dict[tuple[int, int], Cyclotomic]
    chi: list[Cyclotomic]
    d: Fraction = Fraction(0)
    notes: list[str] = field(default_factory=list)

    def gname(self, g: int) -> str:
        return self.group.names[g]

    # maps between A_e and the sectors
    def r(self, g: int, v: Vec) -> Vec:
        out: Vec = {}
        R = self.sectors[g].restrict
        for i, x in v.items():
            img = R.get(i)
            if img:
                sparse.add_into(out, img, x)
        return out

    def i(self, g: int, w: Vec) -> Vec:
        out: Vec = {}
        B = self.sectors[g].ibasis
        for k, x in w.items():
            sparse.add_into(out, B[k], x)
        return out

    def pi(self, g: int, v: Vec) -> Vec:
        return self.i(g, self.r(g, v))

    def mul(self, *vs: Vec) -> Vec:
        out = vs[0]
        for v in vs[1:]:
            out = self.Ae.mul(out, v)
        return out

    def eps(self, v: Vec) -> Cyclotomic:
        return self.Ae.pair(v, self.Ae.unit)

    def act_e(self, g: int, v: Vec) -> Vec:
        out: Vec = {}
        for i, x in v.items():
            img = self.action[g].get(i)
            if img:
                sparse.add_into(out, img, x)
        return out

    def gam(self, g: int, h: int) -> Vec:
        if g == 0:
            return self.pi(h, self.Ae.unit)
        if h == 0:
            return self.pi(g, self.Ae.unit)
        return self.gamma.get((g, h), {})

    def ph(self, g: int, h: int) -> Cyclotomic:
        if g == 0 or h == 0:
            return ONE
        return self.phi2.get((g, h), ZERO)

    def par(self, g: int) -> int:
        return self.sectors[g].parity % 2

    def sign(self, g: int, h: int) -> int:
        return -1 if self.par(g) and self.par(h) else 1


def _first(gen):
    return next(gen, None)


def check_structure(S: SpecialGFrob) -> Report:
    """pi_g is an idempotent algebra map, pi_{g^-1} pi_g = pi_g, and
    i_g(A_g) = i_{g^-1}(A_{g^-1})."""
    rep = Report("special structure")
    G = S.group
    n = S.Ae.dim
    bad = None
    for g in range(G.order):
        sec = S.sectors[g]
        for k in range(sec.dim):
            if not sparse.equal(S.r(g, sec.ibasis[k]), {k: ONE}):
                bad = (S.gname(g), sec.labels[k])
                break
        if bad:
            break
    rep.add("r_g i_g = id", bad is None, witness=bad)
    bad = _first((S.gname(g), S.Ae.labels[a], S.Ae.labels[b])
                 for g in range(G.order) for a in range(n) for b in range(n)
                 if not sparse.equal(S.pi(g, S.Ae.mult.get((a, b), {})),
                                     S.pi(g, S.mul(S.pi(g, {a: ONE}), S.pi(g, {b: ONE})))))
    rep.add("r_g is an algebra map", bad is None, witness=bad)
    bad = _first((S.gname(g), S.Ae.labels[a]) for g in range(G.order) for a in range(n)
                 if not sparse.equal(S.pi(G.inv[g], S.pi(g, {a: ONE})), S.pi(g, {a: ONE})))
    rep.add("pi_{g^-1} pi_g = pi_g", bad is None, witness=bad)
    bad = _first(S.gname(g) for g in range(G.order)
                 if _span_rank(S.sectors[g].ibasis + S.sectors[G.inv[g]].ibasis, n)
                 != S.sectors[g].dim or S.sectors[g].dim != S.sectors[G.inv[g]].dim)
    rep.add("i_g(A_g) = i_{g^-1}(A_{g^-1})", bad is None, witness=bad)
    return rep


def _span_rank(vs: Sequence[Vec], n: int) -> int:
    if not vs:
        return 0
    return rank([sparse.dense(v, n) for v in vs])


def sector_frobenius(S: SpecialGFrob, g: int) -> FrobAlgebra:
    """i_g(A_g) with product pi_g(ab) and metric eps(gamma_{g,g^-1} pi_g(ab))."""
    sec = S.sectors[g]
    ginv = S.group.inv[g]
    gam = S.gam(g, ginv)
    m = sec.dim
    mult = {}
    eta = {}
    for a in range(m):
        for b in range(m):
            ab = S.mul(sec.ibasis[a], sec.ibasis[b])
            w = S.r(g, ab)
            if w:
                mult[(a, b)] = w
            c = S.eps(S.mul(gam, S.i(g, w)))
            if c:
                eta[(a, b)] = c
    unit = S.r(g, S.Ae.unit)
    A = FrobAlgebra(list(sec.labels), mult, eta, unit, list(sec.degrees), None,
                    Fraction(0), sec.d_g)
    if m and rank(A.gram()) < m:
        raise DegenerateSectorMetric(f"sector metric of {S.gname(g)} is degenerate",
                                     witness=(S.gname(g), rank(A.gram())))
    return A


def check_cocycle(S: SpecialGFrob, degrees: bool = True) -> Report:
    G = S.group
    rep = Report("cocycle")
    els = range(G.order)

    bad = None
    for g in els:
        for h in els:
            gh = G.mul(g, h)
            gm = S.gam(g, h)
            if not sparse.equal(S.pi(gh, gm), gm):
                bad = (S.gname(g), S.gname(h))
                break
            if degrees and S.Ae.degrees is not None and gm:
                want = S.sectors[g].shift + S.sectors[h].shift - S.sectors[gh].shift
                if any(S.Ae.degrees[i] != want for i in gm):
                    bad = (S.gname(g), S.gname(h))
                    break
        if bad:
            break
    membership = bad
    if bad is None:
        for g in els:
            for h in els:
                for k in els:
                    gh, hk = G.mul(g, h), G.mul(h, k)
                    ghk = G.mul(gh, k)
                    lhs = S.pi(ghk, S.mul(S.gam(g, h), S.gam(gh, k)))
                    rhs = S.pi(ghk, S.mul(S.gam(h, k), S.gam(g, hk)))
                    if not sparse.equal(lhs, rhs):
                        bad = (S.gname(g), S.gname(h), S.gname(k))
                        break
                if bad:
                    break
            if bad:
                break
    rep.add("graded", bad is None, witness=bad,
            detail="membership and degree" if membership is not None else "")
    graded_ok = bad is None

    bad = None
    for g in els:
        for h in els:
            for k in els:
                gh, hk = G.mul(g, h), G.mul(h, k)
                ghk = G.mul(gh, k)
                lg, lh, lk = S.sectors[g].ibasis, S.sectors[h].ibasis, S.sectors[k].ibasis
                left_gamma = S.mul(S.gam(g, h), S.gam(gh, k))
                right_gamma = S.mul(S.gam(h, k), S.gam(g, hk))
                for a in lg:
                    for b in lh:
                        ab = S.pi(gh, S.mul(a, b))
                        for c in lk:
                            lhs = S.pi(ghk, S.mul(ab, c, left_gamma))
                            rhs = S.pi(ghk, S.mul(a, S.pi(hk, S.mul(b, c)), right_gamma))
                            if not sparse.equal(lhs, rhs):
                                bad = (S.gname(g), S.gname(h), S.gname(k))
                                break
                        if bad:
                            break
                    if bad:
                        break
                if bad:
                    break
            if bad:
                break
        if bad:
            break
    rep.add("associative", bad is None and graded_ok, witness=bad)

    n = S.Ae.dim
    bad = None
    for g in els:
        for h in els:
            gh = G.mul(g, h)
            gm = S.gam(g, h)
            for x in (g, h):
                for a in range(n):
                    y = sparse.add_into({a: ONE}, S.pi(x, {a: ONE}), -ONE)
                    if y and S.pi(gh, S.mul(y, gm)):
                        bad = (S.gname(g), S.gname(h), S.Ae.labels[a])
                        break
                if bad:
                    break
            if bad:
                break
        if bad:
            break
    rep.add("section independent", bad is None, witness=bad)
    if bad is None:
        rep.add("section independence implies associativity", rep.get("associative").passed)
    return rep


def check_nonabelian(S: SpecialGFrob) -> Report:
    G = S.group
    rep = Report("non-abelian cocycle")
    els = range(G.order)
    bad = _first(S.gname(g) for g in els if S.ph(g, 0) != ONE or S.ph(0, g) != ONE)
    rep.add("phi_{g,e} = phi_{e,g} = 1", bad is None, witness=bad)
    bad = _first((S.gname(g), S.gname(h), S.gname(k)) for g in els for h in els for k in els
                 if S.ph(G.mul(g, h), k) != S.ph(g, G.conj(h, k)) * S.ph(h, k))
    rep.add("phi_{gh,k} = phi_{g,hkh^-1} phi_{h,k}", bad is None, witness=bad)
    bad = _first((S.gname(g), S.gname(h)) for g in els for h in els
                 if S.ph(G.inv[g], G.conj(g, h)) * S.ph(g, h) != ONE)
    rep.add("phi_{g^-1,ghg^-1} = phi_{g,h}^-1", bad is None, witness=bad)
    bad = _first((S.gname(g), S.gname(h)) for g in els for h in els
                 if not sparse.equal(sparse.scale(S.gam(G.conj(g, h), g), S.ph(g, h) * S.sign(g, h)),
                                     S.gam(g, h)))
    rep.add("compatibility phi_{g,h} gamma_{ghg^-1,g} = gamma_{g,h}", bad is None, witness=bad)
    bad = None
    for k in els:
        for g in els:
            for h in els:
                kgk, khk = G.conj(k, g), G.conj(k, h)
                target = G.conj(k, G.mul(g, h))
                lhs = sparse.scale(S.gam(kgk, khk), S.ph(k, g) * S.ph(k, h))
                rhs = S.pi(target, sparse.scale(S.act_e(k, S.gam(g, h)), S.ph(k, G.mul(g, h))))
                if not sparse.equal(S.pi(target, lhs), rhs):
                    bad = (S.gname(k), S.gname(g), S.gname(h))
                    break
            if bad:
                break
        if bad:
            break
    rep.add("action on gamma", bad is None, witness=bad)
    bad = _first(S.gname(g) for g in els
                 if S.gam(g, g) and S.sign(g, g) * S.chi[g] != ONE)
    rep.add("gamma_{g,g} = 0 unless the signed chi_g is 1", bad is None, witness=bad)
    bad = _first((S.gname(g), S.gname(h)) for g in els for h in els
                 if G.commutes(g, h) and S.ph(g, h) * S.ph(h, g) != ONE
                 and (S.gam(g, h) or S.gam(h, g)))
    rep.add("commuting pairs: phi_{g,h} phi_{h,g} = 1 or gamma vanishes", bad is None, witness=bad)
    return rep


def check_conditions(S: SpecialGFrob) -> Report:
    """Conditions i) and ii) of the reconstruction (iii is the trace axiom
    and is checked on the reconstructed algebra)."""
    rep = Report("reconstruction conditions")
    n = S.Ae.dim
    G = S.group
    bad = None
    for g in range(G.order):
        c2 = (S.chi[g] * S.chi[g]).inverse()
        for a in range(n):
            for b in range(n):
                lhs = S.Ae.pair(S.act_e(g, {a: ONE}), S.act_e(g, {b: ONE}))
                if lhs != c2 * S.Ae.eta.get((a, b), ZERO):
                    bad = (S.gname(g), S.Ae.labels[a], S.Ae.labels[b])
                    break
            if bad:
                break
        if bad:
            break
    rep.add("i) eta_e(phi_g a, phi_g b) = chi_g^-2 eta_e(a, b)", bad is None, witness=bad)
    bad = None
    for g in range(G.order):
        try:
            sector_frobenius(S, g)
        except DegenerateSectorMetric as exc:
            bad = exc.witness
            break
    rep.add("ii) sector metrics nondegenerate", bad is None, witness=bad)
    return rep


def _sector_label(S: SpecialGFrob, g: int, k: int) -> str:
    if g == 0:
        return S.sectors[0].labels[k]
    lab = S.sectors[g].labels[k]
    return f"1_{S.gname(g)}" if lab == "1" else f"{lab}*1_{S.gname(g)}"


def reconstruct(S: SpecialGFrob, verify: bool = True) -> GFrobenius:
    """The unique special G-Frobenius algebra with the given data."""
    if verify:
        for rep in (check_structure(S), check_cocycle(S), check_nonabelian(S), check_conditions(S)):
            for c in rep.checks:
                if c.name in ("section independent", "section independence implies associativity"):
                    continue
                if not c.passed:
                    raise PreconditionFailed(f"{rep.title}: {c.name}", witness=c.witness)
    G = S.group
    offset = []
    labels: list[str] = []
    sector: list[int] = []
    degrees: list[Fraction] = []
    bideg: list[tuple[Fraction, Fraction]] = []
    parity: list[int] = []
    for g in range(G.order):
        sec = S.sectors[g]
        offset.append(len(labels))
        for k in range(sec.dim):
            labels.append(_sector_label(S, g, k))
            sector.append(g)
            degrees.append(sec.degrees[k] + sec.shift)
            bideg.append((sec.degrees[k] + sec.shift, sec.degrees[k] + sec.cobishift))
            parity.append(sec.parity % 2)

    def glob(g: int, w: Vec) -> Vec:
        return {offset[g] + k: c for k, c in w.items()}

    mult = {}
    eta = {}
    for g in range(G.order):
        for h in range(G.order):
            gh = G.mul(g, h)
            gm = S.gam(g, h)
            for a, ia in enumerate(S.sectors[g].ibasis):
                for b, ib in enumerate(S.sectors[h].ibasis):
                    prod_e = S.mul(ia, ib, gm) if gm else {}
                    w = S.r(gh, prod_e)
                    if w:
                        mult[(offset[g] + a, offset[h] + b)] = glob(gh, w)
                    if gh == 0:
                        c = S.eps(prod_e)
                        if c:
                            eta[(offset[g] + a, offset[h] + b)] = c
    phi = []
    for x in range(G.order):
        col = {}
        for h in range(G.order):
            target = G.conj(x, h)
            scal = S.ph(x, h)
            for b, ib in enumerate(S.sectors[h].ibasis):
                w = sparse.scale(S.r(target, S.act_e(x, ib)), scal)
                col[offset[h] + b] = glob(target, w)
        phi.append(col)
    unit = glob(0, S.r(0, S.Ae.unit))
    A = GFrobenius(G, labels, sector, mult, eta, unit, phi, list(S.chi),
                   parity if any(parity) else [0] * len(labels), degrees, S.d, bideg)
    if verify:
        bad = _trace_axiom(A)
        if bad is not None:
            raise PreconditionFailed("iii) projective trace axiom", witness=bad)
    return A


def gamma_diag(S: SpecialGFrob, g: int) -> Vec:
    """The element x of A_e with eta(x, I_g) = 0 and eta(x, i_g(a)) = eps_g(a)."""
    n = S.Ae.dim
    sec = S.sectors[g]
    rows = []
    rhs = []
    for a in range(n):
        y = sparse.add_into({a: ONE}, S.pi(g, {a: ONE}), -ONE)
        if y:
            rows.append([S.Ae.pair({b: ONE}, y) for b in range(n)])
            rhs.append(ZERO)
    # eta(x, i_g(b)) = eps_g(b); by degree only rho_g contributes when graded
    for k, target in enumerate(sec.ibasis):
        rows.append([S.Ae.pair({b: ONE}, target) for b in range(n)])
        rhs.append(sec.counit.get(k, ZERO))
    x = solve(rows, rhs)
    if x is None:
        raise NoSolution(f"no dual element for sector {S.gname(g)}", witness=S.gname(g))
    if rank(rows) < n:
        raise NotUnique(f"dual element for sector {S.gname(g)} is not unique", witness=S.gname(g))
    return sparse.from_dense(x)


def check_gamma_diag(S: SpecialGFrob) -> Report:
    """Stored gamma_{g,g^-1} is a multiple of the dual element, and
    multiplicativity holds where gamma_{g,h} = gamma_{h^-1,g^-1} = 1."""
    G = S.group
    rep = Report("gamma diagonal")
    bad = None
    for g in range(G.order):
        x = gamma_diag(S, g)
        st = S.gam(g, G.inv[g])
        k = next(iter(x))
        c = st.get(k, ZERO) / x[k]
        if not c or not sparse.equal(st, sparse.scale(x, c)):
            bad = S.gname(g)
            break
    rep.add("gamma_{g,g^-1} proportional to the dual of 1_g", bad is None, witness=bad)
    one = S.Ae.unit
    bad = None
    for g in range(G.order):
        for h in range(G.order):
            if sparse.equal(S.gam(g, h), one) and sparse.equal(S.gam(G.inv[h], G.inv[g]), one):
                gh = G.mul(g, h)
                lhs = S.gam(gh, G.inv[gh])
                rhs = S.mul(S.gam(g, G.inv[g]), S.gam(h, G.inv[h]))
                if not sparse.equal(lhs, rhs):
                    bad = (S.gname(g), S.gname(h))
    rep.add("gamma_{gh,(gh)^-1} = gamma_{g,g^-1} gamma_{h,h^-1}", bad is None, witness=bad)
    return rep


def diagonal_scale(S: SpecialGFrob, g: int, rule: str = "corrected") -> Cyclotomic:
    """The rescaling factor of eta_g, a square root of a signed character
    value; ``rule='literal'`` uses chi_g in place of chi_{g^-1}."""
    G = S.group
    ginv = G.inv[g]
    c = S.chi[ginv] if rule == "corrected" else S.chi[g]
    val = c * (-1 if S.par(g) else 1)
    return sqrt_unit(val, minus_one=1)


def pin_diagonal(S: SpecialGFrob, rule: str = "corrected", branch: int = 1) -> dict[tuple[int, int], Vec]:
    """gamma_{g,g^-1} for every g: a root times the dual element for the
    earlier element of each {g, g^-1} pair, its partner from compatibility."""
    G = S.group
    out: dict[tuple[int, int], Vec] = {}
    for g in range(1, G.order):
        ginv = G.inv[g]
        if ginv < g:
            continue
        s = diagonal_scale(S, g, rule) * branch
        gam = sparse.scale(gamma_diag(S, g), s)
        out[(g, ginv)] = gam
        if ginv == g:
            if S.sign(g, g) * S.ph(g, g) != ONE:
                raise SignObstruction(f"gamma_{{{S.gname(g)},{S.gname(g)}}} is forced to vanish",
                                      witness=S.gname(g))
        else:
            out[(ginv, g)] = sparse.scale(gam, S.ph(ginv, g) * S.sign(g, g))
    return out


def degree_slice(S: SpecialGFrob, g: int, h: int) -> list[Vec]:
    """Basis vectors of i_gh(A_gh) of degree s_g + s_h - s_gh."""
    G = S.group
    gh = G.mul(g, h)
    want = S.sectors[g].shift + S.sectors[h].shift - S.sectors[gh].shift
    sec = S.sectors[gh]
    return [v for v, deg in zip(sec.ibasis, sec.degrees) if deg == want]


def solve_gamma(S: SpecialGFrob, bound: Optional[int] = None,
                rule: str = "corrected") -> list[dict[tuple[int, int], Vec]]:
    """Enumerate graded cocycles compatible with phi.

    Diagonal entries are pinned by the dual-element recipe.  Remaining
    entries range over their degree slice; the cocycle equations in which
    only one unknown appears are solved linearly and any leftover freedom
    is enumerated over {0, 1} per parameter (after the rescaling gauge
    fixes one scale per sector pair).
    """
    bound = bound if bound is not None else solver_bound()
    G = S.group
    els = range(G.order)
    solutions = []
    for branch in (1, -1):
        pinned = pin_diagonal(S, rule, branch)
        unknown: list[tuple[int, int]] = []
        slices: dict[tuple[int, int], list[Vec]] = {}
        for g in els:
            for h in els:
                if g == 0 or h == 0 or G.mul(g, h) == 0:
                    continue
                sl = degree_slice(S, g, h)
                if sl:
                    unknown.append((g, h))
                    slices[(g, h)] = sl
        # variable layout
        var_of: dict[tuple[int, int], list[int]] = {}
        nv = 0
        for key in unknown:
            var_of[key] = list(range(nv, nv + len(slices[key])))
            nv += len(slices[key])

        def known(g: int, h: int) -> Optional[Vec]:
            if g == 0 or h == 0:
                return S.gam(g, h)
            if (g, h) in pinned:
                return pinned[(g, h)]
            if (g, h) not in slices:
                return {}
            return None

        n = S.Ae.dim
        rows: list[list[Cyclotomic]] = []
        rhs: list[Cyclotomic] = []

        def side(g1, h1, g2, h2, target):
            """Linear form of pi_target(gamma_1 gamma_2) if at most one is unknown."""
            a, b = known(g1, h1), known(g2, h2)
            if a is not None and b is not None:
                return "const", S.pi(target, S.mul(a, b))
            if a is None and b is None:
                return None
            unk, fixed = ((g1, h1), b) if a is None else ((g2, h2), a)
            cols = {}
            for var, bv in zip(var_of[unk], slices[unk]):
                cols[var] = S.pi(target, S.mul(bv, fixed))
            return "lin", cols

        for g in els:
            for h in els:
                for k in els:
                    gh, hk = G.mul(g, h), G.mul(h, k)
                    ghk = G.mul(gh, k)
                    L = side(g, h, gh, k, ghk)
                    R = side(h, k, g, hk, ghk)
                    if L is None or R is None:
                        continue
                    _add_equation(rows, rhs, L, R, n, nv)
        for g in els:
            for h in els:
                if (g, h) not in slices and (G.conj(g, h), g) not in slices:
                    continue
                c = S.ph(g, h) * S.sign(g, h)
                a = known(G.conj(g, h), g)
                b = known(g, h)
                La = ("const", sparse.scale(a, c)) if a is not None else (
                    "lin", {v: sparse.scale(bv, c) for v, bv in
                            zip(var_of[(G.conj(g, h), g)], slices[(G.conj(g, h), g)])})
                Rb = ("const", b) if b is not None else (
                    "lin", {v: bv for v, bv in zip(var_of[(g, h)], slices[(g, h)])})
                _add_equation(rows, rhs, La, Rb, n, nv)

        if nv == 0:
            base, kernel = [], []
        else:
            if rows:
                x = solve(rows, rhs)
                if x is None:
                    continue
                m, piv = rref(rows)
                free = [c for c in range(nv) if c not in piv]
                kernel = []
                for f in free:
                    v = [ZERO] * nv
                    v[f] = ONE
                    for r, p in enumerate(piv):
                        v[p] = -m[r][f]
                    kernel.append(v)
                base = x
            else:
                base = [ZERO] * nv
                kernel = [[ONE if i == j else ZERO for i in range(nv)] for j in range(nv)]
        comps: dict[tuple[int, int], list[Vec]] = {}
        for key in unknown:
            parts = []
            for t in [base] + kernel:
                vec: Vec = {}
                for var, bv in zip(var_of[key], slices[key]):
                    if t[var]:
                        sparse.add_into(vec, bv, t[var])
                parts.append(vec)
            comps[key] = parts
        nk = len(kernel)

        def parts_of(g, h):
            kn = known(g, h)
            if kn is not None:
                return [kn] + [{}] * nk
            return comps[(g, h)]

        eqs = []
        for g in els:
            for h in els:
                for k in els:
                    gh, hk = G.mul(g, h), G.mul(h, k)
                    if known(g, h) is not None and known(gh, k) is not None \
                            and known(h, k) is not None and known(g, hk) is not None:
                        continue
                    ghk = G.mul(gh, k)
                    poly: dict[tuple[int, int], Vec] = {}
                    for sgn, (a, b) in ((1, ((g, h), (gh, k))), (-1, ((h, k), (g, hk)))):
                        pa, pb = parts_of(*a), parts_of(*b)
                        for i, u in enumerate(pa):
                            if not u:
                                continue
                            for j, v in enumerate(pb):
                                if not v:
                                    continue
                                w = S.pi(ghk, S.mul(u, v))
                                if w:
                                    mono = (min(i, j), max(i, j))
                                    sparse.add_into(poly.setdefault(mono, {}), w, ONE if sgn == 1 else -ONE)
                    coords = set()
                    for w in poly.values():
                        coords.update(w)
                    for c in sorted(coords):
                        e = {m: w[c] for m, w in poly.items() if w.get(c)}
                        if e:
                            eqs.append(e)
        for t in _complete(eqs, nk, bound):
            vals = list(base)
            for tv, kv in zip(t, kernel):
                if tv:
                    vals = [a + tv * b for a, b in zip(vals, kv)]
            gamma = dict(pinned)
            for key in unknown:
                vec = {}
                for var, bv in zip(var_of[key], slices[key]):
                    if vals[var]:
                        sparse.add_into(vec, bv, vals[var])
                if vec:
                    gamma[key] = vec
            cand = SpecialGFrob(S.group, S.Ae, S.action, S.sectors, gamma, S.phi2, S.chi, S.d)
            if _admissible(cand) and gamma not in solutions:
                solutions.append(gamma)
    return solutions


Poly = dict[tuple[int, int], Cyclotomic]


def _substitute(eq: Poly, assign: dict[int, Cyclotomic]) -> Poly:
    """Plug values into a quadratic polynomial; index 0 is the constant 1."""
    out: Poly = {}
    for (i, j), c in eq.items():
        rest = []
        for v in (i, j):
            if v in assign:
                c = c * assign[v]
            elif v:
                rest.append(v)
        key = tuple(sorted(rest)) if len(rest) == 2 else (0, rest[0] if rest else 0)
        out[key] = out.get(key, ZERO) + c
    return {k: c for k, c in out.items() if c}


def _sqrt(x: Cyclotomic) -> Optional[Cyclotomic]:
    if x.is_rational():
        return sqrt_rational(x.to_fraction())
    if x.root_of_unity_arg() is not None:
        return sqrt_unit(x, minus_one=1)
    return None


def _complete(eqs: list[Poly], nk: int, bound: int):
    """Assignments of t_1..t_nk solving the quadratic equations.

    Linear equations are solved first, then univariate quadratics; when
    neither is left a free parameter is branched over 1 and 0.
    """
    count = [0]

    def rec(assign: dict[int, Cyclotomic]):
        count[0] += 1
        if count[0] > bound:
            raise SearchSpaceTooLarge(f"cocycle search exceeded {bound} nodes", witness=bound)
        live = []
        for e in eqs:
            r = _substitute(e, assign)
            if not r:
                continue
            if set(r) == {(0, 0)}:
                return
            live.append(r)
        for r in live:
            if all(i == 0 for i, _ in r):
                v = max(j for _, j in r)
                a = r.get((0, v), ZERO)
                if a:
                    rest = ZERO - r.get((0, 0), ZERO)
                    for (i, j), c in r.items():
                        if (i, j) not in ((0, 0), (0, v)):
                            break
                    else:
                        yield from rec({**assign, v: rest / a})
                        return
        for r in live:
            vs = {x for m in r for x in m if x}
            if len(vs) == 1:
                v = vs.pop()
                a, b, c = r.get((v, v), ZERO), r.get((0, v), ZERO), r.get((0, 0), ZERO)
                if not a:
                    yield from rec({**assign, v: -c / b})
                    return
                root = _sqrt(b * b - a * c * 4)
                if root is None:
                    continue
                roots = []
                for sgn in (1, -1):
                    x = (-b + root * sgn) / (a * 2)
                    if x not in roots:
                        roots.append(x)
                for x in roots:
                    yield from rec({**assign, v: x})
                return
        free = [v for v in range(1, nk + 1) if v not in assign]
        if not free:
            yield [assign[v] for v in range(1, nk + 1)]
            return
        v = free[0]
        for x in (ONE, ZERO):
            yield from rec({**assign, v: x})

    yield from rec({})


def _add_equation(rows, rhs, L, R, n, nv) -> None:
    """Append coordinate rows of L - R = 0."""
    for coord in range(n):
        row = [ZERO] * nv
        const = ZERO
        for sgn, part in ((1, L), (-1, R)):
            kind, data = part
            if kind == "const":
                c = data.get(coord)
                if c:
                    const = const + c if sgn == 1 else const - c
            else:
                for var, vec in data.items():
                    c = vec.get(coord)
                    if c:
                        row[var] = row[var] + c if sgn == 1 else row[var] - c
        if any(row) or const:
            rows.append(row)
            rhs.append(-const)


def _admissible(S: SpecialGFrob) -> bool:
    if not check_cocycle(S).get("graded").passed:
        return False
    if not check_nonabelian(S).get("compatibility phi_{g,h} gamma_{ghg^-1,g} = gamma_{g,h}").passed:
        return False
    return zerocheck(S) is None


def zerocheck(S: SpecialGFrob):
    """A pair (g, h) with pi_h(gamma_{g,g^-1}) != 0 but gamma_{g,h} = 0."""
    G = S.group
    for g in range(G.order):
        d = S.gam(g, G.inv[g])
        for h in range(G.order):
            if S.pi(h, d) and not S.gam(g, h):
                return (S.gname(g), S.gname(h))
    return None


def shifts(moved_args: Sequence[Fraction], d: Fraction, d_g: Fraction) -> tuple[Fraction, Fraction, Fraction]:
    """Standard shift (s^+, s^-, s) from the eigenvalue arguments in [0, 1)
    of g on its moved coordinates."""
    d, d_g = Fraction(d), Fraction(d_g)
    s_plus = d - d_g
    s = s_plus / 2 + sum((Fraction(a) - Fraction(1, 2) for a in moved_args), Fraction(0))
    return s_plus, 2 * s - s_plus, s


def dump_cocycles(S: SpecialGFrob) -> str:
    lines = ["# orbfrob cocycle dump v1"]
    for (g, h) in sorted(S.gamma):
        lines.append(f"gamma {g} {h} {vec_text(S.gamma[(g, h)])}")
    for (g, h) in sorted(S.phi2):
        lines.append(f"phi {g} {h} {scalar_text(S.phi2[(g, h)])}")
    return "\n".join(lines) + "\n"
