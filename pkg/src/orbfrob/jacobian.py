"""Orbifolds of Jacobian Frobenius algebras by linear symmetry groups."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence, Union

from . import sparse
from .errors import (NoAdmissibleCocycle, NonIsolated, NonIsolatedRestriction,
                     NotQuasiHomogeneous, PreconditionError)
from .exact import ONE, ZERO, Cyclotomic, MultiPoly, QuotientRing, milnor_ring, solve, sqrt_rational
from .exact.linalg import det, inverse, nullspace, rref
from .exact.poly import format_monomial
from .frobenius import FrobAlgebra, from_quotient_ring
from .gfrob import GFrobenius, Invariants, check_gfrob, invariants
from .group import DiscreteTorsion, MatrixGroup, ParityChoice, element_data
from .report import Report
from .special import (Sector, SpecialGFrob, check_cocycle, check_nonabelian, reconstruct,
                      shifts, solve_gamma)

Vec = sparse.Vec
CocycleSource = Union[str, dict]


@dataclass
class JacobianOrbifoldInput:
    f: MultiPoly
    weights: Sequence[Fraction]
    group: MatrixGroup
    parity: Optional[ParityChoice] = None
    torsion: Optional[DiscreteTorsion] = None
    cocycle: CocycleSource = "closed"
    convention: str = "inverse"

    def __post_init__(self):
        self.weights = [Fraction(w) for w in self.weights]
        self.f = self.f.with_weights(self.weights)
        if self.parity is None:
            self.parity = ParityChoice.trivial(self.group)
        if self.torsion is None:
            self.torsion = DiscreteTorsion.trivial(self.group)

    @property
    def n(self) -> int:
        return len(self.f.vars)

    @property
    def N(self) -> int:
        """Common denominator of the weights, made divisible by |G|."""
        out = self.group.order
        for q in self.weights:
            out = lcm(out, q.denominator)
        return out


def _linear_images(f: MultiPoly, m) -> list[MultiPoly]:
    """x_i -> sum_j m[i][j] x_j as polynomials."""
    n = len(f.vars)
    out = []
    for i in range(n):
        terms = {}
        for j in range(n):
            if m[i][j]:
                e = [0] * n
                e[j] = 1
                terms[tuple(e)] = m[i][j]
        out.append(MultiPoly(f.vars, terms, f.weights))
    return out


def check_input(inp: JacobianOrbifoldInput) -> Report:
    rep = Report("orbifold input")
    G = inp.group
    bad = None
    for s in G.gen_indices:
        if inp.f.substitute(_linear_images(inp.f, G.elements[s])) != inp.f:
            bad = s
            break
    rep.add("f(gx) = f(x) for every generator", bad is None, witness=bad)
    bad = None
    for g in range(G.order):
        m = G.elements[g]
        for i in range(inp.n):
            for j in range(inp.n):
                if m[i][j] and inp.weights[i] != inp.weights[j]:
                    bad = (G.names[g], i, j)
    rep.add("group preserves the weight grading", bad is None, witness=bad)
    rep.add("|G| divides N", inp.N % G.order == 0, witness=inp.N)
    rep.add("parity is a homomorphism", inp.parity.is_homomorphism(G))
    audit = inp.torsion.audit()
    rep.add("discrete torsion axioms", audit is None, witness=audit)
    return rep


@dataclass
class TwistedSectorData:
    g: int
    vars: tuple[str, ...]
    forms: list[list[Cyclotomic]]      # t_l = sum_i forms[l][i] x_i
    fixed_basis: list[list[Cyclotomic]]
    restricted: MultiPoly
    ring: QuotientRing
    d_g: Fraction
    chi: Cyclotomic
    sigma: int
    n_moved: int
    parity: int
    moved_args: list[Fraction]
    shift: Fraction = Fraction(0)
    cobishift: Fraction = Fraction(0)


def _weight_blocks(weights: Sequence[Fraction]) -> list[list[int]]:
    blocks: dict[Fraction, list[int]] = {}
    for i, q in enumerate(weights):
        blocks.setdefault(q, []).append(i)
    return [blocks[q] for q in sorted(blocks)]


def _fixed_space(inp: JacobianOrbifoldInput, g: int):
    """Weight-homogeneous basis of Fix(g) and coordinate forms on it."""
    G = inp.group
    m = G.elements[g]
    n = inp.n
    data = element_data(G, g)
    if data.diagonal:
        fixed = list(data.fixed_vars)
        basis = [[ONE if r == i else ZERO for r in range(n)] for i in fixed]
        forms = [[ONE if c == i else ZERO for c in range(n)] for i in fixed]
        names = tuple(inp.f.vars[i] for i in fixed)
        return basis, forms, names, [inp.weights[i] for i in fixed], data
    basis = []
    weights = []
    for block in _weight_blocks(inp.weights):
        sub = [[m[i][j] - (ONE if i == j else ZERO) for j in block] for i in block]
        for v in nullspace(sub, len(block)):
            full = [ZERO] * n
            for pos, i in enumerate(block):
                full[i] = v[pos]
            basis.append(full)
            weights.append(inp.weights[block[0]])
    P = data.projector
    k = len(basis)
    forms = [[ZERO] * n for _ in range(k)]
    if k:
        V = [[basis[c][r] for c in range(k)] for r in range(n)]
        for i in range(n):
            t = solve(V, [P[r][i] for r in range(n)])
            for l in range(k):
                forms[l][i] = t[l]
    names = tuple(f"t{l + 1}" for l in range(k))
    return basis, forms, names, weights, data


def twisted_sector(inp: JacobianOrbifoldInput, g: int) -> TwistedSectorData:
    G = inp.group
    basis, forms, names, wts, data = _fixed_space(inp, g)
    k = len(basis)
    target = [MultiPoly(names, {tuple(1 if c == l else 0 for c in range(k)): ONE}, wts) for l in range(k)]
    images = []
    for i in range(inp.n):
        p = MultiPoly(names, {}, wts)
        for l in range(k):
            if basis[l][i]:
                p = p + target[l] * basis[l][i]
        images.append(p)
    restricted = inp.f.substitute(images) if k else MultiPoly((), {}, ())
    try:
        ring = milnor_ring(restricted, wts)
    except (NonIsolated, NotQuasiHomogeneous) as exc:
        raise NonIsolatedRestriction(
            f"f restricted to Fix({G.names[g]}) is not an isolated singularity",
            witness=G.names[g]) from exc
    d_g = sum((1 - 2 * q for q in wts), Fraction(0))
    n_moved = inp.n - k
    sigma = inp.parity(g)
    chi = G.det(g) * (-1 if sigma else 1)
    moved = [a for a in data.eigen_args if a != 0]
    return TwistedSectorData(g, names, forms, basis, restricted, ring, d_g, chi, sigma, n_moved,
                             (sigma + n_moved) % 2, moved)


def arnold_character(inp: JacobianOrbifoldInput, g: int, z: Optional[Cyclotomic] = None) -> Cyclotomic:
    """Graded character of g on A_e at z, or its limit at z = 1.

    Each coordinate contributes (mu^-1 z^(N-Q) - 1) / (mu z^Q - 1), which
    is the lifted product with the lift normalised by lift^N = 1.  Where a
    factor is 0/0 its value is the limit (N-Q)/Q.
    """
    G = inp.group
    data = element_data(G, g)
    if not data.diagonal:
        raise PreconditionError("the character formula needs a diagonal element", witness=G.names[g])
    N = inp.N
    mus = [inp_mu(inp, g, i) for i in range(inp.n)]
    acc = ONE
    for q, mu in zip(inp.weights, mus):
        Q = int(q * N)
        zz = ONE if z is None else Cyclotomic.coerce(z)
        num = mu.inverse() * zz ** (N - Q) - ONE
        den = mu * zz ** Q - ONE
        if den:
            acc = acc * num / den
        elif not num:
            acc = acc * Fraction(N - Q, Q)
        else:
            raise ZeroDivisionError("pole of the character")
    return acc


def inp_mu(inp: JacobianOrbifoldInput, g: int, i: int) -> Cyclotomic:
    """Eigenvalue of phi_g on the coordinate x_i under the transposed convention."""
    return inp.group.elements[g][i][i]


def _action_matrix(inp: JacobianOrbifoldInput, g: int, convention: str):
    m = inp.group.elements[g]
    n = inp.n
    if convention == "inverse":
        return inverse(m)
    return [[m[j][i] for j in range(n)] for i in range(n)]


def action_on_ring(inp: JacobianOrbifoldInput, ring: QuotientRing, g: int,
                   convention: str) -> dict[int, Vec]:
    images = _linear_images(inp.f, _action_matrix(inp, g, convention))
    out = {}
    for k, e in enumerate(ring.basis):
        mono = MultiPoly(inp.f.vars, {e: ONE}, inp.weights)
        out[k] = sparse.from_dense(ring.vector(mono.substitute(images)))
    return out


def _trace(op: dict[int, Vec], n: int) -> Cyclotomic:
    acc = ZERO
    for k in range(n):
        acc = acc + op.get(k, {}).get(k, ZERO)
    return acc


@dataclass
class OrbifoldBuild:
    input: JacobianOrbifoldInput
    sectors: list[TwistedSectorData]
    special: SpecialGFrob
    algebra: GFrobenius
    report: Report
    convention: str
    cocycles: list[dict] = field(default_factory=list)

    def __iter__(self):
        return iter((self.special, self.algebra))


def _choose_convention(inp, ring, tsd) -> tuple[str, list[dict[int, Vec]], list[str]]:
    G = inp.group
    notes = []
    order = [inp.convention, "transpose" if inp.convention == "inverse" else "inverse"]
    for conv in order:
        acts = [action_on_ring(inp, ring, g, conv) for g in range(G.order)]
        ok = all(_trace(acts[g], ring.dim)
                 == G.det(g).inverse() * (-1 if tsd[g].n_moved % 2 else 1) * tsd[g].ring.dim
                 for g in range(G.order))
        if ok:
            if conv != inp.convention:
                notes.append(f"action convention switched from {inp.convention} to {conv} "
                             "to satisfy the trace formula")
            return conv, acts, notes
    raise PreconditionError("no action convention satisfies the trace formula")


def _moved_bases(G: MatrixGroup) -> list[list[list[Cyclotomic]]]:
    """A basis of N_h = im(h - 1) for every h, transported along the
    first conjugating element from its class representative."""
    out: list = [None] * G.order
    for h in range(G.order):
        if out[h] is not None:
            continue
        m = G.elements[h]
        n = G.n
        shifted = [[m[i][j] - (ONE if i == j else ZERO) for j in range(n)] for i in range(n)]
        _, piv = rref(shifted)
        base = [[shifted[i][j] for i in range(n)] for j in piv]
        for k in range(G.order):
            c = G.conj(k, h)
            if out[c] is None:
                mk = G.elements[k]
                out[c] = [[sum((mk[i][j] * v[j] for j in range(n)), ZERO) for i in range(n)] for v in base]
    return out


def _transport_det(G: MatrixGroup, bases, g: int, h: int) -> Cyclotomic:
    """det of g: N_h -> N_{ghg^-1} in the chosen bases."""
    src, dst = bases[h], bases[G.conj(g, h)]
    k = len(src)
    if not k:
        return ONE
    n = G.n
    m = G.elements[g]
    D = [[dst[c][r] for c in range(k)] for r in range(n)]
    cols = []
    for v in src:
        gv = [sum((m[i][j] * v[j] for j in range(n)), ZERO) for i in range(n)]
        cols.append(solve(D, gv))
    return det([[cols[c][r] for c in range(k)] for r in range(k)])


def _torsion_ext(inp: JacobianOrbifoldInput, g: int, h: int) -> Cyclotomic:
    """eps on commuting pairs; on other pairs eps(m, h0) with m the
    centraliser element relating the transporters of h and ghg^-1."""
    G = inp.group
    eps = inp.torsion.values
    if G.commutes(g, h):
        return eps.get((g, h), ONE)
    cls = [G.conj(k, h) for k in range(G.order)]
    h0 = min(cls)
    k = next(x for x in range(G.order) if G.conj(x, h0) == h)
    k2 = next(x for x in range(G.order) if G.conj(x, h0) == G.conj(g, h))
    m = G.mul(G.mul(G.inv[k2], g), k)
    return eps.get((m, h0), ONE)


def _phi_scalars(inp: JacobianOrbifoldInput, tsd: list[TwistedSectorData]) -> dict[tuple[int, int], Cyclotomic]:
    G = inp.group
    bases = _moved_bases(G)
    out = {}
    for g in range(G.order):
        for h in range(G.order):
            sign = -1 if tsd[g].sigma and tsd[h].sigma else 1
            out[(g, h)] = _torsion_ext(inp, g, h) * _transport_det(G, bases, g, h).inverse() * sign
    return out


def _sector(inp: JacobianOrbifoldInput, ring_e: QuotientRing, t: TwistedSectorData) -> Sector:
    r = t.ring
    labels = [format_monomial(t.vars, e) for e in r.basis]
    forms = [MultiPoly(inp.f.vars, {tuple(1 if c == i else 0 for c in range(inp.n)): x
                                    for i, x in enumerate(row) if x}, inp.weights)
             for row in t.forms]
    ibasis = []
    for e in r.basis:
        p = MultiPoly.const(inp.f.vars, 1, inp.weights)
        for l, a in enumerate(e):
            if a:
                p = p * forms[l] ** a
        ibasis.append(sparse.from_dense(ring_e.vector(p)))
    k = len(t.vars)
    pts = [MultiPoly(t.vars, {}, r.weights) for _ in range(inp.n)]
    for l in range(k):
        tl = MultiPoly(t.vars, {tuple(1 if c == l else 0 for c in range(k)): ONE}, r.weights)
        for i in range(inp.n):
            if t.fixed_basis[l][i]:
                pts[i] = pts[i] + tl * t.fixed_basis[l][i]
    restrict = {}
    for a, e in enumerate(ring_e.basis):
        mono = MultiPoly(inp.f.vars, {e: ONE}, inp.weights)
        if k:
            w = sparse.from_dense(r.vector(mono.substitute(pts)))
        else:
            w = {0: ONE} if not any(e) else {}
        if w:
            restrict[a] = w
    counit = sparse.from_dense(list(r.counit))
    return Sector(t.g, labels, ibasis, restrict, list(r.degrees), t.d_g, counit,
                  t.parity, t.shift, t.cobishift)


def build_special(inp: JacobianOrbifoldInput, gamma: Optional[dict] = None):
    G = inp.group
    rep = check_input(inp)
    if not rep.ok:
        c = rep.first_failure()
        raise PreconditionError(f"invalid orbifold input: {c.name}", witness=c.witness)
    ring_e = milnor_ring(inp.f, inp.weights)
    Ae = from_quotient_ring(ring_e)
    d = sum((1 - 2 * q for q in inp.weights), Fraction(0))
    tsd = [twisted_sector(inp, g) for g in range(G.order)]
    for t in tsd:
        _, _, t.shift = shifts(t.moved_args, d, t.d_g)
    for t in tsd:
        t.cobishift = tsd[G.inv[t.g]].shift
    conv, acts, notes = _choose_convention(inp, ring_e, tsd)
    sectors = [_sector(inp, ring_e, t) for t in tsd]
    phi2 = _phi_scalars(inp, tsd)
    S = SpecialGFrob(G, Ae, acts, sectors, dict(gamma or {}), phi2, [t.chi for t in tsd], d, notes)
    return S, tsd, conv, rep


def build_orbifold(inp: JacobianOrbifoldInput) -> OrbifoldBuild:
    S, tsd, conv, rep = build_special(inp)
    G = inp.group
    cocycles: list[dict] = []
    if isinstance(inp.cocycle, dict):
        S.gamma = dict(inp.cocycle)
    else:
        cocycles = solve_gamma(S)
        if not cocycles:
            raise NoAdmissibleCocycle("no graded cocycle is compatible with the action",
                                      witness=G.order)
        S.gamma = cocycles[0]
    A = reconstruct(S)
    rep.notes.extend(S.notes)
    rep.extend(check_cocycle(S), "cocycle: ")
    rep.extend(check_nonabelian(S), "non-abelian: ")
    rep.extend(check_gfrob(A), "axioms: ")
    rep.extend(trace_identities(inp, S, A), "traces: ")
    rep.data = build_data(S, A, conv)
    return OrbifoldBuild(inp, tsd, S, A, rep, conv, cocycles)


def trace_identities(inp: JacobianOrbifoldInput, S: SpecialGFrob, A: GFrobenius) -> Report:
    G = inp.group
    rep = Report("trace identities")
    ne = S.Ae.dim
    bad = None
    for g in range(G.order):
        sd = A.strace(lambda v: v, A.sectors[g])
        tr = _trace(S.action[G.inv[g]], ne)
        if sd != S.chi[G.inv[g]] * tr:
            bad = (G.names[g], str(sd), str(S.chi[G.inv[g]] * tr))
            break
    rep.add("sdim A_g = chi_{g^-1} Tr(phi_{g^-1}|A_e)", bad is None, witness=bad)
    bad = None
    for g in range(G.order):
        sgn = -1 if S.par(g) else 1
        if S.chi[g] * _trace(S.action[g], ne) != sgn * S.sectors[g].dim:
            bad = G.names[g]
            break
    rep.add("sdim A_g = chi_g Tr(phi_g|A_e)", bad is None, witness=bad)
    bad = None
    top = next(iter(S.Ae.eta.get((0, k)) and k for k in range(ne) if S.Ae.eta.get((0, k))), None)
    rho = {top: S.Ae.eta[(0, top)].inverse()} if top is not None else {}
    for g in range(G.order):
        want = sparse.scale(rho, (G.det(g) * G.det(g)).inverse())
        if not sparse.equal(S.act_e(g, rho), want):
            bad = G.names[g]
            break
    rep.add("phi_g(rho) = det(g)^-2 rho", bad is None, witness=bad)
    return rep


def literal_dim_identity(S: SpecialGFrob) -> Optional[tuple]:
    """First g violating dim A_g = chi_{g^-1} Tr(phi_g|A_e), or None."""
    G = S.group
    for g in range(G.order):
        lhs = Cyclotomic.rational(S.sectors[g].dim)
        rhs = S.chi[G.inv[g]] * _trace(S.action[g], S.Ae.dim)
        if lhs != rhs:
            return (G.names[g], str(lhs), str(rhs))
    return None


def verify_trace_decomposition(build: OrbifoldBuild, g: int, h: int) -> Report:
    """Both sides of the trace axiom for c = 1 computed directly and via
    eps(h, g) T(h, g), with T read off the direct side."""
    A = build.algebra
    G = A.group
    inp = build.input
    rep = Report(f"trace decomposition ({G.names[g]}, {G.names[h]})")
    if not G.commutes(g, h):
        rep.add("pair commutes", False, witness=(G.names[g], G.names[h]))
        return rep
    ginv = G.inv[g]
    one = A.unit

    def side(x: int, y: int) -> Cyclotomic:
        return A.chi[x] * A.strace(lambda v: A.mul(one, A.act(x, v)), A.sectors[y])

    lhs = side(h, g)
    rhs = side(ginv, h)
    rep.add("axiom iv sides agree", lhs == rhs, witness=(str(lhs), str(rhs)))
    eps = inp.torsion.values

    def T(x, y):
        return side(x, y) / eps[(x, y)]

    t_hg, t_gh, t_ginv_h = T(h, g), T(g, h), T(ginv, h)
    rep.add("T(h,g) = T(g,h)", t_hg == t_gh, witness=(str(t_hg), str(t_gh)))
    rep.add("T(h,g) = T(g^-1,h)", t_hg == t_ginv_h, witness=(str(t_hg), str(t_ginv_h)))
    rep.add("eps(h,g) T(h,g) = eps(g^-1,h) T(g^-1,h)",
            eps[(h, g)] * t_hg == eps[(ginv, h)] * t_ginv_h)
    if h == 0:
        sd = A.strace(lambda v: v, A.sectors[g])
        rep.add("h = e gives the dimension identity", lhs == sd, witness=(str(lhs), str(sd)))
    rep.data.update({"lhs": lhs, "rhs": rhs, "T": t_hg})
    return rep


def build_data(S: SpecialGFrob, A: GFrobenius, convention: str) -> dict:
    G = S.group
    sectors = [{"g": G.names[g], "dim": S.sectors[g].dim, "d_g": str(S.sectors[g].d_g),
                "chi": str(S.chi[g]), "s_g": str(S.sectors[g].shift),
                "parity": S.sectors[g].parity} for g in range(G.order)]
    gamma = [{"g": G.names[g], "h": G.names[h],
              "value": _format_vec(S.Ae.labels, v)} for (g, h), v in sorted(S.gamma.items())]
    phi = [{"g": G.names[g], "h": G.names[h], "value": str(c)}
           for (g, h), c in sorted(S.phi2.items())]
    return {"convention": convention, "sectors": sectors, "gamma": gamma, "phi": phi}


def _format_vec(labels: Sequence[str], v: Vec) -> str:
    if not v:
        return "0"
    parts = []
    for k, c in sorted(v.items()):
        parts.append(labels[k] if c == ONE else f"({c})*{labels[k]}")
    return " + ".join(parts)


# named isomorphisms of invariant algebras

def invariant_coords(inv: Invariants, v: Vec) -> Optional[Vec]:
    """Coordinates of an invariant vector in the invariant basis."""
    n = 1 + max([max(b) for b in inv.basis if b] + list(v) + [0])
    cols = [sparse.dense(b, n) for b in inv.basis]
    mat = [[cols[c][r] for c in range(len(cols))] for r in range(n)]
    x = solve(mat, sparse.dense(v, n))
    return None if x is None else sparse.from_dense(x)


def check_ring_map(ring: QuotientRing, alg: FrobAlgebra, images: Sequence[Vec]) -> Report:
    """x_i -> images[i] extends to a graded algebra isomorphism
    ring -> alg, with proportional metrics."""
    rep = Report("ring isomorphism")
    n = len(ring.vars)
    unit = alg.unit

    def image_of(e) -> Vec:
        out = dict(unit)
        for i, a in enumerate(e):
            for _ in range(a):
                out = alg.mul(out, images[i])
        return out

    imgs = [image_of(e) for e in ring.basis]
    m = alg.dim
    from .exact import rank
    full = len(imgs) == m and rank([sparse.dense(v, m) for v in imgs]) == m
    rep.add("bijective on bases", full, witness=(len(imgs), m))
    bad = None
    for i in range(ring.dim):
        for j in range(ring.dim):
            prod = ring.mult_table.get((i, j), {})
            lhs: Vec = {}
            for k, c in prod.items():
                sparse.add_into(lhs, imgs[k], c)
            if not sparse.equal(lhs, alg.mul(imgs[i], imgs[j])):
                bad = (i, j)
                break
        if bad:
            break
    rep.add("multiplicative", bad is None, witness=bad)
    if alg.degrees is not None:
        bad = None
        for i in range(n):
            if any(alg.degrees[k] != ring.weights[i] for k in images[i]):
                bad = ring.vars[i]
        rep.add("graded", bad is None, witness=bad)
    if alg.eta:
        lam = None
        ok = True
        for i in range(ring.dim):
            for j in range(ring.dim):
                a = ring.pairing(sparse.dense({i: ONE}, ring.dim), sparse.dense({j: ONE}, ring.dim))
                b = alg.pair(imgs[i], imgs[j])
                if a and lam is None:
                    lam = b / a
                if (lam is None and b) or (lam is not None and b != lam * a):
                    ok = False
        rep.add("metrics proportional", ok and bool(lam), witness=str(lam))
        rep.data["metric_scale"] = lam
    return rep


def dn_isomorphism(build: OrbifoldBuild, n: int) -> Report:
    """x -> z^2, y -> beta 1_{-1} from the Milnor ring of x^(n-1) + x y^2."""
    inv = invariants(build.algebra)
    A = build.algebra
    vars_ = ("x", "y")
    w = (Fraction(1, n - 1), Fraction(n - 2, 2 * (n - 1)))
    f = MultiPoly(vars_, {(n - 1, 0): 1, (1, 2): 1}, w)
    ring = milnor_ring(f, w)
    z2 = _global_index(A, "z^2")
    tw = next(i for i in range(A.dim) if A.sector[i] != 0)
    X = invariant_coords(inv, {z2: ONE})
    Y = invariant_coords(inv, {tw: ONE})
    rep = Report("D_n isomorphism")
    if X is None or Y is None:
        rep.add("images are invariant", False)
        return rep
    alg = inv.algebra
    Y2 = alg.mul(Y, Y)
    Xp = dict(alg.unit)
    for _ in range(n - 2):
        Xp = alg.mul(Xp, X)
    # relation (n-1) x^(n-2) + y^2 = 0 fixes beta^2
    k = next(iter(Xp))
    ratio = Y2.get(k, ZERO) / Xp[k]
    beta2 = Cyclotomic.rational(-(n - 1)) / ratio
    rep.data["beta_squared"] = beta2
    beta = sqrt_rational(beta2.to_fraction())
    rep.data["beta"] = beta
    rep.extend(check_ring_map(ring, alg, [X, sparse.scale(Y, beta)]))
    return rep


def an_isomorphism(build: OrbifoldBuild, n: int, generator: str = "z^2") -> Report:
    """u -> generator onto the Milnor ring of u^(n+1)."""
    inv = invariants(build.algebra)
    w = (Fraction(1, n + 1),)
    ring = milnor_ring(MultiPoly(("u",), {(n + 1,): 1}, w), w)
    X = invariant_coords(inv, {_global_index(build.algebra, generator): ONE})
    rep = Report(f"A_{n} isomorphism")
    if X is None:
        rep.add("image is invariant", False)
        return rep
    alg = inv.algebra.scaled(1) if inv.algebra.degrees is None else inv.algebra
    if alg.degrees is not None:
        # compare after normalising degrees so the generator has weight 1/(n+1)
        lam = w[0] / alg.degrees[next(iter(X))] if alg.degrees[next(iter(X))] else 1
        alg = alg.scaled(lam)
    rep.extend(check_ring_map(ring, alg, [X]))
    return rep


def _global_index(A: GFrobenius, label: str) -> int:
    return A.labels.index(label)
