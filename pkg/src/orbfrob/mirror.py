"""Bi-gradings, the Euler twist and the dual of an Euler special G-Frobenius algebra.

Dual elements live on the Ramond space of an enclosing algebra: the dual
sector of g in G is the Ramond sector of g j^-1, where j = exp(2 pi i E).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import sparse
from .errors import IncompatibleMultiplication, NotEuler, PreconditionError
from .exact import ONE, ZERO, Cyclotomic, rank
from .frobenius import FrobAlgebra
from .gfrob import GFrobenius, RamondSpace, _kernel_basis, ramond
from .group import FiniteGroup, MatrixGroup
from .jacobian import OrbifoldBuild
from .report import Report

Vec = sparse.Vec
Table = dict[tuple[int, int], dict[int, Cyclotomic]]
Source = Union[OrbifoldBuild, GFrobenius]
Bidegree = tuple[Fraction, Fraction]


def bigrade_type(bidegrees: Sequence[Bidegree]) -> str:
    cc = all(a == b for a, b in bidegrees)
    ac = all(a == -b for a, b in bidegrees)
    if cc and ac:
        return "(c,c)+(a,c)"
    if cc:
        return "(c,c)"
    if ac:
        return "(a,c)"
    return "mixed"


def spectrum(values) -> list[Fraction]:
    return sorted(values)


@dataclass
class BigradedModule:
    group: FiniteGroup
    labels: list[str]
    sector: list[int]
    bidegrees: list[Bidegree]
    action: list[dict[int, Vec]]
    pairing: dict[tuple[int, int], Cyclotomic]
    source: list[int] = field(default_factory=list)
    twist: Optional[int] = None
    d: Optional[Fraction] = None
    notes: list[str] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def act(self, g: int, v) -> Vec:
        out: Vec = {}
        for i, x in v.items():
            img = self.action[g].get(i)
            if img:
                sparse.add_into(out, img, x)
        return out

    def pair(self, u, v) -> Cyclotomic:
        acc = ZERO
        for i, x in u.items():
            for j, y in v.items():
                c = self.pairing.get((i, j))
                if c:
                    acc = acc + x * y * c
        return acc

    def gram(self) -> list[list[Cyclotomic]]:
        n = self.dim
        return [[self.pairing.get((i, j), ZERO) for j in range(n)] for i in range(n)]

    def kind(self) -> str:
        return bigrade_type(self.bidegrees)

    def e_spectrum(self) -> list[Fraction]:
        return spectrum(a for a, _ in self.bidegrees)

    def ebar_spectrum(self) -> list[Fraction]:
        return spectrum(b for _, b in self.bidegrees)

    def table(self) -> str:
        G = self.group
        lines = [f"dual module: dim {self.dim}, type {self.kind()}"]
        for g in range(G.order):
            for i in (i for i in range(self.dim) if self.sector[i] == g):
                a, b = self.bidegrees[i]
                lines.append(f"  {G.names[g]:>6}  {self.labels[i]:<16} ({a}, {b})")
        for g in range(G.order):
            for i in range(self.dim):
                for k, c in sorted(self.action[g].get(i, {}).items()):
                    lines.append(f"  action {G.names[g]} {self.labels[i]} -> {c}*{self.labels[k]}")
        for (i, j), c in sorted(self.pairing.items()):
            lines.append(f"  pairing {self.labels[i]} {self.labels[j]} {c}")
        lines.extend(f"  note: {n}" for n in self.notes)
        return "\n".join(lines)


# twist operator

@dataclass
class Twist:
    eigenvalues: list[Cyclotomic]
    order: int
    coordinates: Optional[list[Cyclotomic]] = None
    element: Optional[int] = None
    name: Optional[str] = None


def _order(values: Sequence[Fraction]) -> int:
    out = 1
    for q in values:
        out = out * q.denominator // _gcd(out, q.denominator)
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _untwisted_degrees(A: GFrobenius) -> list[Fraction]:
    if A.degrees is None:
        raise PreconditionError("the twist operator needs a graded algebra")
    return [A.degrees[i] for i in A.sectors[0]]


def twist_operator(A: Source, group: Optional[MatrixGroup] = None) -> Twist:
    """j = exp(2 pi i E) on the untwisted sector, matched to a group element.

    For a Jacobian build j acts on the coordinates by exp(2 pi i q_k) and
    is looked up among the matrices of ``group`` (default: the build's own
    group).  For a bare algebra the match compares the action on A_e.
    """
    alg = A.algebra if isinstance(A, OrbifoldBuild) else A
    degs = _untwisted_degrees(alg)
    eig = [Cyclotomic.root(q) for q in degs]
    if isinstance(A, OrbifoldBuild):
        weights = list(A.input.weights)
        coords = [Cyclotomic.root(q) for q in weights]
        out = Twist(eig, _order(weights + degs), coords)
        G = group or A.input.group
        n = len(coords)
        m = [[coords[r] if r == c else ZERO for c in range(n)] for r in range(n)]
        out.element = G.find(m)
    else:
        out = Twist(eig, _order(degs))
        G = group or alg.group
        idx = alg.sectors[0]
        for g in range(G.order):
            if all(sparse.equal(alg.act(g, {i: ONE}), {i: eig[p]}) for p, i in enumerate(idx)):
                out.element = g
                break
    if out.element is not None:
        out.name = G.names[out.element]
    return out


# Euler verdict

@dataclass
class EulerVerdict:
    euler: bool
    reason: str
    twist: Optional[Twist] = None
    embedding: list[int] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.euler


def _same_potential(A: OrbifoldBuild, B: OrbifoldBuild) -> bool:
    return A.input.f == B.input.f and list(A.input.weights) == list(B.input.weights)


def is_euler(A: Source, enclosing: Optional[Source] = None) -> EulerVerdict:
    """Whether A sits in an algebra whose group contains both G and J."""
    alg = A.algebra if isinstance(A, OrbifoldBuild) else A
    G = alg.group
    if enclosing is None:
        t = twist_operator(A)
        if t.element is None:
            return EulerVerdict(False, "j is not an element of G and no enclosing algebra was given", t)
        return EulerVerdict(True, f"j = {t.name} lies in G", t, list(range(G.order)))
    big = enclosing.algebra if isinstance(enclosing, OrbifoldBuild) else enclosing
    if isinstance(A, OrbifoldBuild) != isinstance(enclosing, OrbifoldBuild):
        return EulerVerdict(False, "algebra and enclosing algebra must be of the same kind")
    if isinstance(A, OrbifoldBuild):
        if not _same_potential(A, enclosing):
            return EulerVerdict(False, "enclosing algebra is built on a different potential")
        H = enclosing.input.group
        emb = [H.find(m) for m in A.input.group.elements]
        if any(k is None for k in emb):
            g = emb.index(None)
            return EulerVerdict(False, f"G is not a subgroup of the enclosing group: {G.names[g]}")
        t = twist_operator(A, H)
    else:
        if not big.group.same_as(G):
            return EulerVerdict(False, "bare algebras need the enclosing group to equal G")
        emb = list(range(G.order))
        t = twist_operator(big)
    if t.element is None:
        return EulerVerdict(False, "j is not an element of the enclosing group", t)
    if [alg.labels[i] for i in alg.sectors[0]] != [big.labels[i] for i in big.sectors[0]]:
        return EulerVerdict(False, "untwisted sectors differ", t)
    for g in range(G.order):
        if len(alg.sectors[g]) != len(big.sectors[emb[g]]):
            return EulerVerdict(False, f"sector {G.names[g]} is not a sector of the enclosing algebra", t)
    return EulerVerdict(True, f"j = {big.group.names[t.element]} lies in the enclosing group", t, emb)


# the dual

def dual(A: Source, enclosing: Optional[Source] = None) -> BigradedModule:
    """Sector g of the dual is the Ramond sector g j^-1 of the enclosing algebra."""
    verdict = is_euler(A, enclosing)
    if not verdict:
        raise NotEuler(verdict.reason, witness=verdict.twist.name if verdict.twist else None)
    alg = A.algebra if isinstance(A, OrbifoldBuild) else A
    big = alg if enclosing is None else (
        enclosing.algebra if isinstance(enclosing, OrbifoldBuild) else enclosing)
    if big.bidegrees is None or big.d is None:
        raise PreconditionError("the dual needs a bi-graded algebra")
    V: RamondSpace = ramond(big)
    H = big.group
    G = alg.group
    emb = verdict.embedding
    jinv = H.inv[verdict.twist.element]
    half = big.d / 2
    source: list[int] = []
    sector: list[int] = []
    for g in range(G.order):
        for i in V.sectors[H.mul(emb[g], jinv)]:
            source.append(i)
            sector.append(g)
    pos = {i: k for k, i in enumerate(source)}
    labels = [f"[{V.labels[i]}]_{G.names[g]}" for i, g in zip(source, sector)]
    bideg = [(V.bidegrees[i][0] - half, V.bidegrees[i][1] + half) for i in source]
    action = []
    for g in range(G.order):
        col = {}
        for k, i in enumerate(source):
            img = V.act(emb[g], {i: ONE})
            col[k] = {pos[r]: c for r, c in img.items()}
        action.append(col)
    pairing = {(pos[a], pos[b]): c for (a, b), c in V.eta.items() if a in pos and b in pos}
    out = BigradedModule(G, labels, sector, bideg, action, pairing, source, verdict.twist.element,
                         big.d, [verdict.reason])
    return out


def check_dual(D: BigradedModule, V: RamondSpace) -> Report:
    rep = Report("dual")
    rep.add("bijection onto the relabelled sectors", len(set(D.source)) == len(D.source),
            witness=len(D.source))
    half = D.d / 2
    bad = next((D.labels[k] for k, i in enumerate(D.source)
                if (D.bidegrees[k][0] + half, D.bidegrees[k][1] - half) != V.bidegrees[i]), None)
    rep.add("bigrade equals Ramond bigrade shifted by (-d/2, +d/2)", bad is None, witness=bad)
    n = D.dim
    rep.add("pairing non-degenerate", rank(D.gram()) == n if n else True,
            witness=rank(D.gram()) if n else 0)
    G = D.group
    bad = next(((G.names[g], G.names[h], D.labels[i]) for g in range(G.order) for h in range(G.order)
                for i in range(n)
                if not sparse.equal(D.act(g, D.act(h, {i: ONE})), D.act(G.mul(g, h), {i: ONE}))),
               None)
    rep.add("action is a representation", bad is None, witness=bad)
    bad = next(((G.names[g], D.labels[i], D.labels[j]) for g in range(G.order)
                for i in range(n) for j in range(n)
                if D.pair(D.act(g, {i: ONE}), D.act(g, {j: ONE})) != D.pairing.get((i, j), ZERO)),
               None)
    rep.add("pairing invariant", bad is None, witness=bad)
    return rep


# invariants of the dual

@dataclass
class DualInvariants:
    basis: list[Vec]
    labels: list[str]
    eta: dict[tuple[int, int], Cyclotomic]
    bidegrees: list[Bidegree]
    algebra: Optional[FrobAlgebra]
    report: Report
    form: str = "pulled-back"

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def symmetric(self) -> bool:
        return all(self.eta.get((b, a), ZERO) == c for (a, b), c in self.eta.items())

    def kind(self) -> str:
        return bigrade_type(self.bidegrees)


def _invariant_basis(D: BigradedModule) -> list[tuple[Vec, int]]:
    G = D.group
    n = D.dim
    rows = []
    for s in G.generators:
        mat = [[ZERO] * n for _ in range(n)]
        for i in range(n):
            for r, c in D.act(s, {i: ONE}).items():
                mat[r][i] = mat[r][i] + c
            mat[i][i] = mat[i][i] - ONE
        rows.extend(mat)
    return _kernel_basis(rows, list(range(n)))


def check_invariance(labels: Sequence[str], mult: Table, eta: dict[tuple[int, int], Cyclotomic],
                     unit: Vec) -> Report:
    """eta(ab, c) = eta(a, bc), commutativity and the unit on a basis."""
    n = len(labels)

    def mul(u, v) -> Vec:
        out: Vec = {}
        for i, x in u.items():
            for j, y in v.items():
                row = mult.get((i, j))
                if row:
                    sparse.add_into(out, row, x * y)
        return out

    def pair(u, v) -> Cyclotomic:
        acc = ZERO
        for i, x in u.items():
            for j, y in v.items():
                c = eta.get((i, j))
                if c:
                    acc = acc + x * y * c
        return acc

    rep = Report("compatibility")
    e = [sparse.unit(i) for i in range(n)]
    bad = next(((labels[a], labels[b], labels[c]) for a in range(n) for b in range(n) for c in range(n)
                if pair(mul(e[a], e[b]), e[c]) != pair(e[a], mul(e[b], e[c]))), None)
    rep.add("eta(ab,c) = eta(a,bc)", bad is None, witness=bad)
    bad = next(((labels[a], labels[b]) for a in range(n) for b in range(n)
                if not sparse.equal(mul(e[a], e[b]), mul(e[b], e[a]))), None)
    rep.add("commutative", bad is None, witness=bad)
    bad = next((labels[a] for a in range(n) if not sparse.equal(mul(unit, e[a]), e[a])), None)
    rep.add("unit", bad is None, witness=bad)
    bad = next(((labels[a], labels[b], labels[c]) for a in range(n) for b in range(n) for c in range(n)
                if not sparse.equal(mul(mul(e[a], e[b]), e[c]), mul(e[a], mul(e[b], e[c])))), None)
    rep.add("associative", bad is None, witness=bad)
    return rep


FORMS = ("pulled-back", "symmetric")


def dual_invariants_algebra(D: BigradedModule, product: Optional[Table] = None,
                            unit: Optional[Vec] = None, form: str = "pulled-back") -> DualInvariants:
    """G-invariants of the dual with the pulled-back form.

    A configured product (structure constants in the invariant basis) is
    checked for compatibility with the form.  The pulled-back form need not
    be symmetric across twisted sectors; ``form="symmetric"`` uses its
    symmetric part (eta(x,y) + eta(y,x))/2 instead.
    """
    if form not in FORMS:
        raise ValueError(f"form must be one of {FORMS}")
    kb = _invariant_basis(D)
    basis = [v for v, _ in kb]
    leads = [l for _, l in kb]
    labels = ["+".join(D.labels[i] if c == ONE else f"{c}*{D.labels[i]}" for i, c in sorted(v.items()))
              for v in basis]
    m = len(basis)
    eta = {}
    for a in range(m):
        for b in range(m):
            c = D.pair(basis[a], basis[b])
            if form == "symmetric":
                c = (c + D.pair(basis[b], basis[a])).scale(Fraction(1, 2))
            if c:
                eta[(a, b)] = c
    bideg = [D.bidegrees[l] for l in leads]
    rep = Report("dual invariants")
    gram = [[eta.get((a, b), ZERO) for b in range(m)] for a in range(m)]
    rep.add("pulled-back form non-degenerate", rank(gram) == m if m else True)
    alg = None
    if product is not None:
        u = unit if unit is not None else {}
        compat = check_invariance(labels, product, eta, u)
        rep.extend(compat)
        bad = compat.first_failure()
        if bad is not None:
            raise IncompatibleMultiplication(f"configured product fails: {bad.name}", witness=bad.witness)
        alg = FrobAlgebra(labels, product, eta, dict(u))
        alg.bidegrees = bideg
        alg.degrees = [b for _, b in bideg]
    return DualInvariants(basis, labels, eta, bideg, alg, rep, form)


def transport_product(inv: DualInvariants, B: FrobAlgebra, images: Sequence[int]) -> tuple[Table, Vec, list[Cyclotomic]]:
    """Pull the product of B back along basis k -> c_k B_{images[k]}.

    The scalars c_k are chosen so that the pulled-back form is a constant
    multiple of B's form; this needs B's form to pair each basis element
    with a single partner.
    """
    m = inv.dim
    if sorted(images) != list(range(B.dim)) or m != B.dim:
        raise PreconditionError("images must be a bijection onto the basis of B", witness=list(images))
    back = {b: k for k, b in enumerate(images)}
    partner: dict[int, int] = {}
    for (a, b), c in B.eta.items():
        if a in partner and partner[a] != b:
            raise PreconditionError("B's form pairs an element with two partners", witness=B.labels[a])
        partner[a] = b
    scale: list[Optional[Cyclotomic]] = [None] * m
    K = None
    for k in range(m):
        b = images[k]
        if partner.get(b) == b:
            ratio = inv.eta.get((k, k), ZERO) / B.eta[(b, b)]
            if K is None:
                K = ratio
            if ratio != K:
                raise PreconditionError("self-paired elements need different scales", witness=inv.labels[k])
            scale[k] = ONE
    K = K if K is not None else ONE
    if not K:
        raise PreconditionError("pulled-back form vanishes on a self-paired element")
    for k in range(m):
        if scale[k] is not None:
            continue
        b = images[k]
        p = back[partner[b]]
        scale[k] = ONE
        val = inv.eta.get((k, p), ZERO)
        if not val:
            raise PreconditionError("pulled-back form misses a pairing of B", witness=(inv.labels[k], inv.labels[p]))
        scale[p] = val / (K * B.eta[(b, partner[b])])
    mult: Table = {}
    for (a, b), row in B.mult.items():
        ka, kb = back[a], back[b]
        out = {back[r]: c * scale[ka] * scale[kb] / scale[back[r]] for r, c in row.items()}
        mult[(ka, kb)] = out
    unit = {back[r]: c / scale[back[r]] for r, c in B.unit.items()}
    return mult, unit, scale


def images_by_ebar(inv: DualInvariants, B: FrobAlgebra) -> list[int]:
    """Match invariant basis vectors to B's basis by Ebar-degree."""
    if B.degrees is None:
        raise PreconditionError("B must be graded")
    out = []
    for _, eb in inv.bidegrees:
        hits = [i for i, q in enumerate(B.degrees) if q == eb]
        if len(hits) != 1:
            raise PreconditionError("no unique degree match", witness=str(eb))
        out.append(hits[0])
    return out


# the displayed point mod Z/n tables

@dataclass
class PointTables:
    n: int
    mult: Table
    eta: dict[tuple[int, int], Cyclotomic]
    boundary_mult: Table
    boundary_eta: dict[tuple[int, int], Cyclotomic]
    notes: list[str]

    def algebra(self) -> FrobAlgebra:
        labels = [f"1~{i}" for i in range(self.n)]
        alg = FrobAlgebra(labels, self.mult, self.eta, {0: ONE})
        alg.degrees = [Fraction(0)] * self.n
        alg.d = Fraction(0)
        alg.D = Fraction(0)
        return alg


def point_tables(n: int) -> PointTables:
    """The A-model tables on generators 1~i, i = 0..n-1.

    The row i = k = n lies outside the index range; it is kept apart with
    index n so that it can be examined on its own.
    """
    mult: Table = {}
    eta = {}
    for i in range(n):
        for k in range(n):
            if i + k <= n - 1:
                mult[(i, k)] = {i + k: ONE}
            if i + k == n - 1:
                eta[(i, k)] = ONE
    bm: Table = {(n, n): {n - 1: ONE}}
    be = {(n, n): ONE}
    return PointTables(n, mult, eta, bm, be,
                       ["row i = k = n lies outside 0..n-1 and is reported separately"])


def check_point_boundary(t: PointTables) -> Report:
    """Adjoin the boundary generator 1~n and test compatibility."""
    n = t.n
    labels = [f"1~{i}" for i in range(n + 1)]
    mult = dict(t.mult)
    mult.update(t.boundary_mult)
    eta = dict(t.eta)
    eta.update(t.boundary_eta)
    return check_invariance(labels, mult, eta, {0: ONE})


def compare_point_dual(D: BigradedModule, t: PointTables, generator: int) -> list[tuple]:
    """Entry-wise comparison of the dual's metric with the displayed one.

    The dual element labelled i is the generator of the sector generator^i;
    mismatches are returned as (i, k, dual value, displayed value).
    """
    G = D.group
    gens = []
    for i in range(t.n):
        g = G.power(generator, i)
        idx = [k for k in range(D.dim) if D.sector[k] == g]
        if len(idx) != 1:
            raise PreconditionError("point sectors must be one-dimensional", witness=G.names[g])
        gens.append(idx[0])
    out = []
    for i in range(t.n):
        for k in range(t.n):
            ours = D.pairing.get((gens[i], gens[k]), ZERO)
            shown = t.eta.get((i, k), ZERO)
            if ours != shown:
                out.append((i, k, str(ours), str(shown)))
    return out


def compare_an_action(D: BigradedModule, generator: int, sigma: int = 0) -> list[tuple]:
    """Compare the dual action on sector generators with the closed form

    (-1)^(sigma i k) zeta^i on the sector of j and (-1)^(sigma i k) elsewhere.
    Mismatches come back as (i, k, ours, closed form).
    """
    G = D.group
    N = G.order
    zeta = Cyclotomic.zeta(N)
    out = []
    for k in range(N):
        g = G.power(generator, k)
        idx = [p for p in range(D.dim) if D.sector[p] == g]
        if not idx:
            continue
        gen = idx[0]
        for i in range(N):
            h = G.power(generator, i)
            img = D.act(h, {gen: ONE})
            ours = img.get(gen, ZERO)
            sign = -1 if sigma and (i * k) % 2 else 1
            shown = (zeta ** i) * sign if k == 1 else Cyclotomic.rational(sign)
            if not sparse.equal(img, {gen: ours}) or ours != shown:
                out.append((i, k, str(ours), str(shown)))
    return out
