"""G-twisted Frobenius algebras, their Ramond spaces and operations.

A G-Frobenius algebra is stored on one global basis.  Every basis vector
lives in a single sector ``sector[i]`` (a group element index) and the
action is kept as ``phi[g][i]``, the image of basis vector i under g.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Optional, Sequence

from . import sparse
from .errors import (CharacterMismatch, DegenerateEta, GroupMismatch, Indeterminate,
                     InputSyntaxError, InvalidRamond)
from .exact import ONE, ZERO, Cyclotomic, rank, rref
from .frobenius import FrobAlgebra
from .group import FiniteGroup, ParityChoice
from .report import Report
from .textio import parse_scalar, parse_vec, scalar_text, vec_text

Vec = sparse.Vec
Table = dict[tuple[int, int], dict[int, Cyclotomic]]


@dataclass
class Sectored:
    group: FiniteGroup
    labels: list[str]
    sector: list[int]
    mult: Table
    eta: dict[tuple[int, int], Cyclotomic]
    unit: Vec
    phi: list[dict[int, Vec]]
    chi: list[Cyclotomic]
    parity: Optional[list[int]] = None
    degrees: Optional[list[Fraction]] = None
    d: Optional[Fraction] = None
    bidegrees: Optional[list[tuple[Fraction, Fraction]]] = None
    notes: list[str] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def is_super(self) -> bool:
        return self.parity is not None and any(self.parity)

    def par(self, i: int) -> int:
        return self.parity[i] % 2 if self.parity else 0

    @cached_property
    def sectors(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.group.order)]
        for i, g in enumerate(self.sector):
            out[g].append(i)
        return out

    def sector_dims(self) -> list[int]:
        return [len(s) for s in self.sectors]

    def act(self, g: int, v: Mapping[int, Cyclotomic]) -> Vec:
        out: Vec = {}
        col = self.phi[g]
        for i, x in v.items():
            img = col.get(i)
            if img:
                sparse.add_into(out, img, x)
        return out

    def mul(self, u: Mapping[int, Cyclotomic], v: Mapping[int, Cyclotomic]) -> Vec:
        out: Vec = {}
        for i, x in u.items():
            for j, y in v.items():
                row = self.mult.get((i, j))
                if row:
                    sparse.add_into(out, row, x * y)
        return out

    def pair(self, u: Mapping[int, Cyclotomic], v: Mapping[int, Cyclotomic]) -> Cyclotomic:
        acc = ZERO
        for i, x in u.items():
            for j, y in v.items():
                c = self.eta.get((i, j))
                if c:
                    acc = acc + x * y * c
        return acc

    def gram(self) -> list[list[Cyclotomic]]:
        n = self.dim
        return [[self.eta.get((i, j), ZERO) for j in range(n)] for i in range(n)]

    def gname(self, g: int) -> str:
        return self.group.names[g]

    def strace(self, op, indices: Sequence[int]) -> Cyclotomic:
        """Super-trace of the linear map op on the span of indices."""
        acc = ZERO
        for i in indices:
            c = op({i: ONE}).get(i)
            if c:
                acc = acc - c if self.par(i) else acc + c
        return acc


@dataclass
class GFrobenius(Sectored):
    def untwisted(self) -> FrobAlgebra:
        idx = self.sectors[0]
        return _frob_on(self, idx)

    def as_frobenius(self) -> FrobAlgebra:
        """Forget the group: the underlying (super) algebra."""
        return _frob_on(self, list(range(self.dim)))


@dataclass
class RamondSpace(Sectored):
    @property
    def vacuum(self) -> Vec:
        return self.unit

    @property
    def phibar(self) -> list[dict[int, Vec]]:
        return self.phi


def _frob_on(A: Sectored, idx: Sequence[int]) -> FrobAlgebra:
    pos = {i: k for k, i in enumerate(idx)}
    mult = {}
    for a in idx:
        for b in idx:
            row = A.mult.get((a, b))
            if row:
                mult[(pos[a], pos[b])] = {pos[k]: c for k, c in row.items()}
    eta = {(pos[a], pos[b]): c for (a, b), c in A.eta.items() if a in pos and b in pos}
    unit = {pos[k]: c for k, c in A.unit.items() if k in pos}
    out = FrobAlgebra([A.labels[i] for i in idx], mult, eta, unit)
    if A.parity is not None:
        out.parity = [A.par(i) for i in idx]
    if A.degrees is not None:
        u = A.degrees[min(A.unit)] if A.unit else Fraction(0)
        out.degrees = [A.degrees[i] for i in idx]
        out.d = u
        out.D = A.d - u if A.d is not None else None
    return out


def _first(gen):
    return next(gen, None)


def _structural_checks(A: Sectored, rep: Report) -> None:
    G = A.group
    n = A.dim
    rng = range(n)
    gram = A.gram()
    rk = rank(gram) if n else 0
    rep.add("eta nondegenerate", rk == n, witness=f"rank {rk} < {n}")
    bad = _first((A.labels[i], A.labels[j], A.labels[k]) for (i, j), row in A.mult.items()
                 for k in row if A.sector[k] != G.mul(A.sector[i], A.sector[j]))
    rep.add("multiplication respects grading", bad is None, witness=bad)
    bad = _first((A.labels[i], A.labels[j]) for (i, j), c in A.eta.items()
                 if c and G.mul(A.sector[i], A.sector[j]) != 0)
    rep.add("eta respects grading", bad is None, witness=bad)
    untw = A.sectors[0]
    bad = _first((A.labels[i], A.labels[j]) for i in untw for j in untw
                 if A.eta.get((i, j), ZERO) != A.eta.get((j, i), ZERO))
    rep.add("eta symmetric on A_e", bad is None, witness=bad)
    bad = _first((A.gname(g), A.labels[i]) for g in range(G.order) for i in rng
                 for k in A.phi[g].get(i, {}) if A.sector[k] != G.conj(g, A.sector[i]))
    rep.add("phi_g maps A_h to A_ghg^-1", bad is None, witness=bad)
    bad = _first(A.gname(0) for i in rng if not sparse.equal(A.phi[0].get(i, {}), {i: ONE}))
    bad = bad or _first((A.gname(g), A.gname(h), A.labels[i])
                        for g in range(G.order) for h in range(G.order) for i in rng
                        if not sparse.equal(A.act(g, A.act(h, {i: ONE})), A.act(G.mul(g, h), {i: ONE})))
    rep.add("phi is a homomorphism", bad is None, witness=bad)
    bad = _first((A.gname(g), A.gname(h)) for g in range(G.order) for h in range(G.order)
                 if A.chi[g] * A.chi[h] != A.chi[G.mul(g, h)])
    rep.add("chi is a character", bad is None and A.chi[0] == ONE, witness=bad)

    bad = None
    for i in rng:
        for j in rng:
            ab = A.mult.get((i, j))
            for k in rng:
                lhs = A.mul(ab or {}, {k: ONE})
                rhs = A.mul({i: ONE}, A.mult.get((j, k), {}))
                if not sparse.equal(lhs, rhs):
                    bad = (A.labels[i], A.labels[j], A.labels[k])
                    break
            if bad:
                break
        if bad:
            break
    rep.add("a) associativity", bad is None, witness=bad)

    bad = None
    for i in rng:
        for j in rng:
            for k in rng:
                if A.pair({i: ONE}, A.mult.get((j, k), {})) != A.pair(A.mult.get((i, j), {}), {k: ONE}):
                    bad = (A.labels[i], A.labels[j], A.labels[k])
                    break
            if bad:
                break
        if bad:
            break
    rep.add("d) invariance of the metric", bad is None, witness=bad)

    if A.parity is not None:
        bad = _first(A.labels[i] for i in A.sectors[0] if A.par(i))
        rep.add("untwisted sector even", bad is None, witness=bad)
        bad = _first((A.labels[i], A.labels[j]) for (i, j), c in A.eta.items()
                     if c and (A.par(i) + A.par(j)) % 2)
        rep.add("eta even", bad is None, witness=bad)
        bad = _first((A.labels[i], A.labels[j], A.labels[k]) for (i, j), row in A.mult.items()
                     for k in row if A.par(k) != (A.par(i) + A.par(j)) % 2)
        rep.add("multiplication even", bad is None, witness=bad)
        bad = _first((A.gname(g), A.labels[i]) for g in range(G.order) for i in rng
                     for k in A.phi[g].get(i, {}) if A.par(k) != A.par(i))
        rep.add("phi even", bad is None, witness=bad)

    if A.degrees is not None:
        deg = A.degrees
        u = deg[min(A.unit)] if A.unit else Fraction(0)
        bad = _first((A.labels[i], A.labels[j], A.labels[k]) for (i, j), row in A.mult.items()
                     for k in row if deg[k] != deg[i] + deg[j] - u)
        rep.add("multiplication homogeneous", bad is None, witness=bad)
        if A.d is not None:
            bad = _first((A.labels[i], A.labels[j]) for (i, j), c in A.eta.items()
                         if c and deg[i] + deg[j] != A.d)
            rep.add("eta homogeneous of degree d", bad is None, witness=bad)
        bad = _first((A.gname(g), A.labels[i]) for g in range(G.order) for i in rng
                     for k in A.phi[g].get(i, {}) if deg[k] != deg[i])
        rep.add("phi preserves degree", bad is None, witness=bad)


def check_gfrob(A: GFrobenius) -> Report:
    G = A.group
    rep = Report("G-Frobenius")
    rng = range(A.dim)
    _structural_checks(A, rep)

    bad = None
    for i in rng:
        for j in rng:
            g = A.sector[i]
            s = -1 if A.par(i) and A.par(j) else 1
            rhs = sparse.scale(A.mul(A.act(g, {j: ONE}), {i: ONE}), s)
            if not sparse.equal(A.mult.get((i, j), {}), rhs):
                bad = (A.labels[i], A.labels[j])
                break
        if bad:
            break
    rep.add("b) twisted commutativity", bad is None, witness=bad)

    bad = _first(A.labels[k] for k in A.unit if A.sector[k] != 0)
    bad = bad or _first(A.labels[i] for i in rng if not (
        sparse.equal(A.mul(A.unit, {i: ONE}), {i: ONE}) and sparse.equal(A.mul({i: ONE}, A.unit), {i: ONE})))
    bad = bad or _first(A.gname(g) for g in range(G.order) if not sparse.equal(A.act(g, A.unit), A.unit))
    rep.add("c) G-invariant unit", bad is None, witness=bad)

    bad = _first((A.gname(g), A.labels[i]) for g in range(G.order) for i in A.sectors[g]
                 if not sparse.equal(A.act(g, {i: ONE}), {i: A.chi[g].inverse()}))
    rep.add("i) phi_g on A_g is chi_g^-1", bad is None, witness=bad)

    bad = None
    for k in range(G.order):
        for i in rng:
            for j in rng:
                lhs = A.act(k, A.mult.get((i, j), {}))
                rhs = A.mul(A.act(k, {i: ONE}), A.act(k, {j: ONE}))
                if not sparse.equal(lhs, rhs):
                    bad = (A.gname(k), A.labels[i], A.labels[j])
                    break
            if bad:
                break
        if bad:
            break
    rep.add("ii) G-invariance of the multiplication", bad is None, witness=bad)

    bad = None
    for g in range(G.order):
        c2 = (A.chi[g] * A.chi[g]).inverse()
        for i in rng:
            for j in rng:
                if A.pair(A.act(g, {i: ONE}), A.act(g, {j: ONE})) != c2 * A.eta.get((i, j), ZERO):
                    bad = (A.gname(g), A.labels[i], A.labels[j])
                    break
            if bad:
                break
        if bad:
            break
    rep.add("iii) projective invariance of the metric", bad is None, witness=bad)

    bad = _trace_axiom(A)
    rep.add("iv) projective trace axiom" if not A.is_super else "iv) projective super-trace axiom",
            bad is None, witness=bad)
    return rep


def _trace_axiom(A: GFrobenius):
    G = A.group
    for g in range(G.order):
        ginv = G.inv[g]
        for h in range(G.order):
            for c in A.sectors[G.commutator(g, h)]:
                lhs = A.chi[h] * A.strace(lambda v: A.mul({c: ONE}, A.act(h, v)), A.sectors[g])
                rhs = A.chi[ginv] * A.strace(lambda v: A.act(ginv, A.mul({c: ONE}, v)), A.sectors[h])
                if lhs != rhs:
                    return (A.gname(g), A.gname(h), A.labels[c], str(lhs), str(rhs))
    return None


def trace_pairs(A: GFrobenius) -> dict[tuple[int, int, int], tuple[Cyclotomic, Cyclotomic]]:
    """Both sides of the trace axiom for every (g, h, c)."""
    G = A.group
    out = {}
    for g in range(G.order):
        ginv = G.inv[g]
        for h in range(G.order):
            for c in A.sectors[G.commutator(g, h)]:
                lhs = A.chi[h] * A.strace(lambda v: A.mul({c: ONE}, A.act(h, v)), A.sectors[g])
                rhs = A.chi[ginv] * A.strace(lambda v: A.act(ginv, A.mul({c: ONE}, v)), A.sectors[h])
                out[(g, h, c)] = (lhs, rhs)
    return out


@dataclass
class ChiCandidate:
    g: int
    chi: Optional[Cyclotomic]
    chi_squared: Optional[Cyclotomic]
    sign_ambiguous: bool


def chi_from_phi(A: GFrobenius, strict: bool = True) -> list[ChiCandidate]:
    """Recover chi from the action: sdim A_g = chi_g STr(phi_g | A_e), and
    chi_g^-2 = eps(phi_g(rho)) which fixes chi_g only up to sign."""
    G = A.group
    e_idx = A.sectors[0]
    Ae = A.untwisted()
    from .frobenius import counit_rho

    _, rho_local = counit_rho(Ae)
    rho = {e_idx[k]: c for k, c in rho_local.items()}
    out = []
    for g in range(G.order):
        tr = A.strace(lambda v: A.act(g, v), e_idx)
        sdim = sum((-1 if A.par(i) else 1) for i in A.sectors[g])
        eps = A.pair(A.act(g, rho), A.unit)
        chi2 = eps.inverse() if eps else None
        if tr:
            chi = Cyclotomic.coerce(sdim) / tr
        elif sdim == 0:
            if strict:
                raise Indeterminate(f"trace of phi_{A.gname(g)} on A_e vanishes and A_g is empty",
                                    witness=A.gname(g))
            chi = None
        else:
            chi = None
        out.append(ChiCandidate(g, chi, chi2, chi is None and chi2 is not None))
    return out


@dataclass
class Invariants:
    basis: list[Vec]
    algebra: FrobAlgebra
    criterion: Cyclotomic
    frobenius: bool


def invariants(A: GFrobenius) -> Invariants:
    """The G-invariant subalgebra; the metric is kept exactly when
    sum_g chi_g^-2 = |G|."""
    G = A.group
    gens = G.generators
    # group basis indices into blocks closed under the action
    key = {}
    for i in range(A.dim):
        orbit = min(G.conj(k, A.sector[i]) for k in range(G.order))
        key[i] = (orbit,
                  A.degrees[i] if A.degrees is not None else 0,
                  A.par(i))
    blocks: dict = {}
    for i in range(A.dim):
        blocks.setdefault(key[i], []).append(i)
    basis: list[Vec] = []
    leads: list[int] = []
    for k in sorted(blocks, key=lambda t: (t[1], t[0], t[2])):
        idx = blocks[k]
        pos = {i: p for p, i in enumerate(idx)}
        rows = []
        for s in gens:
            mat = [[ZERO] * len(idx) for _ in idx]
            for p, i in enumerate(idx):
                img = A.act(s, {i: ONE})
                for r, c in img.items():
                    mat[pos[r]][p] = mat[pos[r]][p] + c
                mat[p][p] = mat[p][p] - ONE
            rows.extend(mat)
        for vec, lead in _kernel_basis(rows, idx):
            basis.append(vec)
            leads.append(lead)

    def coords(w: Vec) -> Vec:
        return {k: w[l] for k, l in enumerate(leads) if l in w}

    m = len(basis)
    mult = {}
    for a in range(m):
        for b in range(m):
            w = coords(A.mul(basis[a], basis[b]))
            if w:
                mult[(a, b)] = w
    crit = ZERO
    for g in range(G.order):
        crit = crit + (A.chi[g] * A.chi[g]).inverse()
    frob = crit == G.order
    eta = {}
    if frob:
        for a in range(m):
            for b in range(m):
                c = A.pair(basis[a], basis[b])
                if c:
                    eta[(a, b)] = c
    labels = [_vec_label(A, v) for v in basis]
    alg = FrobAlgebra(labels, mult, eta, coords(A.unit))
    if A.parity is not None:
        alg.parity = [A.par(l) for l in leads]
    if A.degrees is not None:
        u = A.degrees[min(A.unit)]
        alg.degrees = [A.degrees[l] for l in leads]
        alg.d = u
        alg.D = A.d - u if A.d is not None else None
    if frob and m and rank(alg.gram()) < m:
        raise DegenerateEta("restricted metric is degenerate", witness=rank(alg.gram()))
    if not frob:
        alg.notes.append(f"sum of chi^-2 is {crit}, not {G.order}: no invariant metric")
    return Invariants(basis, alg, crit, frob)


def _kernel_basis(rows, idx: Sequence[int]) -> list[tuple[Vec, int]]:
    """Kernel vectors normalised to 1 on their own free column."""
    n = len(idx)
    if not rows:
        return [({idx[p]: ONE}, idx[p]) for p in range(n)]
    m, pivots = rref(rows)
    out = []
    for f in (c for c in range(n) if c not in pivots):
        vec = {idx[f]: ONE}
        for r, p in enumerate(pivots):
            if m[r][f]:
                vec[idx[p]] = -m[r][f]
        out.append((vec, idx[f]))
    return out


def _vec_label(A: Sectored, v: Vec) -> str:
    parts = []
    for i, c in sorted(v.items()):
        parts.append(A.labels[i] if c == ONE else f"{c}*{A.labels[i]}")
    return "+".join(parts)


# Ramond spaces

def ramond(A: GFrobenius) -> RamondSpace:
    """Twist the action by chi and shift degrees by -d/2."""
    G = A.group
    phi = [{i: sparse.scale(img, A.chi[g]) for i, img in A.phi[g].items()} for g in range(G.order)]
    V = RamondSpace(A.group, list(A.labels), list(A.sector), A.mult, A.eta, dict(A.unit), phi,
                    list(A.chi), A.parity, A.degrees, A.d, A.bidegrees, list(A.notes))
    if A.degrees is not None and A.d is not None:
        h = A.d / 2
        V.degrees = [x - h for x in A.degrees]
        if A.bidegrees is not None:
            V.bidegrees = [(a - h, b - h) for a, b in A.bidegrees]
    return V


def check_ramond(V: RamondSpace) -> Report:
    G = V.group
    rep = Report("Ramond G-algebra")
    rng = range(V.dim)
    _structural_checks(_ramond_view(V), rep)

    bad = None
    for i in rng:
        for j in rng:
            g = V.sector[i]
            s = -1 if V.par(i) and V.par(j) else 1
            lhs = V.mult.get((i, j), {})
            mid = sparse.scale(V.mul(V.act(g, {j: ONE}), {i: ONE}), V.chi[g].inverse() * s)
            right = sparse.scale(V.act(g, V.mult.get((j, i), {})), s)
            if not (sparse.equal(lhs, mid) and sparse.equal(lhs, right)):
                bad = (V.labels[i], V.labels[j])
                break
        if bad:
            break
    rep.add("b') projective twisted commutativity", bad is None, witness=bad)

    bad = _first(V.labels[k] for k in V.unit if V.sector[k] != 0)
    bad = bad or _first(V.labels[i] for i in rng if not (
        sparse.equal(V.mul(V.unit, {i: ONE}), {i: ONE}) and sparse.equal(V.mul({i: ONE}, V.unit), {i: ONE})))
    bad = bad or _first(V.gname(g) for g in range(G.order)
                        if not sparse.equal(V.act(g, V.unit), sparse.scale(V.unit, V.chi[g])))
    rep.add("c') projectively invariant unit", bad is None, witness=bad)

    bad = _first((V.gname(g), V.labels[i]) for g in range(G.order) for i in V.sectors[g]
                 if not sparse.equal(V.act(g, {i: ONE}), {i: ONE}))
    rep.add("1') self-invariance of the twisted sectors", bad is None, witness=bad)

    bad = None
    for k in range(G.order):
        ck = V.chi[k].inverse()
        for i in rng:
            for j in rng:
                lhs = V.act(k, V.mult.get((i, j), {}))
                rhs = sparse.scale(V.mul(V.act(k, {i: ONE}), V.act(k, {j: ONE})), ck)
                if not sparse.equal(lhs, rhs):
                    bad = (V.gname(k), V.labels[i], V.labels[j])
                    break
            if bad:
                break
        if bad:
            break
    rep.add("2') projective invariance of the multiplication", bad is None, witness=bad)

    bad = _first((V.gname(g), V.labels[i], V.labels[j]) for g in range(G.order)
                 for i in rng for j in rng
                 if V.pair(V.act(g, {i: ONE}), V.act(g, {j: ONE})) != V.eta.get((i, j), ZERO))
    rep.add("3') invariance of the metric", bad is None, witness=bad)

    bad = None
    for g in range(G.order):
        ginv = G.inv[g]
        for h in range(G.order):
            for c in V.sectors[G.commutator(g, h)]:
                lhs = V.strace(lambda v: V.mul({c: ONE}, V.act(h, v)), V.sectors[g])
                rhs = V.strace(lambda v: V.act(ginv, V.mul({c: ONE}, v)), V.sectors[h])
                if lhs != rhs:
                    bad = (V.gname(g), V.gname(h), V.labels[c])
                    break
            if bad:
                break
        if bad:
            break
    rep.add("4') trace axiom", bad is None, witness=bad)
    return rep


def _ramond_view(V: RamondSpace) -> Sectored:
    """V with the degree shift undone, so the shared graded checks apply."""
    if V.degrees is None or V.d is None:
        return V
    h = V.d / 2
    return replace(V, degrees=[x + h for x in V.degrees])


def unramond(V: RamondSpace) -> GFrobenius:
    rep = check_ramond(V)
    bad = rep.first_failure()
    if bad is not None:
        raise InvalidRamond(f"not a Ramond G-algebra: {bad.name}", witness=bad.witness)
    G = V.group
    phi = [{i: sparse.scale(img, V.chi[g].inverse()) for i, img in V.phi[g].items()}
           for g in range(G.order)]
    A = GFrobenius(V.group, list(V.labels), list(V.sector), V.mult, V.eta, dict(V.unit), phi,
                   list(V.chi), V.parity, V.degrees, V.d, V.bidegrees, list(V.notes))
    if V.degrees is not None and V.d is not None:
        h = V.d / 2
        A.degrees = [x + h for x in V.degrees]
        if V.bidegrees is not None:
            A.bidegrees = [(a + h, b + h) for a, b in V.bidegrees]
    return A


# operations

def _reindex(A: Sectored, idx: Sequence[int], group: FiniteGroup, gmap: dict[int, int],
             elems: Sequence[int]) -> GFrobenius:
    pos = {i: k for k, i in enumerate(idx)}
    mult = {}
    for a in idx:
        for b in idx:
            row = A.mult.get((a, b))
            if row:
                mult[(pos[a], pos[b])] = {pos[k]: c for k, c in row.items()}
    eta = {(pos[a], pos[b]): c for (a, b), c in A.eta.items() if a in pos and b in pos}
    phi = [{pos[i]: {pos[k]: c for k, c in A.phi[g].get(i, {}).items()} for i in idx}
           for g in elems]
    out = GFrobenius(group, [A.labels[i] for i in idx], [gmap[A.sector[i]] for i in idx], mult, eta,
                     {pos[k]: c for k, c in A.unit.items()}, phi, [A.chi[g] for g in elems])
    if A.parity is not None:
        out.parity = [A.par(i) for i in idx]
    if A.degrees is not None:
        out.degrees = [A.degrees[i] for i in idx]
        out.d = A.d
    if A.bidegrees is not None:
        out.bidegrees = [A.bidegrees[i] for i in idx]
    return out


def restrict(A: GFrobenius, H: Sequence[int]) -> GFrobenius:
    sub, emb = A.group.subgroup(H)
    gmap = {g: k for k, g in enumerate(emb)}
    idx = [i for i in range(A.dim) if A.sector[i] in gmap]
    return _reindex(A, idx, sub, gmap, emb)


def _same_group(A: Sectored, B: Sectored) -> None:
    if not A.group.same_as(B.group):
        raise GroupMismatch("algebras are graded by different groups",
                            witness=(A.group.order, B.group.order))


def gf_direct_sum(A: GFrobenius, B: GFrobenius) -> GFrobenius:
    _same_group(A, B)
    n1 = A.dim
    shift = lambda v: {k + n1: c for k, c in v.items()}  # noqa: E731
    mult = {k: dict(v) for k, v in A.mult.items()}
    mult.update({(i + n1, j + n1): shift(row) for (i, j), row in B.mult.items()})
    eta = dict(A.eta)
    eta.update({(i + n1, j + n1): c for (i, j), c in B.eta.items()})
    phi = []
    for g in range(A.group.order):
        col = {i: dict(v) for i, v in A.phi[g].items()}
        col.update({i + n1: shift(v) for i, v in B.phi[g].items()})
        phi.append(col)
    unit = dict(A.unit)
    unit.update(shift(B.unit))
    out = GFrobenius(A.group, [f"{x}'" for x in A.labels] + [f"{x}''" for x in B.labels],
                     list(A.sector) + list(B.sector), mult, eta, unit, phi, list(A.chi))
    if A.parity is not None or B.parity is not None:
        out.parity = [A.par(i) for i in range(n1)] + [B.par(i) for i in range(B.dim)]
    if A.degrees is not None and B.degrees is not None and A.d == B.d:
        out.degrees = list(A.degrees) + list(B.degrees)
        out.d = A.d
    if any(a != b for a, b in zip(A.chi, B.chi)):
        out.notes.append("summands carry different characters; the first one is kept")
    return out


def gf_tensor(A: GFrobenius, B: GFrobenius) -> GFrobenius:
    """Tensor product restricted to the diagonal of G x G."""
    _same_group(A, B)
    G = A.group
    pairs = [(i, j) for g in range(G.order) for i in A.sectors[g] for j in B.sectors[g]]
    pos = {p: k for k, p in enumerate(pairs)}
    mult: Table = {}
    eta = {}
    for (a1, a2) in pairs:
        for (b1, b2) in pairs:
            s = -1 if B.par(a2) and A.par(b1) else 1
            r1, r2 = A.mult.get((a1, b1)), B.mult.get((a2, b2))
            if r1 and r2:
                mult[(pos[(a1, a2)], pos[(b1, b2)])] = {
                    pos[(k1, k2)]: c1 * c2 * s for k1, c1 in r1.items() for k2, c2 in r2.items()}
            e1, e2 = A.eta.get((a1, b1)), B.eta.get((a2, b2))
            if e1 and e2:
                eta[(pos[(a1, a2)], pos[(b1, b2)])] = e1 * e2 * s
    phi = []
    for g in range(G.order):
        col = {}
        for (a1, a2) in pairs:
            col[pos[(a1, a2)]] = {pos[(k1, k2)]: c1 * c2
                                  for k1, c1 in A.phi[g].get(a1, {}).items()
                                  for k2, c2 in B.phi[g].get(a2, {}).items()}
        phi.append(col)
    unit = {pos[(i, j)]: x * y for i, x in A.unit.items() for j, y in B.unit.items()}
    out = GFrobenius(G, [f"{A.labels[i]}@{B.labels[j]}" for i, j in pairs],
                     [A.sector[i] for i, _ in pairs], mult, eta, unit, phi,
                     [x * y for x, y in zip(A.chi, B.chi)])
    if A.parity is not None or B.parity is not None:
        out.parity = [(A.par(i) + B.par(j)) % 2 for i, j in pairs]
    if A.degrees is not None and B.degrees is not None:
        out.degrees = [A.degrees[i] + B.degrees[j] for i, j in pairs]
        out.d = A.d + B.d if A.d is not None and B.d is not None else None
    return out


def braided_tensor(A: GFrobenius, B: GFrobenius) -> GFrobenius:
    """Braided tensor product.  No metric is attached (eta is empty)."""
    _same_group(A, B)
    if any(a != b for a, b in zip(A.chi, B.chi)):
        raise CharacterMismatch("braided tensor product needs equal characters",
                                witness=next(g for g in range(A.group.order) if A.chi[g] != B.chi[g]))
    G = A.group
    pairs = [(i, j) for i in range(A.dim) for j in range(B.dim)]
    pos = {p: k for k, p in enumerate(pairs)}
    mult: Table = {}
    for (a1, b1) in pairs:
        s_b = B.sector[b1]
        for (a2, b2) in pairs:
            sign = -1 if B.par(b1) and A.par(a2) else 1
            left = A.mul({a1: ONE}, A.act(s_b, {a2: ONE}))
            right = B.mult.get((b1, b2))
            if left and right:
                mult[(pos[(a1, b1)], pos[(a2, b2)])] = {
                    pos[(k1, k2)]: c1 * c2 * sign for k1, c1 in left.items() for k2, c2 in right.items()}
    phi = []
    for h in range(G.order):
        col = {}
        for (a, b) in pairs:
            k = A.sector[a]
            kh = G.mul(k, G.inv[h])
            col[pos[(a, b)]] = {pos[(k1, k2)]: c1 * c2
                                for k1, c1 in A.phi[k].get(a, {}).items()
                                for k2, c2 in B.phi[kh].get(b, {}).items()}
        phi.append(col)
    unit = {pos[(i, j)]: x * y for i, x in A.unit.items() for j, y in B.unit.items()}
    out = GFrobenius(G, [f"{A.labels[i]}@{B.labels[j]}" for i, j in pairs],
                     [G.mul(A.sector[i], B.sector[j]) for i, j in pairs], mult, {}, unit, phi,
                     list(A.chi))
    if A.parity is not None or B.parity is not None:
        out.parity = [(A.par(i) + B.par(j)) % 2 for i, j in pairs]
    if A.degrees is not None and B.degrees is not None:
        out.degrees = [A.degrees[i] + B.degrees[j] for i, j in pairs]
    out.notes.append("no metric: eta, unit axioms beyond associativity and the trace axiom are untested")
    return out


def check_braided(T: GFrobenius) -> Report:
    """The checks that make sense without a metric."""
    G = T.group
    rep = Report("braided tensor")
    rng = range(T.dim)
    bad = _first((T.labels[i], T.labels[j], T.labels[k]) for (i, j), row in T.mult.items()
                 for k in row if T.sector[k] != G.mul(T.sector[i], T.sector[j]))
    rep.add("multiplication respects grading", bad is None, witness=bad)
    bad = None
    for i in rng:
        for j in rng:
            ab = T.mult.get((i, j), {})
            for k in rng:
                if not sparse.equal(T.mul(ab, {k: ONE}), T.mul({i: ONE}, T.mult.get((j, k), {}))):
                    bad = (T.labels[i], T.labels[j], T.labels[k])
                    break
            if bad:
                break
        if bad:
            break
    rep.add("associativity", bad is None, witness=bad)
    bad = _first(T.labels[i] for i in rng if not (
        sparse.equal(T.mul(T.unit, {i: ONE}), {i: ONE}) and sparse.equal(T.mul({i: ONE}, T.unit), {i: ONE})))
    rep.add("unit", bad is None, witness=bad)
    return rep


# small builders

def group_algebra(G: FiniteGroup, parity: Optional[ParityChoice] = None) -> GFrobenius:
    """k[G] for abelian G as a G-Frobenius algebra, one line per sector.

    With a parity homomorphism sigma the sector 1_g has parity sigma(g),
    chi_g = (-1)^sigma(g) and phi_g(1_h) = (-1)^(sigma(g) sigma(h)) 1_h.
    """
    if not G.is_abelian():
        raise ValueError("group_algebra needs an abelian group")
    n = G.order
    sig = [parity(g) % 2 if parity is not None else 0 for g in range(n)]
    mult = {(a, b): {G.mul(a, b): ONE} for a in range(n) for b in range(n)}
    eta = {(a, G.inv[a]): ONE for a in range(n)}
    phi = [{h: {h: Cyclotomic.rational(-1 if sig[g] and sig[h] else 1)} for h in range(n)}
           for g in range(n)]
    chi = [Cyclotomic.rational(-1 if s else 1) for s in sig]
    out = GFrobenius(G, [f"1_{G.names[g]}" for g in range(n)], list(range(n)), mult, eta, {0: ONE},
                     phi, chi)
    if parity is not None:
        out.parity = sig
    out.degrees = [Fraction(0)] * n
    out.d = Fraction(0)
    return out


def trivial_group_algebra(A: FrobAlgebra) -> GFrobenius:
    """A plain Frobenius algebra as a G-Frobenius algebra for G = {e}."""
    G = FiniteGroup([[0]], ["e"])
    n = A.dim
    out = GFrobenius(G, list(A.labels), [0] * n, A.mult, A.eta, dict(A.unit),
                     [{i: {i: ONE} for i in range(n)}], [ONE], A.parity)
    if A.graded:
        out.degrees = list(A.degrees)
        out.d = A.d + A.D
    return out


DUMP_HEADER = "# orbfrob gfrobenius dump v1"


def dump(A: Sectored) -> str:
    kind = "ramond" if isinstance(A, RamondSpace) else "gfrobenius"
    lines = [DUMP_HEADER, f"kind {kind}", f"group {A.group.order}",
             "names " + " ".join(A.group.names)]
    lines.extend("table " + " ".join(str(x) for x in row) for row in A.group.table)
    lines += [f"dim {A.dim}",
             "labels " + " ".join(A.labels),
             "sector " + " ".join(str(g) for g in A.sector),
             "chi " + " ".join(scalar_text(c) for c in A.chi)]
    if A.degrees is not None:
        lines.append(f"d {A.d}")
        lines.append("degrees " + " ".join(str(x) for x in A.degrees))
    if A.bidegrees is not None:
        lines.append("bidegrees " + " ".join(f"{a},{b}" for a, b in A.bidegrees))
    if A.parity is not None:
        lines.append("parity " + " ".join(str(A.par(i)) for i in range(A.dim)))
    lines.append("unit " + vec_text(A.unit))
    for (i, j) in sorted(A.mult):
        for k, c in sorted(A.mult[(i, j)].items()):
            lines.append(f"mult {i} {j} {k} {scalar_text(c)}")
    for (i, j), c in sorted(A.eta.items()):
        lines.append(f"eta {i} {j} {scalar_text(c)}")
    for g in range(A.group.order):
        for i in sorted(A.phi[g]):
            for k, c in sorted(A.phi[g][i].items()):
                lines.append(f"phi {g} {i} {k} {scalar_text(c)}")
    return "\n".join(lines) + "\n"


def load(text: str) -> Sectored:
    """Inverse of dump.  Unknown keys and malformed rows raise InputSyntaxError.

    Reading stops at the header of a following section, such as the
    cocycle dump that build appends.
    """
    lines = text.splitlines()
    if not lines or lines[0].strip() != DUMP_HEADER:
        raise InputSyntaxError(f"expected header {DUMP_HEADER!r}", 1, 1)
    names: list[str] = []
    table: list[list[int]] = []
    fields: dict = {"mult": {}, "eta": {}, "phi_rows": []}
    order = dim = None
    kind = "gfrobenius"
    for ln, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if line.startswith("# orbfrob "):
            break
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(" ")
        items = rest.split()
        col = len(key) + 2
        try:
            if key == "kind":
                if rest not in ("gfrobenius", "ramond"):
                    raise InputSyntaxError(f"unknown kind {rest!r}", ln, col)
                kind = rest
            elif key == "group":
                order = int(rest)
            elif key == "names":
                names = items
            elif key == "table":
                table.append([int(x) for x in items])
            elif key == "dim":
                dim = int(rest)
            elif key == "labels":
                fields["labels"] = items
            elif key == "sector":
                fields["sector"] = [int(x) for x in items]
            elif key == "chi":
                fields["chi"] = [parse_scalar(x, ln, col) for x in items]
            elif key == "d":
                fields["d"] = None if rest == "None" else Fraction(rest)
            elif key == "degrees":
                fields["degrees"] = [Fraction(x) for x in items]
            elif key == "bidegrees":
                fields["bidegrees"] = [tuple(Fraction(y) for y in x.split(",")) for x in items]
            elif key == "parity":
                fields["parity"] = [int(x) for x in items]
            elif key == "unit":
                fields["unit"] = parse_vec(rest, ln, col)
            elif key == "mult":
                i, j, k, c = items
                val = parse_scalar(c, ln, col)
                if val:
                    fields["mult"].setdefault((int(i), int(j)), {})[int(k)] = val
            elif key == "eta":
                i, j, c = items
                val = parse_scalar(c, ln, col)
                if val:
                    fields["eta"][(int(i), int(j))] = val
            elif key == "phi":
                g, i, k, c = items
                fields["phi_rows"].append((int(g), int(i), int(k), parse_scalar(c, ln, col)))
            else:
                raise InputSyntaxError(f"unknown key {key!r}", ln, 1)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputSyntaxError(f"malformed {key!r} row: {exc}", ln, col) from None
    if order is None or dim is None or len(table) != order:
        raise InputSyntaxError("missing group, table or dim", len(lines), 1)
    for key in ("labels", "sector", "chi", "unit"):
        if key not in fields:
            raise InputSyntaxError(f"missing {key!r}", len(lines), 1)
    if len(fields["labels"]) != dim or len(fields["sector"]) != dim or len(fields["chi"]) != order:
        raise InputSyntaxError("row lengths do not match dim/group", len(lines), 1)
    phi: list[dict[int, Vec]] = [{} for _ in range(order)]
    for g, i, k, c in fields.pop("phi_rows"):
        if not (0 <= g < order):
            raise InputSyntaxError(f"phi group index {g} out of range", len(lines), 1)
        if c:
            phi[g].setdefault(i, {})[k] = c
    G = FiniteGroup(table, names or None)
    cls = RamondSpace if kind == "ramond" else GFrobenius
    return cls(group=G, phi=phi, **fields)
