"""Finite linear groups, per-element eigen data, parities and discrete torsion."""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Optional, Sequence

from .errors import FieldTooSmall, NotFinite, NotSubgroup, PreconditionError
from .exact import ONE, ZERO, Cyclotomic, lcm
from .exact.linalg import Matrix, as_matrix, det, identity, matmul, nullspace, rank

MatrixKey = tuple[tuple[Cyclotomic, ...], ...]

DEFAULT_GROUP_BOUND = 1024


def group_bound() -> int:
    return int(os.environ.get("ORBFROB_MAX_GROUP", DEFAULT_GROUP_BOUND))


class FiniteGroup:
    """A finite group given by its multiplication table; element 0 is e."""

    def __init__(self, table: Sequence[Sequence[int]], names: Optional[Sequence[str]] = None):
        self.table = [list(row) for row in table]
        self.order = len(self.table)
        self.names = list(names) if names else [f"g{i}" for i in range(self.order)]
        if any(self.table[0][i] != i or self.table[i][0] != i for i in range(self.order)):
            raise PreconditionError("element 0 must be the identity")
        self.inv = [next(j for j in range(self.order) if self.table[i][j] == 0) for i in range(self.order)]

    e = 0

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def conj(self, k: int, g: int) -> int:
        """k g k^-1."""
        return self.table[self.table[k][g]][self.inv[k]]

    def commutator(self, g: int, h: int) -> int:
        """[g,h] = g h g^-1 h^-1."""
        t = self.table
        return t[t[t[g][h]][self.inv[g]]][self.inv[h]]

    def commutes(self, g: int, h: int) -> bool:
        return self.table[g][h] == self.table[h][g]

    def power(self, g: int, k: int) -> int:
        r = 0
        base = g if k >= 0 else self.inv[g]
        for _ in range(abs(k)):
            r = self.table[r][base]
        return r

    def element_order(self, g: int) -> int:
        k, r = 1, g
        while r != 0:
            r = self.table[r][g]
            k += 1
        return k

    def is_abelian(self) -> bool:
        return all(self.commutes(a, b) for a in range(self.order) for b in range(a))

    def is_associative(self) -> bool:
        t = self.table
        n = self.order
        return all(t[t[a][b]][c] == t[a][t[b][c]] for a in range(n) for b in range(n) for c in range(n))

    def generated_subgroup(self, gens: Sequence[int]) -> list[int]:
        seen = [0]
        known = {0}
        i = 0
        while i < len(seen):
            for s in gens:
                x = self.table[seen[i]][s]
                if x not in known:
                    known.add(x)
                    seen.append(x)
            i += 1
        return seen

    @cached_property
    def generators(self) -> list[int]:
        """A small generating set, greedy in element order."""
        gens: list[int] = []
        span = {0}
        for g in range(1, self.order):
            if g not in span:
                gens.append(g)
                span = set(self.generated_subgroup(gens))
        return gens

    def is_subgroup(self, elems: Sequence[int]) -> bool:
        s = set(elems)
        return 0 in s and all(self.table[a][b] in s for a in s for b in s)


    def subgroup(self, elems: Sequence[int]) -> tuple["FiniteGroup", list[int]]:
        """The subgroup on elems as its own group, with the embedding list."""
        if not self.is_subgroup(elems):
            raise NotSubgroup("elements are not closed under multiplication", witness=sorted(set(elems)))
        emb = [0] + sorted(set(elems) - {0})
        pos = {g: i for i, g in enumerate(emb)}
        table = [[pos[self.table[a][b]] for b in emb] for a in emb]
        return FiniteGroup(table, [self.names[g] for g in emb]), emb

    def same_as(self, other: "FiniteGroup") -> bool:
        return self.table == other.table


def cyclic_group(n: int, name: str = "j") -> FiniteGroup:
    names = ["e"] + [name if k == 1 else f"{name}^{k}" for k in range(1, n)]
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], names)


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    pairs = [(a, b) for a in range(G.order) for b in range(H.order)]
    pos = {p: i for i, p in enumerate(pairs)}
    table = [[pos[(G.table[a][c], H.table[b][d])] for (c, d) in pairs] for (a, b) in pairs]
    return FiniteGroup(table, [f"({G.names[a]},{H.names[b]})" for a, b in pairs])


class MatrixGroup(FiniteGroup):
    def __init__(self, n: int, matrices: list[Matrix], gens: list[int], field_order: int,
                 names: Optional[Sequence[str]] = None):
        keys = [_key(m) for m in matrices]
        index = {k: i for i, k in enumerate(keys)}
        table = [[index[_key(matmul(a, b))] for b in matrices] for a in matrices]
        super().__init__(table, names)
        self.n = n
        self.elements = matrices
        self.gen_indices = gens
        self.field_order = field_order
        self.index = index

    def find(self, m: Matrix) -> Optional[int]:
        return self.index.get(_key(_lift_matrix(as_matrix(m), self.field_order)))

    def det(self, g: int) -> Cyclotomic:
        return det(self.elements[g])

    @cached_property
    def exponent(self) -> int:
        out = 1
        for g in range(self.order):
            out = lcm(out, self.element_order(g))
        return out


def _key(m: Matrix) -> MatrixKey:
    return tuple(tuple(row) for row in m)


def _lift_matrix(m: Matrix, order: int) -> Matrix:
    return [[x.lift(lcm(order, x.order)) if x.order != order else x for x in row] for row in m]


def _field_order(mats: Sequence[Matrix]) -> int:
    M = 1
    for m in mats:
        for row in m:
            for x in row:
                M = lcm(M, x.order)
    return M


def generate_group(gens: Sequence[Sequence[Sequence]], bound: Optional[int] = None,
                   name: str = "j") -> MatrixGroup:
    """Breadth-first closure of the generators (identity first).

    A single generator yields elements named e, j, j^2, ... in power order;
    otherwise elements are named e, g1, g2, ... in discovery order.
    """
    bound = bound or group_bound()
    mats = [as_matrix(g) for g in gens]
    if not mats:
        raise PreconditionError("at least one generator is required")
    n = len(mats[0])
    if any(len(m) != n or any(len(r) != n for r in m) for m in mats):
        raise PreconditionError("generators must be square of equal size")
    M = _field_order(mats)
    mats = [_lift_matrix(m, M) for m in mats]
    ident = _lift_matrix(identity(n), M)
    elements = [ident]
    seen = {_key(ident): 0}
    i = 0
    while i < len(elements):
        for m in mats:
            p = matmul(elements[i], m)
            k = _key(p)
            if k not in seen:
                seen[k] = len(elements)
                elements.append(p)
                if len(elements) > bound:
                    raise NotFinite(f"closure exceeds {bound} elements", witness=len(elements))
        i += 1
    gen_idx = [seen[_key(m)] for m in mats]
    if len(mats) == 1:
        names = ["e"] + [name if k == 1 else f"{name}^{k}" for k in range(1, len(elements))]
    else:
        names = ["e"] + [f"g{k}" for k in range(1, len(elements))]
    return MatrixGroup(n, elements, gen_idx, M, names)


def elements_index(elements: list[Matrix], m: Matrix) -> int:
    k = _key(m)
    return next(i for i, e in enumerate(elements) if _key(e) == k)


@dataclass(frozen=True)
class GroupElementData:
    index: int
    fixed_vars: tuple[int, ...]  # T_g (diagonal elements: variable indices)
    moved_vars: tuple[int, ...]  # N_g
    eigen_args: tuple[Fraction, ...]
    det: Cyclotomic
    diagonal: bool
    fixed_basis: tuple[tuple[Cyclotomic, ...], ...]  # columns spanning the fixed space
    projector: tuple[tuple[Cyclotomic, ...], ...]  # onto the fixed space along the other eigenspaces

    @property
    def n_moved(self) -> int:
        return len(self.eigen_args) - len(self.fixed_basis)


def _is_diagonal(m: Matrix) -> bool:
    return all(not m[i][j] for i in range(len(m)) for j in range(len(m)) if i != j)


def element_data(G: MatrixGroup, g: int) -> GroupElementData:
    m = G.elements[g]
    n = G.n
    order = G.element_order(g)
    if _is_diagonal(m):
        args = []
        for i in range(n):
            a = m[i][i].root_of_unity_arg()
            if a is None:
                raise FieldTooSmall(f"diagonal entry {m[i][i]} is not a root of unity", witness=(g, i))
            args.append(a)
        fixed = tuple(i for i in range(n) if args[i] == 0)
        moved = tuple(i for i in range(n) if args[i] != 0)
        basis = tuple(tuple(ONE if r == i else ZERO for r in range(n)) for i in fixed)
        proj = tuple(tuple(ONE if (r == c and r in fixed) else ZERO for c in range(n)) for r in range(n))
        return GroupElementData(g, fixed, moved, tuple(args), det(m), True, basis, proj)
    # general case: eigenvalues are order-th roots of unity
    args: list[Fraction] = []
    for k in range(order):
        lam = Cyclotomic.zeta(order, k)
        shifted = [[m[i][j] - (lam if i == j else ZERO) for j in range(n)] for i in range(n)]
        mult = n - rank(shifted)
        args.extend([Fraction(k, order)] * mult)
    if len(args) != n:
        raise FieldTooSmall("matrix is not diagonalisable over the ambient field", witness=g)
    fixed_cols = nullspace([[m[i][j] - (ONE if i == j else ZERO) for j in range(n)] for i in range(n)])
    # averaging projector onto the fixed space
    acc = [[ZERO] * n for _ in range(n)]
    p = identity(n)
    for _ in range(order):
        acc = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(acc, p)]
        p = matmul(p, m)
    proj = tuple(tuple(x / order for x in row) for row in acc)
    nfix = len(fixed_cols)
    return GroupElementData(
        g, tuple(range(nfix)), tuple(range(nfix, n)), tuple(args), det(m), False,
        tuple(tuple(c) for c in fixed_cols), proj,
    )


def restricted_det(G: MatrixGroup, g: int, h: int) -> Cyclotomic:
    """det(g|_{N_h}) := det(g) / det(g|_{T_h}).

    For commuting g, h the fixed space of h is g-stable and the restricted
    determinant is computed there; otherwise the same quotient is used with
    det(g|_{T_h}) taken from the compression of g to Fix(h).
    """
    dh = element_data(G, h)
    dg = G.det(g)
    if not dh.fixed_basis:
        return dg
    m = G.elements[g]
    V = [list(col) for col in dh.fixed_basis]  # k vectors
    P = dh.projector
    # compress g to Fix(h): coordinates of P g v in basis V
    k = len(V)
    basis_matrix = [[V[c][r] for c in range(k)] for r in range(G.n)]
    from .exact.linalg import solve

    cols = []
    for v in V:
        gv = [sum((m[r][c] * v[c] for c in range(G.n)), ZERO) for r in range(G.n)]
        pgv = [sum((P[r][c] * gv[c] for c in range(G.n)), ZERO) for r in range(G.n)]
        coords = solve(basis_matrix, pgv)
        cols.append(coords)
    comp = [[cols[c][r] for c in range(k)] for r in range(k)]
    return dg / det(comp)


class ParityChoice:
    """A homomorphism G -> Z/2 stored as a tuple of 0/1 per element."""

    def __init__(self, values: Sequence[int]):
        self.values = tuple(int(v) % 2 for v in values)

    def __call__(self, g: int) -> int:
        return self.values[g]

    def __eq__(self, other) -> bool:
        return isinstance(other, ParityChoice) and self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def __repr__(self) -> str:
        return f"ParityChoice({self.values})"

    def is_homomorphism(self, G: FiniteGroup) -> bool:
        v = self.values
        return all(v[G.mul(a, b)] == (v[a] + v[b]) % 2 for a in range(G.order) for b in range(G.order))

    @classmethod
    def trivial(cls, G: FiniteGroup) -> "ParityChoice":
        return cls([0] * G.order)

    @classmethod
    def from_generators(cls, G: FiniteGroup, gens: Sequence[int], images: Sequence[int]) -> Optional["ParityChoice"]:
        vals: dict[int, int] = {0: 0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for s, v in zip(gens, images):
                    y = G.mul(x, s)
                    val = (vals[x] + v) % 2
                    if y in vals:
                        if vals[y] != val:
                            return None
                    else:
                        vals[y] = val
                        nxt.append(y)
            frontier = nxt
        if len(vals) != G.order:
            return None
        p = cls([vals[i] for i in range(G.order)])
        return p if p.is_homomorphism(G) else None


def enumerate_parities(G: FiniteGroup) -> list[ParityChoice]:
    gens = G.generators
    out = []
    for images in product((0, 1), repeat=len(gens)):
        p = ParityChoice.from_generators(G, gens, images)
        if p is not None and p not in out:
            out.append(p)
    return out


class DiscreteTorsion:
    """Root-of-unity values on commuting pairs."""

    def __init__(self, G: FiniteGroup, values: dict[tuple[int, int], Cyclotomic]):
        self.group = G
        self.values = {k: Cyclotomic.coerce(v) for k, v in values.items()}

    def __call__(self, g: int, h: int) -> Cyclotomic:
        return self.values[(g, h)]

    @classmethod
    def trivial(cls, G: FiniteGroup) -> "DiscreteTorsion":
        return cls(G, {(g, h): ONE for g in range(G.order) for h in range(G.order) if G.commutes(g, h)})

    def audit(self) -> Optional[tuple[str, tuple]]:
        """First violated identity with its witness, or None."""
        G = self.group
        v = self.values
        pairs = [(g, h) for g in range(G.order) for h in range(G.order) if G.commutes(g, h)]
        for g, h in pairs:
            if (g, h) not in v:
                return ("defined", (g, h))
            if v[(g, h)] != v[(G.inv[h], g)]:
                return ("eps(g,h)=eps(h^-1,g)", (g, h))
        for g in range(G.order):
            if v[(g, g)] != 1:
                return ("eps(g,g)=1", (g,))
        for g1 in range(G.order):
            for g2 in range(G.order):
                for h in range(G.order):
                    if G.commutes(g1, h) and G.commutes(g2, h):
                        if v[(G.mul(g1, g2), h)] != v[(g1, h)] * v[(g2, h)]:
                            return ("eps(g1g2,h)=eps(g1,h)eps(g2,h)", (g1, g2, h))
        return None

    def __eq__(self, other) -> bool:
        return isinstance(other, DiscreteTorsion) and self.values == other.values


def enumerate_discrete_torsion(G: FiniteGroup, bound: int = 64) -> list[DiscreteTorsion]:
    """All discrete torsions, by propagating values from generator pairs.

    eps(., h) is a character of the centraliser C(h), so it is fixed by its
    values on generators of C(h); each candidate is audited in full.
    """
    from .errors import SearchSpaceTooLarge

    if G.order > bound:
        raise SearchSpaceTooLarge(f"|G| = {G.order} exceeds torsion bound {bound}", witness=G.order)
    exp = 1
    for g in range(G.order):
        exp = lcm(exp, G.element_order(g))
    # eps(g,h)^ord(g) = eps(e,h) = 1, so values are exp-th roots of unity
    roots = [Cyclotomic.zeta(exp, k) if exp > 1 else ONE for k in range(exp)]
    cent_gens: dict[int, list[int]] = {}
    for h in range(G.order):
        cent = [g for g in range(G.order) if G.commutes(g, h)]
        gens: list[int] = []
        span = {0}
        for g in cent:
            if g not in span:
                gens.append(g)
                span = set(G.generated_subgroup(gens))
        cent_gens[h] = gens
    results: list[DiscreteTorsion] = []
    assignment: dict[tuple[int, int], Cyclotomic] = {}

    def extend(h: int, vals: dict[tuple[int, int], Cyclotomic]) -> Optional[dict]:
        """Fill eps(., h) on the centraliser from generator values."""
        out = dict(vals)
        gens = cent_gens[h]
        frontier = [0]
        out[(0, h)] = ONE
        seen = {0}
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = G.mul(x, s)
                    val = out[(x, h)] * out[(s, h)]
                    if (y, h) in out:
                        if out[(y, h)] != val:
                            return None
                    else:
                        out[(y, h)] = val
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return out

    def consistent(vals: dict) -> bool:
        for (g, h), v in vals.items():
            k = (G.inv[h], g)
            if k in vals and vals[k] != v:
                return False
            if g == h and v != 1:
                return False
        return True

    def search(hi: int, vals: dict) -> None:
        if hi == G.order:
            t = DiscreteTorsion(G, vals)
            if t.audit() is None and t not in results:
                results.append(t)
            return
        gens = cent_gens[hi]
        forced = {}
        for s in gens:
            k = (G.inv[hi], s)
            # eps(s,hi) = eps(hi^-1, s): already known if that column is done
            if k in vals:
                forced[s] = vals[k]
        free = [s for s in gens if s not in forced]
        for choice in product(roots, repeat=len(free)):
            trial = dict(vals)
            for s, v in forced.items():
                trial[(s, hi)] = v
            for s, v in zip(free, choice):
                trial[(s, hi)] = v
            full = extend(hi, trial)
            if full is not None and consistent(full):
                search(hi + 1, full)

    search(0, assignment)
    return results
