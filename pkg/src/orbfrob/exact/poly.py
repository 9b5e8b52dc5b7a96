"""Multivariate polynomials, Groebner normal forms and Milnor rings.

Monomials are ordered by weighted degree first (weights q_i, or total
degree when no weights are attached) and then lexicographically in the
declared variable order, so normal forms of homogeneous input stay
homogeneous.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence, Union

from ..errors import NonIsolated, NotQuasiHomogeneous
from .cyclotomic import Cyclotomic, Number, ONE, ZERO
from .linalg import as_matrix, rank

Exps = tuple[int, ...]


class MultiPoly:
    __slots__ = ("vars", "terms", "weights")

    def __init__(
        self,
        vars: Sequence[str],
        terms: Optional[Mapping[Exps, Number]] = None,
        weights: Optional[Sequence[Union[Fraction, int]]] = None,
    ):
        self.vars = tuple(vars)
        self.weights = tuple(Fraction(w) for w in weights) if weights is not None else None
        clean: dict[Exps, Cyclotomic] = {}
        for e, c in (terms or {}).items():
            c = Cyclotomic.coerce(c)
            if c:
                if len(e) != len(self.vars):
                    raise ValueError("exponent length does not match variables")
                clean[tuple(e)] = c
        self.terms = clean

    # constructors
    @classmethod
    def const(cls, vars: Sequence[str], c: Number, weights=None) -> "MultiPoly":
        return cls(vars, {(0,) * len(vars): c}, weights)

    @classmethod
    def var(cls, vars: Sequence[str], name: str, weights=None) -> "MultiPoly":
        i = list(vars).index(name)
        e = [0] * len(vars)
        e[i] = 1
        return cls(vars, {tuple(e): ONE}, weights)

    @classmethod
    def monomial(cls, vars: Sequence[str], exps: Exps, c: Number = 1, weights=None) -> "MultiPoly":
        return cls(vars, {tuple(exps): c}, weights)

    def _new(self, terms: Mapping[Exps, Cyclotomic]) -> "MultiPoly":
        p = MultiPoly.__new__(MultiPoly)
        p.vars = self.vars
        p.weights = self.weights
        p.terms = {e: c for e, c in terms.items() if c}
        return p

    def with_weights(self, weights) -> "MultiPoly":
        return MultiPoly(self.vars, self.terms, weights)

    # arithmetic
    def _other(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise ValueError("polynomials live in different rings")
            return other
        return MultiPoly.const(self.vars, other, self.weights)

    def __add__(self, other) -> "MultiPoly":
        other = self._other(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._other(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._other(other) - self

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            c = Cyclotomic.coerce(other)
            return self._new({e: x * c for e, x in self.terms.items()})
        other = self._other(other)
        out: dict[Exps, Cyclotomic] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                out[e] = out[e] + v if e in out else v
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        out = MultiPoly.const(self.vars, 1, self.weights)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(self.vars, other)
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def diff(self, i: int) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return self._new(out)

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Replace the i-th variable by images[i] (all in one target ring)."""
        target = images[0] if images else None
        if target is None:
            return self
        out = MultiPoly(target.vars, {}, target.weights)
        cache: dict[tuple[int, int], MultiPoly] = {}

        def power(i: int, k: int) -> MultiPoly:
            if (i, k) not in cache:
                cache[(i, k)] = images[i] ** k
            return cache[(i, k)]

        for e, c in self.terms.items():
            term = MultiPoly.const(target.vars, c, target.weights)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def restrict(self, keep: Sequence[int]) -> "MultiPoly":
        """Set every variable outside ``keep`` to zero."""
        keep = list(keep)
        drop = [i for i in range(len(self.vars)) if i not in keep]
        out = {}
        for e, c in self.terms.items():
            if all(e[i] == 0 for i in drop):
                out[tuple(e[i] for i in keep)] = c
        w = [self.weights[i] for i in keep] if self.weights is not None else None
        return MultiPoly([self.vars[i] for i in keep], out, w)

    def wdeg(self, e: Exps) -> Fraction:
        if self.weights is None:
            return Fraction(sum(e))
        return sum((w * a for w, a in zip(self.weights, e)), Fraction(0))

    def order_key(self, e: Exps):
        return (self.wdeg(e), e)

    def leading(self) -> tuple[Exps, Cyclotomic]:
        e = max(self.terms, key=self.order_key)
        return e, self.terms[e]

    def is_quasi_homogeneous(self, degree: Fraction = Fraction(1)) -> bool:
        return all(self.wdeg(e) == degree for e in self.terms)

    def sorted_terms(self) -> list[tuple[Exps, Cyclotomic]]:
        return sorted(self.terms.items(), key=lambda t: self.order_key(t[0]), reverse=True)

    def __repr__(self) -> str:
        return f"MultiPoly({self})"

    def __str__(self) -> str:
        return format_poly(self)


def format_monomial(vars: Sequence[str], e: Exps) -> str:
    parts = []
    for v, k in zip(vars, e):
        if k == 1:
            parts.append(v)
        elif k:
            parts.append(f"{v}^{k}")
    return "*".join(parts) if parts else "1"


def format_poly(p: MultiPoly) -> str:
    if p.is_zero():
        return "0"
    out = []
    for e, c in p.sorted_terms():
        mono = format_monomial(p.vars, e)
        if mono == "1":
            out.append(str(c))
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{c}*{mono}")
    return " + ".join(out)


def _divides(a: Exps, b: Exps) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _monic(p: MultiPoly) -> MultiPoly:
    _, c = p.leading()
    inv = c.inverse()
    return p._new({e: x * inv for e, x in p.terms.items()})


def _reduce(p: MultiPoly, basis: Sequence[MultiPoly]) -> MultiPoly:
    """Full reduction of p by a list of monic polynomials."""
    leads = [(g.leading()[0], g) for g in basis]
    rem: dict[Exps, Cyclotomic] = {}
    work = dict(p.terms)
    key = p.order_key
    while work:
        e = max(work, key=key)
        c = work.pop(e)
        for le, g in leads:
            if _divides(le, e):
                shift = tuple(a - b for a, b in zip(e, le))
                for ge, gc in g.terms.items():
                    if ge == le:
                        continue
                    ne = tuple(a + b for a, b in zip(ge, shift))
                    v = work.get(ne, ZERO) - c * gc
                    if v:
                        work[ne] = v
                    else:
                        work.pop(ne, None)
                break
        else:
            rem[e] = c
    return p._new(rem)


def groebner_basis(gens: Sequence[MultiPoly]) -> list[MultiPoly]:
    """Reduced Groebner basis by Buchberger's algorithm."""
    basis = [_monic(g) for g in gens if not g.is_zero()]
    if not basis:
        return []
    pairs = list(combinations(range(len(basis)), 2))
    while pairs:
        i, j = pairs.pop(0)
        a, b = basis[i], basis[j]
        la, lb = a.leading()[0], b.leading()[0]
        lcm_e = tuple(max(x, y) for x, y in zip(la, lb))
        if all(min(x, y) == 0 for x, y in zip(la, lb)):
            continue  # coprime leading terms: S-polynomial reduces to zero
        sa = MultiPoly.monomial(a.vars, tuple(x - y for x, y in zip(lcm_e, la)), 1, a.weights)
        sb = MultiPoly.monomial(a.vars, tuple(x - y for x, y in zip(lcm_e, lb)), 1, a.weights)
        s = _reduce(sa * a - sb * b, basis)
        if not s.is_zero():
            basis.append(_monic(s))
            n = len(basis) - 1
            pairs.extend((k, n) for k in range(n))
    # minimise and interreduce
    basis.sort(key=lambda g: g.order_key(g.leading()[0]))
    minimal: list[MultiPoly] = []
    for g in basis:
        lg = g.leading()[0]
        if not any(_divides(h.leading()[0], lg) for h in minimal):
            minimal.append(g)
    reduced = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        lg, _ = g.leading()
        tail = g._new({e: c for e, c in g.terms.items() if e != lg})
        reduced.append(g._new({lg: ONE}) + _reduce(tail, others))
    return sorted(reduced, key=lambda g: g.order_key(g.leading()[0]))


def groebner_normal_form(p: MultiPoly, ideal_gens: Sequence[MultiPoly]) -> MultiPoly:
    if not ideal_gens:
        raise ValueError("ideal_gens must be nonempty")
    return _reduce(p, groebner_basis(ideal_gens))


def hessian(f: MultiPoly) -> MultiPoly:
    """det of the matrix of second partials, by cofactor expansion."""
    n = len(f.vars)
    if n == 0:
        return MultiPoly.const(f.vars, 1, f.weights)
    second = [[f.diff(i).diff(j) for j in range(n)] for i in range(n)]
    memo: dict[tuple[int, int], MultiPoly] = {}

    def minor(row: int, cols: int) -> MultiPoly:
        # determinant of rows row.. and the column subset encoded in cols
        if row == n:
            return MultiPoly.const(f.vars, 1, f.weights)
        if (row, cols) in memo:
            return memo[(row, cols)]
        acc = MultiPoly(f.vars, {}, f.weights)
        sign = 1
        for c in range(n):
            if cols >> c & 1:
                entry = second[row][c]
                if not entry.is_zero():
                    sub = minor(row + 1, cols & ~(1 << c))
                    acc = acc + entry * sub * sign
                sign = -sign
        memo[(row, cols)] = acc
        return acc

    return minor(0, (1 << n) - 1)


@dataclass(frozen=True)
class QuotientRing:
    vars: tuple[str, ...]
    weights: tuple[Fraction, ...]
    basis: tuple[Exps, ...]
    mult_table: dict  # (i, j) -> {k: coefficient}
    rho: tuple[Cyclotomic, ...]
    counit: tuple[Cyclotomic, ...]
    degrees: tuple[Fraction, ...]
    gb: tuple[MultiPoly, ...] = field(repr=False)
    hessian_class: tuple[Cyclotomic, ...] = ()

    @property
    def hessian_scale(self) -> Cyclotomic:
        """The constant c with [Hess f] = c * rho."""
        return self.eps(self.hessian_class)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, e: Exps) -> int:
        return self.basis.index(tuple(e))

    def vector(self, p: MultiPoly) -> list[Cyclotomic]:
        """Coordinates of the class of p in the monomial basis."""
        if p.vars != self.vars:
            raise ValueError("polynomial ring mismatch")
        nf = _reduce(p.with_weights(self.weights), self.gb) if self.gb else p
        v = [ZERO] * self.dim
        pos = {e: k for k, e in enumerate(self.basis)}
        for e, c in nf.terms.items():
            v[pos[e]] = c
        return v

    def poly(self, v: Sequence[Cyclotomic]) -> MultiPoly:
        return MultiPoly(self.vars, {e: c for e, c in zip(self.basis, v)}, self.weights)

    def multiply(self, a: Sequence[Cyclotomic], b: Sequence[Cyclotomic]) -> list[Cyclotomic]:
        out = [ZERO] * self.dim
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if not y:
                    continue
                xy = x * y
                for k, c in self.mult_table.get((i, j), {}).items():
                    out[k] = out[k] + xy * c
        return out

    def eps(self, a: Sequence[Cyclotomic]) -> Cyclotomic:
        acc = ZERO
        for x, c in zip(a, self.counit):
            if x and c:
                acc = acc + x * c
        return acc

    def pairing(self, a: Sequence[Cyclotomic], b: Sequence[Cyclotomic]) -> Cyclotomic:
        return self.eps(self.multiply(a, b))

    def gram(self) -> list[list[Cyclotomic]]:
        unit = [[ONE if k == i else ZERO for k in range(self.dim)] for i in range(self.dim)]
        return [[self.pairing(unit[i], unit[j]) for j in range(self.dim)] for i in range(self.dim)]


def _standard_monomials(n: int, leads: Sequence[Exps], limit: int) -> list[Exps] | None:
    """Monomials not divisible by any lead, or None if there are too many."""
    for i in range(n):
        if not any(le[i] > 0 and sum(le) == le[i] for le in leads):
            return None
    found = [tuple([0] * n)]
    seen = {found[0]}
    frontier = list(found)
    while frontier:
        nxt = []
        for e in frontier:
            for i in range(n):
                ne = list(e)
                ne[i] += 1
                ne = tuple(ne)
                if ne in seen or any(_divides(le, ne) for le in leads):
                    continue
                seen.add(ne)
                nxt.append(ne)
                if len(seen) > limit:
                    return None
        frontier = nxt
    return sorted(seen)


def quotient_ring(
    vars: Sequence[str],
    weights: Sequence[Fraction],
    gens: Sequence[MultiPoly],
    rho_poly: MultiPoly,
    limit: int = 100000,
) -> QuotientRing:
    """Finite quotient k[vars]/(gens).

    rho is the single top-degree standard monomial that carries the class
    of rho_poly, and the counit is its dual coordinate: eps(rho) = 1.
    """
    weights = tuple(Fraction(w) for w in weights)
    n = len(vars)
    gens = [g.with_weights(weights) for g in gens if not g.is_zero()]
    gb = groebner_basis(gens) if gens else []
    if any(not g.is_zero() and g.leading()[0] == (0,) * n for g in gb):
        raise NonIsolated("ideal is the unit ideal", witness=None)
    leads = [g.leading()[0] for g in gb]
    basis = _standard_monomials(n, leads, limit)
    if basis is None:
        raise NonIsolated("quotient ring is infinite dimensional", witness=leads)
    basis.sort(key=lambda e: (sum((w * a for w, a in zip(weights, e)), Fraction(0)), tuple(-a for a in e)))
    pos = {e: k for k, e in enumerate(basis)}
    mult: dict[tuple[int, int], dict[int, Cyclotomic]] = {}
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            if j < i:
                mult[(i, j)] = mult[(j, i)]
                continue
            e = tuple(x + y for x, y in zip(a, b))
            if e in pos:
                mult[(i, j)] = {pos[e]: ONE}
            else:
                nf = _reduce(MultiPoly(vars, {e: ONE}, weights), gb)
                mult[(i, j)] = {pos[m]: c for m, c in nf.terms.items()}
    degrees = tuple(sum((w * a for w, a in zip(weights, e)), Fraction(0)) for e in basis)
    rho_nf = _reduce(rho_poly.with_weights(weights), gb) if gb else rho_poly
    hess = [ZERO] * len(basis)
    for m, c in rho_nf.terms.items():
        hess[pos[m]] = c
    nz = [k for k, c in enumerate(hess) if c]
    if len(nz) != 1:
        raise NonIsolated("Hessian class is not a single top-degree monomial", witness=rho_nf)
    top = nz[0]
    rho = [ONE if k == top else ZERO for k in range(len(basis))]
    return QuotientRing(
        tuple(vars), weights, tuple(basis), mult, tuple(rho), tuple(rho), degrees, tuple(gb), tuple(hess)
    )


def milnor_ring(f: MultiPoly, weights: Optional[Sequence[Union[Fraction, int]]] = None) -> QuotientRing:
    """Jacobian ring O/J_f of a quasi-homogeneous isolated singularity."""
    if weights is None:
        weights = f.weights
    n = len(f.vars)
    if weights is None or len(weights) != n:
        raise NotQuasiHomogeneous("one weight per variable is required", witness=weights)
    weights = tuple(Fraction(w) for w in weights)
    for i, q in enumerate(weights):
        if not (0 < q <= Fraction(1, 2)):
            raise NotQuasiHomogeneous(f"weight q_{i + 1} = {q} outside (0, 1/2]", witness=(i, q))
    f = f.with_weights(weights)
    if n and f.is_zero():
        raise NonIsolated("f is zero", witness=f)
    for e in f.terms:
        if f.wdeg(e) != 1:
            raise NotQuasiHomogeneous(
                f"monomial {format_monomial(f.vars, e)} has weighted degree {f.wdeg(e)}", witness=e
            )
    expected = 1
    for q in weights:
        expected *= 1 / q - 1
    ring = quotient_ring(f.vars, weights, [f.diff(i) for i in range(n)], hessian(f),
                         limit=int(expected) * 4 + 16)
    if ring.dim != expected:
        raise NonIsolated(f"Milnor number {ring.dim} differs from {expected}", witness=ring.dim)
    return ring


def gram_rank(ring: QuotientRing) -> int:
    return rank(as_matrix(ring.gram()))
