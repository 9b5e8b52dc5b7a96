"""Frobenius algebras: plain, graded and super.

Elements are sparse coordinate vectors in a fixed basis.  Structure
constants are stored sparsely as ``mult[(i, j)] = {k: c}`` and the
metric as ``eta[(i, j)] = c`` (zero entries omitted).
"""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from . import sparse
from .errors import DegenerateEta
from .exact import ONE, ZERO, Cyclotomic, inverse, rank, solve
from .exact.poly import QuotientRing, format_monomial
from .report import Report
from .textio import scalar_text, vec_text

Vec = sparse.Vec
Table = dict[tuple[int, int], dict[int, Cyclotomic]]


class GradingWarning(UserWarning):
    pass


@dataclass
class FrobAlgebra:
    labels: list[str]
    mult: Table
    eta: dict[tuple[int, int], Cyclotomic]
    unit: Vec
    degrees: Optional[list[Fraction]] = None
    parity: Optional[list[int]] = None
    d: Optional[Fraction] = None
    D: Optional[Fraction] = None
    bidegrees: Optional[list[tuple[Fraction, Fraction]]] = None
    notes: list[str] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def graded(self) -> bool:
        return self.degrees is not None

    @property
    def is_super(self) -> bool:
        return self.parity is not None and any(self.parity)

    def par(self, i: int) -> int:
        return self.parity[i] % 2 if self.parity else 0

    def basis(self, i: int) -> Vec:
        return sparse.unit(i)

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

    def scaled(self, lam) -> "FrobAlgebra":
        """Multiply every degree (and d, D) by lam."""
        lam = Fraction(lam)
        if not self.graded:
            return self
        return replace(
            self,
            degrees=[x * lam for x in self.degrees],
            d=self.d * lam,
            D=self.D * lam,
            bidegrees=None if self.bidegrees is None
            else [(a * lam, b * lam) for a, b in self.bidegrees],
            notes=list(self.notes),
        )


def ground_field() -> FrobAlgebra:
    return FrobAlgebra(["1"], {(0, 0): {0: ONE}}, {(0, 0): ONE}, {0: ONE},
                       [Fraction(0)], [0], Fraction(0), Fraction(0))


def from_quotient_ring(ring: QuotientRing) -> FrobAlgebra:
    n = ring.dim
    eta = {}
    for (i, j), row in ring.mult_table.items():
        c = ring.eps(sparse.dense(row, n))
        if c:
            eta[(i, j)] = c
    mult = {k: dict(v) for k, v in ring.mult_table.items() if v}
    top = next(k for k, c in enumerate(ring.rho) if c)
    labels = [format_monomial(ring.vars, e) for e in ring.basis]
    return FrobAlgebra(labels, mult, eta, {0: ONE}, list(ring.degrees), [0] * n,
                       Fraction(0), ring.degrees[top])


def check_frobenius(A: FrobAlgebra) -> Report:
    rep = Report("frobenius")
    n = A.dim
    rng = range(n)

    g = A.gram()
    rk = rank(g) if n else 0
    rep.add("nondegenerate", rk == n, witness=f"rank {rk} < {n}")

    bad = next(((i, j) for i in rng for j in rng
                if A.eta.get((i, j), ZERO) != A.eta.get((j, i), ZERO)), None)
    rep.add("eta symmetric", bad is None, witness=bad)

    bad = None
    for i in rng:
        for j in rng:
            ab = A.mult.get((i, j), {})
            for k in rng:
                lhs = A.mul(ab, {k: ONE})
                rhs = A.mul({i: ONE}, A.mult.get((j, k), {}))
                if not sparse.equal(lhs, rhs):
                    bad = (A.labels[i], A.labels[j], A.labels[k])
                    break
            if bad:
                break
        if bad:
            break
    rep.add("associativity", bad is None, witness=bad)

    bad = None
    for i in rng:
        for j in range(i, n):
            sign = -1 if A.par(i) and A.par(j) else 1
            if not sparse.equal(A.mult.get((i, j), {}), sparse.scale(A.mult.get((j, i), {}), sign)):
                bad = (A.labels[i], A.labels[j])
                break
        if bad:
            break
    rep.add("supercommutativity" if A.is_super else "commutativity", bad is None, witness=bad)

    bad = None
    for i in rng:
        b = {i: ONE}
        if not (sparse.equal(A.mul(A.unit, b), b) and sparse.equal(A.mul(b, A.unit), b)):
            bad = A.labels[i]
            break
    rep.add("unit", bad is None, witness=bad)

    bad = None
    for i in rng:
        for j in rng:
            for k in rng:
                lhs = A.pair({i: ONE}, A.mult.get((j, k), {}))
                rhs = A.pair(A.mult.get((i, j), {}), {k: ONE})
                if lhs != rhs:
                    bad = (A.labels[i], A.labels[j], A.labels[k])
                    break
            if bad:
                break
        if bad:
            break
    rep.add("invariance", bad is None, witness=bad)

    if A.graded:
        deg = A.degrees
        bad = next((A.labels[k] for k in A.unit if deg[k] != A.d), None)
        rep.add("unit homogeneous of degree d", bad is None, witness=bad)
        bad = next(((A.labels[i], A.labels[j]) for (i, j), c in A.eta.items()
                    if c and deg[i] + deg[j] != A.d + A.D), None)
        rep.add("eta homogeneous of degree d+D", bad is None, witness=bad)
        bad = next(((A.labels[i], A.labels[j], A.labels[k]) for (i, j), row in A.mult.items()
                    for k in row if deg[k] != deg[i] + deg[j] - A.d), None)
        rep.add("multiplication of degree d", bad is None, witness=bad)

    if A.parity is not None:
        bad = next((A.labels[k] for k in A.unit if A.par(k)), None)
        rep.add("unit even", bad is None, witness=bad)
        bad = next(((A.labels[i], A.labels[j]) for (i, j), c in A.eta.items()
                    if c and (A.par(i) + A.par(j)) % 2), None)
        rep.add("eta even", bad is None, witness=bad)
        bad = next(((A.labels[i], A.labels[j], A.labels[k]) for (i, j), row in A.mult.items()
                    for k in row if A.par(k) != (A.par(i) + A.par(j)) % 2), None)
        rep.add("multiplication even", bad is None, witness=bad)
    return rep


def counit_rho(A: FrobAlgebra) -> tuple[Vec, Vec]:
    """The co-unit eps(a) = eta(a, 1) as a covector, and rho, the element
    Poincare dual to 1."""
    n = A.dim
    g = A.gram()
    if n and rank(g) < n:
        raise DegenerateEta("eta is degenerate", witness=rank(g))
    eps: Vec = {}
    for i in range(n):
        c = A.pair({i: ONE}, A.unit)
        if c:
            eps[i] = c
    # rho is the dual of 1 in a basis that contains 1: pick a basis vector
    # with nonzero unit coordinate to swap out, then solve eta(rho, b) = [b == 1]
    swap = min(A.unit)
    rows = []
    rhs = []
    for j in range(n):
        vec = A.unit if j == swap else {j: ONE}
        rows.append([A.pair({i: ONE}, vec) for i in range(n)])
        rhs.append(ONE if j == swap else ZERO)
    x = solve(rows, rhs)
    rho = sparse.from_dense(x)
    return eps, rho


def mu_round_trip(A: FrobAlgebra) -> bool:
    """Rebuild the product from mu(a,b,c) = eta(ab, c) and eta^{-1}."""
    n = A.dim
    ginv = inverse(A.gram())
    for i in range(n):
        for j in range(n):
            ab = A.mult.get((i, j), {})
            mu = [A.pair(ab, {k: ONE}) for k in range(n)]
            rebuilt: Vec = {}
            for k, m in enumerate(mu):
                if m:
                    for l in range(n):
                        c = ginv[k][l]
                        if c:
                            sparse.add_into(rebuilt, {l: m * c})
            if not sparse.equal(rebuilt, ab):
                return False
    return True


def char_series(A: FrobAlgebra, lam=1) -> dict[Fraction, int]:
    """Degree -> dimension of the graded piece, after scaling by lam."""
    if not A.graded:
        raise ValueError("characteristic series needs a grading")
    lam = Fraction(lam)
    return dict(sorted(Counter(x * lam for x in A.degrees).items()))


def format_series(series: Mapping[Fraction, int]) -> str:
    parts = []
    for e, m in sorted(series.items()):
        mono = "t" if e == 1 else f"t^{e}" if e.denominator == 1 else f"t^{{{e}}}"
        if e == 0:
            parts.append(str(m))
        else:
            parts.append(mono if m == 1 else f"{m}*{mono}")
    return " + ".join(parts) if parts else "0"


def _sum_scaling(A1: FrobAlgebra, A2: FrobAlgebra) -> Optional[Fraction]:
    """Nonzero lam so that A1 and lam*A2 share d and D, or None."""
    if A2.D:
        lam = A1.D / A2.D
    elif A1.D:
        return None
    elif A2.d:
        lam = A1.d / A2.d
    else:
        lam = Fraction(1) if not A1.d else None
    if not lam:
        return None
    if lam * A2.D == A1.D and lam * A2.d == A1.d:
        return lam
    return None


def direct_sum(A1: FrobAlgebra, A2: FrobAlgebra) -> FrobAlgebra:
    n1 = A1.dim
    mult: Table = {k: dict(v) for k, v in A1.mult.items()}
    for (i, j), row in A2.mult.items():
        mult[(i + n1, j + n1)] = {k + n1: c for k, c in row.items()}
    eta = dict(A1.eta)
    eta.update({(i + n1, j + n1): c for (i, j), c in A2.eta.items()})
    unit = dict(A1.unit)
    unit.update({k + n1: c for k, c in A2.unit.items()})
    parity = None
    if A1.parity is not None or A2.parity is not None:
        parity = [A1.par(i) for i in range(n1)] + [A2.par(i) for i in range(A2.dim)]
    out = FrobAlgebra([f"{a}'" for a in A1.labels] + [f"{a}''" for a in A2.labels],
                      mult, eta, unit, parity=parity)
    if A1.graded and A2.graded:
        lam = _sum_scaling(A1, A2)
        if lam is None:
            msg = (f"no scaling matches (d, D) = ({A1.d}, {A1.D}) with ({A2.d}, {A2.D}); "
                   "direct sum left ungraded")
            warnings.warn(msg, GradingWarning, stacklevel=2)
            out.notes.append(msg)
        else:
            B = A2.scaled(lam)
            out.degrees = list(A1.degrees) + list(B.degrees)
            out.d, out.D = A1.d, A1.D
            if lam != 1:
                out.notes.append(f"second summand scaled by {lam}")
    elif A1.graded or A2.graded:
        msg = "only one summand is graded; direct sum left ungraded"
        warnings.warn(msg, GradingWarning, stacklevel=2)
        out.notes.append(msg)
    return out


def tensor(A1: FrobAlgebra, A2: FrobAlgebra) -> FrobAlgebra:
    """Graded tensor product with the Koszul sign for odd factors."""
    n2 = A2.dim

    def idx(i: int, j: int) -> int:
        return i * n2 + j

    def sign(a2: int, b1: int) -> int:
        return -1 if A2.par(a2) and A1.par(b1) else 1

    pairs = [(i, j) for i in range(A1.dim) for j in range(n2)]
    mult: Table = {}
    eta: dict[tuple[int, int], Cyclotomic] = {}
    for (a1, a2) in pairs:
        for (b1, b2) in pairs:
            s = sign(a2, b1)
            r1 = A1.mult.get((a1, b1))
            r2 = A2.mult.get((a2, b2))
            if r1 and r2:
                row = {idx(k1, k2): c1 * c2 * s for k1, c1 in r1.items() for k2, c2 in r2.items()}
                mult[(idx(a1, a2), idx(b1, b2))] = row
            e1 = A1.eta.get((a1, b1))
            e2 = A2.eta.get((a2, b2))
            if e1 and e2:
                eta[(idx(a1, a2), idx(b1, b2))] = e1 * e2 * s
    unit = {idx(i, j): x * y for i, x in A1.unit.items() for j, y in A2.unit.items()}
    labels = [f"{A1.labels[i]}@{A2.labels[j]}" for i, j in pairs]
    out = FrobAlgebra(labels, mult, eta, unit)
    if A1.parity is not None or A2.parity is not None:
        out.parity = [(A1.par(i) + A2.par(j)) % 2 for i, j in pairs]
    if A1.graded and A2.graded:
        out.degrees = [A1.degrees[i] + A2.degrees[j] for i, j in pairs]
        out.d = A1.d + A2.d
        out.D = A1.D + A2.D
    return out


def check_euler(A: FrobAlgebra, E: Sequence) -> Report:
    """Check that the diagonal operator E is an Euler field.

    The constants of both identities are read off from E itself: d is the
    eigenvalue on the unit and D from any nonzero metric entry.  They are
    then compared with the stored grading, whose metric has degree d + D.
    """
    E = [Fraction(x) for x in E]
    n = A.dim
    rep = Report("euler")
    if len(E) != n:
        rep.add("size", False, witness=(len(E), n))
        return rep
    units = {E[k] for k in A.unit}
    d = next(iter(units)) if len(units) == 1 else None
    rep.add("unit is an eigenvector", d is not None, witness=sorted(units))
    nz = sorted(A.eta)
    D = E[nz[0][0]] + E[nz[0][1]] if nz else Fraction(0)
    rep.data.update(d=d, D=D)

    bad = next(((A.labels[i], A.labels[j]) for (i, j), c in A.eta.items()
                if c and E[i] + E[j] != D), None)
    rep.add("eta(Ea,b) + eta(a,Eb) = D eta(a,b)", bad is None, witness=bad, detail=f"D = {D}")
    if d is None:
        d = Fraction(0)
    bad = next(((A.labels[i], A.labels[j]) for (i, j), row in A.mult.items()
                for k in row if E[k] != E[i] + E[j] - d), None)
    rep.add("E(ab) = (Ea)b + a(Eb) - d ab", bad is None, witness=bad, detail=f"d = {d}")
    if A.graded:
        bad = next((A.labels[k] for k in range(n) if E[k] != A.degrees[k]), None)
        rep.add("eigenvalues match grading", bad is None, witness=bad)
        rep.add("constants match grading", d == A.d and D == A.d + A.D,
                witness=((d, D), (A.d, A.D)))
    return rep


def dump(A: FrobAlgebra) -> str:
    """Stable text form: header, labels, degree/parity tables, then
    (i, j, k, c) structure constants and (i, j, c) metric entries."""
    lines = ["# orbfrob frobenius dump v1", f"dim {A.dim}"]
    lines.append("labels " + " ".join(A.labels))
    if A.graded:
        lines.append(f"d {A.d}")
        lines.append(f"D {A.D}")
        lines.append("degrees " + " ".join(str(x) for x in A.degrees))
    if A.parity is not None:
        lines.append("parity " + " ".join(str(A.par(i)) for i in range(A.dim)))
    lines.append("unit " + vec_text(A.unit))
    for (i, j) in sorted(A.mult):
        for k, c in sorted(A.mult[(i, j)].items()):
            lines.append(f"mult {i} {j} {k} {scalar_text(c)}")
    for (i, j), c in sorted(A.eta.items()):
        lines.append(f"eta {i} {j} {scalar_text(c)}")
    return "\n".join(lines) + "\n"
