"""Cobordism words over labelled circles, evaluated against a Ramond G-algebra.

A circle carries a monodromy g, a marking h and an orientation.  A
positive circle (g,h) is realised on V_g; a negative one on V_{g^-1},
which the metric identifies with the dual of V_g.

Word syntax, steps separated by ';', each optionally followed by @p (the
position of the first circle it acts on, default 0):

    D               disc: insert (e,e)
    T[g,h;k]        trinion (g,k),(h,k) -> (gh,k)
    C[g;k]          cylinder (g,h) -> (kgk^-1,kh)
    C[g]            pairing cylinder (g,k), (g,k)bar -> nothing
    E[g,h]          once punctured torus ([g,h],e) -> nothing
    II[k1,...,kn]   regauge every circle: (g_i,h_i) -> (g_i,k_i h_i)
    P               swap two neighbouring circles
    F               reverse orientation: (g,h) <-> (g^-1,h)bar

Labels are element indices or element names.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Optional, Sequence, Union

from . import sparse
from .errors import InputSyntaxError, WiringMismatch
from .exact import ONE, ZERO, Cyclotomic
from .gfrob import GFrobenius, RamondSpace, ramond, unramond
from .group import FiniteGroup
from .report import Report
from .textio import split_top

Key = tuple[int, ...]
TVec = dict[Key, Cyclotomic]


@dataclass(frozen=True)
class Circle:
    g: int
    h: int = 0
    orient: int = 1

    def label(self, G: FiniteGroup) -> str:
        s = f"({G.names[self.g]},{G.names[self.h]})"
        return s if self.orient > 0 else s + "bar"


@dataclass(frozen=True)
class BundleObject:
    circles: tuple[Circle, ...] = ()

    def __len__(self) -> int:
        return len(self.circles)

    def label(self, G: FiniteGroup) -> str:
        return " + ".join(c.label(G) for c in self.circles) or "empty"


def obj(*circles) -> BundleObject:
    """Build an object from Circles or (g, h[, orient]) tuples."""
    return BundleObject(tuple(c if isinstance(c, Circle) else Circle(*c) for c in circles))


def realised(V: RamondSpace, c: Circle) -> int:
    return c.g if c.orient > 0 else V.group.inv[c.g]


@dataclass
class SpaceDescriptor:
    factors: list[str]
    sectors: list[int]
    dim: int


def _ramond(V: Union[RamondSpace, GFrobenius]) -> RamondSpace:
    return V if isinstance(V, RamondSpace) else ramond(V)


def eval_object(V: Union[RamondSpace, GFrobenius], S: BundleObject) -> SpaceDescriptor:
    V = _ramond(V)
    G = V.group
    factors, sectors, dim = [], [], 1
    for c in S.circles:
        s = realised(V, c)
        factors.append(f"V_{G.names[c.g]}" + ("" if c.orient > 0 else "*"))
        sectors.append(s)
        dim *= len(V.sectors[s])
    return SpaceDescriptor(factors, sectors, dim)


def basis(V: RamondSpace, S: BundleObject) -> list[Key]:
    return list(product(*(V.sectors[realised(V, c)] for c in S.circles)))


# words

@dataclass(frozen=True)
class Step:
    op: str
    args: tuple[int, ...] = ()
    at: int = 0


@dataclass
class CobordismWord:
    steps: list[Step] = field(default_factory=list)

    def then(self, other: "CobordismWord") -> "CobordismWord":
        return CobordismWord(self.steps + other.steps)

    def format(self, G: FiniteGroup) -> str:
        return " ; ".join(format_step(s, G) for s in self.steps)


_OPS = {"D": (0,), "T": (3,), "C": (1, 2), "E": (2,), "P": (0,), "F": (0,)}


def format_step(s: Step, G: FiniteGroup) -> str:
    names = [G.names[a] for a in s.args]
    if s.op == "T":
        body = f"T[{names[0]},{names[1]};{names[2]}]"
    elif s.op == "C":
        body = f"C[{names[0]};{names[1]}]" if len(names) == 2 else f"C[{names[0]}]"
    elif s.op in ("E", "II"):
        body = f"{s.op}[{','.join(names)}]"
    else:
        body = s.op
    return body + (f"@{s.at}" if s.at else "")


_STEP = re.compile(r"^\s*(II|D|T|C|E|P|F)\s*(?:\[([^\]]*)\])?\s*(?:@\s*(\d+))?\s*$")


def _element(tok: str, G: FiniteGroup, line: int, col: int) -> int:
    tok = tok.strip()
    if tok.isdigit():
        k = int(tok)
        if k < G.order:
            return k
    elif tok in G.names:
        return G.names.index(tok)
    raise InputSyntaxError(f"unknown group element {tok!r}", line, col)


def parse_word(text: str, G: FiniteGroup, line: int = 1) -> CobordismWord:
    steps = []
    col = 1
    for chunk in split_top(text, ";"):
        m = _STEP.match(chunk)
        if not m or not chunk.strip():
            raise InputSyntaxError(f"cannot parse step {chunk.strip()!r}", line, col)
        op, inner, at = m.group(1), m.group(2), m.group(3)
        args: list[int] = []
        if inner is not None and inner.strip():
            parts = re.split(r"[;,]", inner)
            args = [_element(p, G, line, col) for p in parts]
            if op == "T" and inner.count(";") != 1:
                raise InputSyntaxError("T needs [g,h;k]", line, col)
            if op == "C" and len(args) == 2 and ";" not in inner:
                raise InputSyntaxError("C needs [g;k] or [g]", line, col)
        if op != "II" and len(args) not in _OPS[op]:
            raise InputSyntaxError(f"{op} takes {_OPS[op]} labels, got {len(args)}", line, col)
        steps.append(Step(op, tuple(args), int(at) if at else 0))
        col += len(chunk) + 1
    return CobordismWord(steps)


# evaluation

@dataclass
class LinearMap:
    source: BundleObject
    target: BundleObject
    images: dict[Key, TVec]

    def apply(self, v: TVec) -> TVec:
        out: TVec = {}
        for k, c in v.items():
            img = self.images.get(k)
            if img:
                sparse.add_into(out, img, c)
        return out

    def equals(self, other: "LinearMap") -> Optional[Key]:
        """First source basis key where the two maps differ, else None."""
        for k in sorted(set(self.images) | set(other.images)):
            if not sparse.equal(self.images.get(k, {}), other.images.get(k, {})):
                return k
        return None


def _mul(V: RamondSpace, a: int, b: int) -> dict[int, Cyclotomic]:
    return V.mult.get((a, b), {})


def torus_trace(V: RamondSpace, g: int, h: int, c: int, way: int = 0) -> Cyclotomic:
    """The punctured torus on c in V_[g,h], glued along one cycle or the other."""
    if way == 0:
        return V.strace(lambda v: V.mul({c: ONE}, V.act(h, v)), V.sectors[g])
    ginv = V.group.inv[g]
    return V.strace(lambda v: V.act(ginv, V.mul({c: ONE}, v)), V.sectors[h])


def _local(V: RamondSpace, step: Step, circles: list[Circle], G: FiniteGroup,
           torus_way: int) -> tuple[int, list[Circle], Callable[[Key], TVec]]:
    """(number of consumed circles, produced circles, local map on keys)."""
    p = step.at
    a = step.args

    def need(k: int) -> list[Circle]:
        if p + k > len(circles):
            raise WiringMismatch(f"{step.op} needs {k} circles at position {p}",
                                 witness=format_step(step, G))
        return circles[p:p + k]

    def wrong(got: Sequence[Circle]):
        return WiringMismatch(f"{format_step(step, G)} does not fit {[c.label(G) for c in got]}",
                              witness=format_step(step, G))

    if step.op == "D":
        if p > len(circles):
            raise WiringMismatch("D position out of range", witness=p)
        unit = {(i,): c for i, c in V.unit.items()}
        return 0, [Circle(0, 0, 1)], lambda key: dict(unit)
    if step.op == "T":
        g, h, k = a
        c1, c2 = need(2)
        if (c1.g, c1.h, c1.orient, c2.g, c2.h, c2.orient) != (g, k, 1, h, k, 1):
            raise wrong([c1, c2])
        s = V.chi[k].inverse()
        return 2, [Circle(G.mul(g, h), k, 1)], \
            lambda key: {(r,): x * s for r, x in _mul(V, key[0], key[1]).items()}
    if step.op == "C" and len(a) == 2:
        g, k = a
        (c1,) = need(1)
        if c1.g != g:
            raise wrong([c1])
        out = Circle(G.conj(k, g), G.mul(k, c1.h), c1.orient)
        return 1, [out], lambda key: {(r,): x for r, x in V.act(k, {key[0]: ONE}).items()}
    if step.op == "C":
        (g,) = a
        c1, c2 = need(2)
        if not (c1.g == g == c2.g and c1.h == c2.h and c1.orient == 1 and c2.orient == -1):
            raise wrong([c1, c2])
        return 2, [], lambda key: ({(): V.eta[(key[0], key[1])]} if V.eta.get((key[0], key[1]))
                                   else {})
    if step.op == "E":
        g, h = a
        (c1,) = need(1)
        if (c1.g, c1.h, c1.orient) != (G.commutator(g, h), 0, 1):
            raise wrong([c1])

        def torus(key: Key) -> TVec:
            t = torus_trace(V, g, h, key[0], torus_way)
            return {(): t} if t else {}
        return 1, [], torus
    if step.op == "II":
        if len(a) != len(circles) or p:
            raise WiringMismatch("II needs one label per circle", witness=format_step(step, G))
        s = ONE
        for k, c in zip(a, circles):
            s = s * (V.chi[k] if c.orient > 0 else V.chi[k].inverse())
        out = [Circle(c.g, G.mul(k, c.h), c.orient) for k, c in zip(a, circles)]
        return len(circles), out, lambda key: {key: s}
    if step.op == "P":
        c1, c2 = need(2)
        return 2, [c2, c1], lambda key: {(key[1], key[0]): -ONE if V.par(key[0]) and V.par(key[1]) else ONE}
    if step.op == "F":
        (c1,) = need(1)
        return 1, [Circle(G.inv[c1.g], c1.h, -c1.orient)], lambda key: {key: ONE}
    raise WiringMismatch(f"unknown step {step.op}")


def eval_word(V: Union[RamondSpace, GFrobenius], w: CobordismWord, source: BundleObject,
              torus_way: int = 0) -> LinearMap:
    """Evaluate the steps left to right starting from ``source``."""
    V = _ramond(V)
    G = V.group
    circles = list(source.circles)
    state = {k: {k: ONE} for k in basis(V, source)}
    for step in w.steps:
        n, produced, local = _local(V, step, circles, G, torus_way)
        p = step.at
        memo: dict[Key, TVec] = {}
        new_state = {}
        for src, vec in state.items():
            out: TVec = {}
            for key, c in vec.items():
                mid = key[p:p + n]
                if mid not in memo:
                    memo[mid] = local(mid)
                for r, x in memo[mid].items():
                    sparse.add_into(out, {key[:p] + r + key[p + n:]: x}, c)
            new_state[src] = out
        state = new_state
        circles = circles[:p] + produced + circles[p + n:]
    return LinearMap(source, BundleObject(tuple(circles)), state)


def compose(f: LinearMap, g: LinearMap) -> LinearMap:
    """g after f."""
    return LinearMap(f.source, g.target, {k: g.apply(v) for k, v in f.images.items()})


# relations

def _word(*steps: Step) -> CobordismWord:
    return CobordismWord(list(steps))


def _compare(V: RamondSpace, rep_bad: list, name: str, lhs: CobordismWord, rhs: CobordismWord,
             source: BundleObject, same_target: bool = True, rhs_way: int = 0) -> None:
    if rep_bad[0] is not None:
        return
    G = V.group
    f = eval_word(V, lhs, source)
    g = eval_word(V, rhs, source, torus_way=rhs_way)
    # markings may differ: type II related objects share one space
    key = f.equals(g)
    if key is not None:
        rep_bad[0] = (lhs.format(G), rhs.format(G), source.label(G),
                      "|".join(V.labels[i] for i in key))


def check_relations(V: Union[RamondSpace, GFrobenius], A: Optional[GFrobenius] = None) -> Report:
    """Evaluate both sides of every gluing relation on all labels."""
    V = _ramond(V)
    G = V.group
    E = range(G.order)
    e = 0
    rep = Report("cobordism relations")
    mul, inv = G.mul, G.inv

    bad = [None]
    for g, h, k in product(E, E, E):
        _compare(V, bad, "a", _word(Step("T", (g, h, e)), Step("T", (mul(g, h), k, e))),
                 _word(Step("T", (h, k, e), 1), Step("T", (g, mul(h, k), e))),
                 obj((g, e), (h, e), (k, e)))
    rep.add("a) associativity gluing", bad[0] is None, witness=bad[0])

    bad = [None]
    for g, h in product(E, E):
        _compare(V, bad, "b'", _word(Step("T", (g, h, e))),
                 _word(Step("P"), Step("T", (h, g, e)), Step("C", (mul(h, g), g))),
                 obj((g, e), (h, e)))
    rep.add("b') twisted commutativity diagram", bad[0] is None, witness=bad[0])

    bad = [None]
    for k in E:
        _compare(V, bad, "c'", _word(Step("D")),
                 _word(Step("D"), Step("C", (e, k)), Step("II", (inv[k],))), obj())
    for g in E:
        _compare(V, bad, "c'", _word(Step("C", (g, e))),
                 _word(Step("D"), Step("T", (e, g, e))), obj((g, e)))
    rep.add("c') unit diagram", bad[0] is None, witness=bad[0])

    bad = [None]
    for g, h in product(E, E):
        gh = mul(g, h)
        _compare(V, bad, "d", _word(Step("T", (g, h, e)), Step("C", (gh,))),
                 _word(Step("F", at=2), Step("T", (h, inv[gh], e), 1), Step("F", at=1),
                       Step("C", (g,))),
                 obj((g, e), (h, e), (gh, e, -1)))
    rep.add("d) metric invariance gluing", bad[0] is None, witness=bad[0])

    bad = [None]
    for g in E:
        _compare(V, bad, "1'", _word(Step("C", (g, e))), _word(Step("C", (g, g))), obj((g, e)))
    rep.add("1') self-invariance cylinder", bad[0] is None, witness=bad[0])

    bad = [None]
    for g, h, k in product(E, E, E):
        kg, kh = G.conj(k, g), G.conj(k, h)
        _compare(V, bad, "2'", _word(Step("T", (g, h, e))),
                 _word(Step("C", (g, k)), Step("C", (h, k), 1), Step("T", (kg, kh, k)),
                       Step("C", (mul(kg, kh), inv[k]))),
                 obj((g, e), (h, e)))
        _compare(V, bad, "2'", _word(Step("T", (g, h, e))),
                 _word(Step("II", (k, k)), Step("T", (g, h, k)), Step("II", (inv[k],))),
                 obj((g, e), (h, e)))
    rep.add("2') cylinder and gauge diagrams", bad[0] is None, witness=bad[0])

    bad = [None]
    for g, k in product(E, E):
        src = obj((g, e), (g, e, -1))
        _compare(V, bad, "3'", _word(Step("C", (g,))),
                 _word(Step("C", (g, k)), Step("C", (g, k), 1), Step("C", (G.conj(k, g),))), src)
        _compare(V, bad, "3'", _word(Step("C", (g,))),
                 _word(Step("II", (k, k)), Step("C", (g,))), src)
    rep.add("3') metric cylinder and gauge diagrams", bad[0] is None, witness=bad[0])

    bad = [None]
    for g, h in product(E, E):
        w = _word(Step("E", (g, h)))
        _compare(V, bad, "4'", w, w, obj((G.commutator(g, h), e)), rhs_way=1)
    rep.add("4') torus two gluings", bad[0] is None, witness=bad[0])

    bad = [None]
    for g, k in product(E, E):
        _compare(V, bad, "vi", _word(Step("C", (g, e))), CobordismWord(), obj((g, e)))
    rep.add("vi) identity cylinders", bad[0] is None, witness=bad[0])

    A = A if A is not None else unramond(V)
    bad = None
    for g, k in product(E, E):
        f = eval_word(V, _word(Step("C", (g, k)), Step("II", (inv[k],))), obj((g, e)))
        for i in V.sectors[g]:
            want = {(r,): c for r, c in A.act(k, {i: ONE}).items()}
            if not sparse.equal(f.images[(i,)], want):
                bad = (f"C[{G.names[g]};{G.names[k]}] ; II[{G.names[inv[k]]}]", V.labels[i])
                break
        if bad:
            break
    rep.add("spectral flow recovers phi", bad is None, witness=bad)
    return rep


def spectral_flow_action(V: Union[RamondSpace, GFrobenius], k: int) -> list[dict[int, dict[int, Cyclotomic]]]:
    """The action of k read off from II_{k^-1} after C^e_{g,k}, sector by sector."""
    V = _ramond(V)
    G = V.group
    out = {}
    for g in range(G.order):
        f = eval_word(V, _word(Step("C", (g, k)), Step("II", (G.inv[k],))), obj((g, 0)))
        for (i,), img in f.images.items():
            out[i] = {r[0]: c for r, c in img.items()}
    return out
