"""Sparse vectors over cyclotomic scalars: dict index -> nonzero value."""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .exact import ONE, Cyclotomic

Vec = dict[int, Cyclotomic]


def unit(i: int) -> Vec:
    return {i: ONE}


def add_into(target: Vec, v: Mapping[int, Cyclotomic], c=None) -> Vec:
    for k, x in v.items():
        y = x if c is None else x * c
        if k in target:
            s = target[k] + y
            if s:
                target[k] = s
            else:
                del target[k]
        elif y:
            target[k] = y
    return target


def scale(v: Mapping[int, Cyclotomic], c) -> Vec:
    c = Cyclotomic.coerce(c)
    if not c:
        return {}
    return {k: x * c for k, x in v.items()}


def combine(terms: Iterable[tuple[Mapping[int, Cyclotomic], Cyclotomic]]) -> Vec:
    out: Vec = {}
    for v, c in terms:
        add_into(out, v, c)
    return out


def dense(v: Mapping[int, Cyclotomic], n: int) -> list[Cyclotomic]:
    from .exact import ZERO

    return [v.get(i, ZERO) for i in range(n)]


def from_dense(xs: Sequence[Cyclotomic], offset: int = 0) -> Vec:
    return {i + offset: Cyclotomic.coerce(x) for i, x in enumerate(xs) if x}


def equal(u: Mapping[int, Cyclotomic], v: Mapping[int, Cyclotomic]) -> bool:
    keys = set(u) | set(v)
    from .exact import ZERO

    return all(u.get(k, ZERO) == v.get(k, ZERO) for k in keys)
