"""Session files, command dispatch and report emission.

Session grammar (one declaration per line, ``#`` starts a comment):

    field auto | INT
    vars z [y ...]
    weights 1/4 [...]
    poly f = <polynomial>
    group <gen> = [[a, b], [c, d]]        (repeat for more generators)
    parity <gen> = even | odd
    torsion trivial | table(g, h: <scalar>; ...)
    cocycle closed | solve | table(g, h: k:<scalar>, ...; ...)

Optional run settings: ``command <name>``, ``out <path>``, ``dump <path>``,
``verbose <int>``.  Exit codes: 0 pass, 2 parse error, 3 precondition or
audit failure, 4 resource bound.
"""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from pathlib import Path
from typing import Optional, Sequence

from . import gfrob, mirror, tqft
from .errors import (InputSyntaxError, OrbfrobError, ParseFailure, PreconditionError,
                     ResourceLimit, UndeclaredVariable, WeightMismatch)
from .exact import Cyclotomic, MultiPoly
from .frobenius import char_series, check_frobenius, format_series
from .frobenius import dump as frob_dump
from .gfrob import GFrobenius, RamondSpace
from .group import DiscreteTorsion, MatrixGroup, ParityChoice, generate_group
from .jacobian import (JacobianOrbifoldInput, OrbifoldBuild, an_isomorphism, build_orbifold,
                       build_special, dn_isomorphism)
from .report import Report
from .special import dump_cocycles, solve_gamma
from .textio import parse_poly, parse_scalar, parse_vec, scalar_text, split_top, vec_text

HEADER = "# orbfrob session v1"
COMMANDS = ("build", "check", "invariants", "dual", "series", "tqft-check", "solve-gamma",
            "tensor", "sum", "braided")
EXIT_OK, EXIT_PARSE, EXIT_FAIL, EXIT_RESOURCE = 0, 2, 3, 4

Matrix = list[list[Cyclotomic]]


@dataclass
class SessionConfig:
    field_order: Optional[int] = None
    vars: list[str] = field(default_factory=list)
    weights: list[Fraction] = field(default_factory=list)
    poly_name: str = "f"
    poly_text: str = ""
    f: Optional[MultiPoly] = None
    generators: list[tuple[str, str]] = field(default_factory=list)
    matrices: list[Matrix] = field(default_factory=list)
    parity: list[tuple[str, str]] = field(default_factory=list)
    torsion: str = "trivial"
    torsion_table: dict[tuple[str, str], Cyclotomic] = field(default_factory=dict)
    cocycle: str = "closed"
    cocycle_table: dict[tuple[str, str], dict[int, Cyclotomic]] = field(default_factory=dict)
    command: Optional[str] = None
    out: Optional[str] = None
    dump: Optional[str] = None
    verbose: int = 0
    positions: dict[str, tuple[int, int]] = field(default_factory=dict, compare=False)

    @property
    def ambient_order(self) -> int:
        """The declared field order, or the lcm of every scalar order and weight denominator."""
        return self.field_order if self.field_order is not None else self.auto_order()

    def auto_order(self) -> int:
        M = 1
        for q in self.weights:
            M = lcm(M, q.denominator)
        for c in _scalars(self):
            M = lcm(M, _min_order(c))
        return M


def _min_order(c: Cyclotomic) -> int:
    arg = c.root_of_unity_arg()
    if arg is not None:
        return arg.denominator
    return c.order


def _scalars(cfg: SessionConfig):
    if cfg.f is not None:
        yield from cfg.f.terms.values()
    for m in cfg.matrices:
        for row in m:
            yield from row
    yield from cfg.torsion_table.values()
    for v in cfg.cocycle_table.values():
        yield from v.values()


# parsing

_DECL = re.compile(r"(\w+)\s*=\s*(.*)$")
_TABLE = re.compile(r"table\s*\((.*)\)\s*$")


def _col(raw: str, part: str) -> int:
    k = raw.find(part)
    return k + 1 if k >= 0 else 1


def parse_matrix(text: str, line: int = 0, col: int = 1) -> Matrix:
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise InputSyntaxError("matrix must be written [[...], ...]", line, col)
    inner = s[1:-1]
    rows = []
    pos = 0
    for m in re.finditer(r"\[([^\[\]]*)\]", inner):
        gap = inner[pos:m.start()].strip()
        if gap not in ("", ","):
            raise InputSyntaxError(f"unexpected {gap!r} between rows", line, col + 1 + pos)
        rows.append([parse_scalar(x, line, col + 2 + m.start()) for x in split_top(m.group(1), ",")])
        pos = m.end()
    if inner[pos:].strip() or not rows:
        raise InputSyntaxError("malformed matrix", line, col + 1 + pos)
    if any(len(r) != len(rows) for r in rows):
        raise InputSyntaxError("matrix must be square", line, col)
    return rows


def _table_entries(body: str, line: int, col: int) -> list[tuple[str, str, str]]:
    out = []
    for entry in split_top(body, ";"):
        if not entry.strip():
            continue
        head, sep, val = entry.partition(":")
        names = [x.strip() for x in head.split(",")]
        if not sep or len(names) != 2 or not all(names):
            raise InputSyntaxError(f"expected 'g, h: value', got {entry.strip()!r}", line, col)
        out.append((names[0], names[1], val.strip()))
    return out


def parse_input(text: str) -> SessionConfig:
    cfg = SessionConfig()
    seen: dict[str, int] = {}
    lines = text.splitlines()
    body = [(ln, raw) for ln, raw in enumerate(lines, start=1)
            if raw.split("#", 1)[0].strip()]
    if not body:
        raise InputSyntaxError("empty session: expected declarations", max(len(lines), 1), 1)
    pending_poly = None
    for ln, raw in body:
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.lstrip()
        indent = len(line) - len(stripped) + 1
        key, _, rest = stripped.partition(" ")
        rest = rest.strip()
        after = stripped[len(key):]
        rcol = indent + len(key) + len(after) - len(after.lstrip())
        if key in seen and key not in ("group", "parity"):
            raise InputSyntaxError(f"duplicate {key!r} declaration (first on line {seen[key]})", ln, indent)
        seen.setdefault(key, ln)
        cfg.positions.setdefault(key, (ln, rcol))
        if key == "field":
            if rest == "auto":
                cfg.field_order = None
            elif rest.isdigit() and int(rest) > 0:
                cfg.field_order = int(rest)
            else:
                raise InputSyntaxError("field expects 'auto' or a positive integer", ln, rcol)
        elif key == "vars":
            names = rest.split()
            bad = next((v for v in names if not re.fullmatch(r"[A-Za-z_]\w*", v) or v in ("w", "i")), None)
            if not names or bad is not None:
                raise InputSyntaxError(f"bad variable name {bad!r}", ln, rcol)
            if len(set(names)) != len(names):
                raise InputSyntaxError("repeated variable name", ln, rcol)
            cfg.vars = names
        elif key == "weights":
            try:
                cfg.weights = [Fraction(x) for x in rest.split()]
            except (ValueError, ZeroDivisionError):
                raise InputSyntaxError("weights must be rationals like 1/4", ln, rcol) from None
        elif key == "poly":
            m = _DECL.match(rest)
            if not m:
                raise InputSyntaxError("expected 'poly NAME = expression'", ln, rcol)
            cfg.poly_name, cfg.poly_text = m.group(1), m.group(2).strip()
            pending_poly = (ln, indent + _col(stripped, m.group(2)) - 1)
        elif key == "group":
            m = _DECL.match(rest)
            if not m:
                raise InputSyntaxError("expected 'group NAME = [[...]]'", ln, rcol)
            name, mat = m.group(1), m.group(2).strip()
            if any(name == g for g, _ in cfg.generators):
                raise InputSyntaxError(f"generator {name!r} declared twice", ln, rcol)
            cfg.matrices.append(parse_matrix(mat, ln, indent + _col(stripped, mat) - 1))
            cfg.generators.append((name, mat))
        elif key == "parity":
            m = _DECL.match(rest)
            if not m or m.group(2).strip() not in ("even", "odd"):
                raise InputSyntaxError("expected 'parity GEN = even|odd'", ln, rcol)
            cfg.parity.append((m.group(1), m.group(2).strip()))
        elif key == "torsion":
            cfg.torsion = rest
            if rest != "trivial":
                m = _TABLE.match(rest)
                if not m:
                    raise InputSyntaxError("expected 'torsion trivial' or 'torsion table(...)'", ln, rcol)
                for g, h, v in _table_entries(m.group(1), ln, rcol):
                    cfg.torsion_table[(g, h)] = parse_scalar(v, ln, rcol)
        elif key == "cocycle":
            cfg.cocycle = rest
            if rest not in ("closed", "solve"):
                m = _TABLE.match(rest)
                if not m:
                    raise InputSyntaxError("expected 'cocycle closed|solve|table(...)'", ln, rcol)
                for g, h, v in _table_entries(m.group(1), ln, rcol):
                    cfg.cocycle_table[(g, h)] = parse_vec(v, ln, rcol)
        elif key == "command":
            if rest not in COMMANDS:
                raise InputSyntaxError(f"unknown command {rest!r}", ln, rcol)
            cfg.command = rest
        elif key in ("out", "dump"):
            if not rest:
                raise InputSyntaxError(f"{key} expects a path", ln, rcol)
            setattr(cfg, key, rest)
        elif key == "verbose":
            if not rest.isdigit():
                raise InputSyntaxError("verbose expects an integer", ln, rcol)
            cfg.verbose = int(rest)
        else:
            raise InputSyntaxError(f"unknown declaration {key!r}", ln, indent)
    if not cfg.vars:
        raise InputSyntaxError("missing 'vars' declaration", body[-1][0], 1)
    if len(cfg.weights) != len(cfg.vars):
        ln = seen.get("weights", body[-1][0])
        raise WeightMismatch(f"{ln}:1: {len(cfg.weights)} weights for {len(cfg.vars)} variables",
                             witness=(len(cfg.weights), len(cfg.vars)))
    if pending_poly is None:
        raise InputSyntaxError("missing 'poly' declaration", body[-1][0], 1)
    cfg.f = parse_poly(cfg.poly_text, cfg.vars, cfg.weights, *pending_poly)
    if any(len(m) != len(cfg.vars) for m in cfg.matrices):
        ln = seen["group"]
        raise InputSyntaxError(f"generators must be {len(cfg.vars)}x{len(cfg.vars)}", ln, 1)
    gens = {g for g, _ in cfg.generators}
    for g, _ in cfg.parity:
        if g not in gens:
            ln, c = cfg.positions["parity"]
            raise UndeclaredVariable(f"{ln}:{c}: parity names unknown generator {g!r}", witness=g)
    if cfg.field_order is not None:
        need = cfg.auto_order()
        if need > cfg.field_order and cfg.field_order % need and not (need % 2 == 0 and (need // 2) % 2 and
                                                         cfg.field_order % (need // 2) == 0):
            ln, c = cfg.positions["field"]
            raise InputSyntaxError(f"field order {cfg.field_order} does not contain the scalars (needs {need})", ln, c)
    return cfg


def format_config(cfg: SessionConfig) -> str:
    out = [HEADER, f"field {'auto' if cfg.field_order is None else cfg.field_order}",
           "vars " + " ".join(cfg.vars),
           "weights " + " ".join(str(w) for w in cfg.weights),
           f"poly {cfg.poly_name} = {cfg.poly_text}"]
    out.extend(f"group {g} = {m}" for g, m in cfg.generators)
    out.extend(f"parity {g} = {p}" for g, p in cfg.parity)
    out.append(f"torsion {cfg.torsion}")
    out.append(f"cocycle {cfg.cocycle}")
    if cfg.command:
        out.append(f"command {cfg.command}")
    if cfg.out:
        out.append(f"out {cfg.out}")
    if cfg.dump:
        out.append(f"dump {cfg.dump}")
    if cfg.verbose:
        out.append(f"verbose {cfg.verbose}")
    return "\n".join(out) + "\n"


# materialising a config

def session_group(cfg: SessionConfig) -> MatrixGroup:
    if not cfg.matrices:
        return generate_group([[[1 if i == j else 0 for j in range(len(cfg.vars))]
                                for i in range(len(cfg.vars))]], name="e")
    name = cfg.generators[0][0] if len(cfg.generators) == 1 else "g"
    return generate_group(cfg.matrices, name=name)


def _element(G: MatrixGroup, cfg: SessionConfig, name: str, key: str) -> int:
    if name in G.names:
        return G.names.index(name)
    gens = [g for g, _ in cfg.generators]
    if name in gens:
        return G.gen_indices[gens.index(name)]
    ln, c = cfg.positions.get(key, (0, 0))
    raise UndeclaredVariable(f"{ln}:{c}: unknown group element {name!r}", witness=name)


def orbifold_input(cfg: SessionConfig) -> JacobianOrbifoldInput:
    G = session_group(cfg)
    gens = [g for g, _ in cfg.generators]
    parity = None
    if cfg.parity:
        odd = {g for g, p in cfg.parity if p == "odd"}
        parity = ParityChoice.from_generators(G, G.gen_indices, [1 if g in odd else 0 for g in gens])
        if parity is None:
            raise PreconditionError("parity choice is not a homomorphism", witness=sorted(odd))
    torsion = None
    if cfg.torsion_table:
        values = dict(DiscreteTorsion.trivial(G).values)
        for (g, h), c in cfg.torsion_table.items():
            values[(_element(G, cfg, g, "torsion"), _element(G, cfg, h, "torsion"))] = c
        torsion = DiscreteTorsion(G, values)
    cocycle = cfg.cocycle if cfg.cocycle in ("closed", "solve") else {
        (_element(G, cfg, g, "cocycle"), _element(G, cfg, h, "cocycle")): v
        for (g, h), v in cfg.cocycle_table.items()}
    return JacobianOrbifoldInput(cfg.f, cfg.weights, G, parity, torsion, cocycle)


# commands

@dataclass
class RunResult:
    status: int
    text: str
    dump: Optional[str] = None


def _sector_table(A: GFrobenius) -> list[str]:
    G = A.group
    out = ["sector  dim  chi  labels (degree; bidegree)"]
    for g in range(G.order):
        idx = A.sectors[g]
        cells = []
        for i in idx:
            cell = A.labels[i]
            if A.degrees is not None:
                cell += f" ({A.degrees[i]}"
                if A.bidegrees is not None:
                    a, b = A.bidegrees[i]
                    cell += f"; {a},{b}"
                cell += ")"
            cells.append(cell)
        out.append(f"{G.names[g]}  {len(idx)}  {scalar_text(A.chi[g])}  " + ", ".join(cells))
    return out


def _header(cfg: SessionConfig, G: MatrixGroup) -> list[str]:
    return [f"{cfg.poly_name} = {cfg.f}",
            "weights " + " ".join(str(w) for w in cfg.weights),
            f"field Q(zeta_{cfg.ambient_order})",
            f"group order {G.order}: " + " ".join(G.names)]


def recognitions(cfg: SessionConfig, b: OrbifoldBuild) -> list[Report]:
    """Named identifications of the invariant algebra when the input has a known shape."""
    G = b.input.group
    f = cfg.f
    if len(cfg.vars) != 1 or len(f.terms) != 1:
        return []
    (e,), c = next(iter(f.terms.items()))
    reps = []
    if G.order == 2 and e % 2 == 0 and e >= 4 and G.elements[1][0][0] == -1:
        n = e // 2 + 1
        if b.input.parity(1):
            r = dn_isomorphism(b, n)
            r.title = f"invariants = D_{n}"
        else:
            r = an_isomorphism(b, n - 1)
            r.title = f"invariants = A_{n - 1}"
        reps.append(r)
    return reps


def _recognition_line(r: Report) -> str:
    name = r.title.split("= ", 1)[1]
    return f"invariants ≅ {name}: {'PASS' if r.ok else 'FAIL'}"


def cmd_build(cfg: SessionConfig) -> RunResult:
    b = build_orbifold(orbifold_input(cfg))
    A = b.algebra
    out = _header(cfg, b.input.group) + [f"convention {b.convention}"] + _sector_table(A)
    out += b.report.lines()
    ok = b.report.ok
    for r in recognitions(cfg, b):
        out.append(_recognition_line(r))
        if cfg.verbose:
            out += r.lines()
        ok = ok and r.ok
    out.append(f"build: {'PASS' if ok else 'FAIL'}")
    return RunResult(EXIT_OK if ok else EXIT_FAIL, "\n".join(out) + "\n",
                     gfrob.dump(A) + dump_cocycles(b.special))


def cmd_invariants(cfg: SessionConfig) -> RunResult:
    b = build_orbifold(orbifold_input(cfg))
    inv = gfrob.invariants(b.algebra)
    alg = inv.algebra
    out = [f"dim A^G = {len(inv.basis)}", "basis " + " ".join(alg.labels),
           f"sum chi^-2 = {scalar_text(inv.criterion)} (|G| = {b.input.group.order})"]
    ok = True
    if inv.frobenius:
        rep = check_frobenius(alg)
        out += rep.lines()
        ok = rep.ok
    else:
        out += [f"note: {n}" for n in alg.notes]
    for r in recognitions(cfg, b):
        out.append(_recognition_line(r))
        ok = ok and r.ok
    if alg.graded:
        out.append("series " + format_series(char_series(alg)))
    out.append(f"invariants: {'PASS' if ok else 'FAIL'}")
    return RunResult(EXIT_OK if ok else EXIT_FAIL, "\n".join(out) + "\n", frob_dump(alg))


def cmd_series(cfg: SessionConfig) -> RunResult:
    b = build_orbifold(orbifold_input(cfg))
    A = b.algebra
    out = ["A_e: " + format_series(char_series(A.untwisted())),
           "A: " + format_series(char_series(A.as_frobenius()))]
    inv = gfrob.invariants(A)
    if inv.algebra.graded:
        out.append("A^G: " + format_series(char_series(inv.algebra)))
    return RunResult(EXIT_OK, "\n".join(out) + "\n")


def cmd_dual(cfg: SessionConfig, enclosing: Optional[SessionConfig] = None) -> RunResult:
    b = build_orbifold(orbifold_input(cfg))
    big = build_orbifold(orbifold_input(enclosing)) if enclosing is not None else None
    verdict = mirror.is_euler(b, big)
    out = [f"Euler: {'yes' if verdict else 'no'} ({verdict.reason})"]
    if not verdict:
        out.append("dual: FAIL")
        return RunResult(EXIT_FAIL, "\n".join(out) + "\n")
    D = mirror.dual(b, big)
    out.append(D.table())
    rep = mirror.check_dual(D, gfrob.ramond((big or b).algebra))
    out += rep.lines()
    out.append(f"type {D.kind()}")
    neg = sorted(-x for x in D.ebar_spectrum())
    out.append(f"E-spectrum equals negated Ebar-spectrum: {D.e_spectrum() == neg}")
    try:
        inv = mirror.dual_invariants_algebra(D, form="symmetric")
        out.append(f"invariants: dim {inv.dim}, type {inv.kind()}")
    except PreconditionError as exc:
        out.append(f"invariants: {exc} witness={exc.witness}")
    out.append(f"dual: {'PASS' if rep.ok else 'FAIL'}")
    return RunResult(EXIT_OK if rep.ok else EXIT_FAIL, "\n".join(out) + "\n")


def cmd_solve_gamma(cfg: SessionConfig) -> RunResult:
    S, _, conv, rep = build_special(orbifold_input(cfg))
    sols = solve_gamma(S)
    G = S.group
    out = [f"convention {conv}", f"{len(sols)} admissible cocycle(s)"]
    for n, gamma in enumerate(sols):
        out.append(f"solution {n}")
        for (g, h) in sorted(gamma):
            out.append(f"  gamma({G.names[g]},{G.names[h]}) = {vec_text(gamma[(g, h)])}")
    dump = None
    if sols:
        S.gamma = sols[0]
        dump = dump_cocycles(S)
    return RunResult(EXIT_OK if sols else EXIT_FAIL, "\n".join(out) + "\n", dump)


def _relations(A: GFrobenius | RamondSpace) -> Report:
    if isinstance(A, RamondSpace):
        return tqft.check_relations(A)
    return tqft.check_relations(gfrob.ramond(A), A)


def cmd_tqft(cfg: SessionConfig) -> RunResult:
    b = build_orbifold(orbifold_input(cfg))
    rep = _relations(b.algebra)
    return RunResult(EXIT_OK if rep.ok else EXIT_FAIL, str(rep) + "\n")


def check_dump(text: str, relations: bool = False) -> RunResult:
    A = gfrob.load(text)
    rep = gfrob.check_ramond(A) if isinstance(A, RamondSpace) else gfrob.check_gfrob(A)
    if relations and rep.ok:
        rep.extend(_relations(A), "tqft: ")
    return RunResult(EXIT_OK if rep.ok else EXIT_FAIL, str(rep) + "\n")


def cmd_combine(op: str, a: SessionConfig, b: SessionConfig) -> RunResult:
    A = build_orbifold(orbifold_input(a)).algebra
    B = build_orbifold(orbifold_input(b)).algebra
    if op == "sum":
        T = gfrob.gf_direct_sum(A, B)
        rep = gfrob.check_gfrob(T)
    elif op == "tensor":
        T = gfrob.gf_tensor(A, B)
        rep = gfrob.check_gfrob(T)
    else:
        T = gfrob.braided_tensor(A, B)
        rep = gfrob.check_braided(T)
    out = _sector_table(T) + rep.lines()
    return RunResult(EXIT_OK if rep.ok else EXIT_FAIL, "\n".join(out) + "\n", gfrob.dump(T))


def run(cfg: SessionConfig, enclosing: Optional[SessionConfig] = None,
        other: Optional[SessionConfig] = None) -> RunResult:
    """Run cfg.command; module errors propagate to the caller."""
    cmd = cfg.command or "build"
    if cmd == "build":
        return cmd_build(cfg)
    if cmd == "invariants":
        return cmd_invariants(cfg)
    if cmd == "series":
        return cmd_series(cfg)
    if cmd == "dual":
        return cmd_dual(cfg, enclosing)
    if cmd == "solve-gamma":
        return cmd_solve_gamma(cfg)
    if cmd == "tqft-check":
        return cmd_tqft(cfg)
    if cmd in ("tensor", "sum", "braided"):
        if other is None:
            raise PreconditionError(f"{cmd} needs a second session")
        return cmd_combine(cmd, cfg, other)
    raise PreconditionError(f"command {cmd!r} needs a dump, not a session")


def exit_code(exc: BaseException) -> int:
    if isinstance(exc, ParseFailure):
        return EXIT_PARSE
    if isinstance(exc, ResourceLimit):
        return EXIT_RESOURCE
    return EXIT_FAIL


def _read_session(path: str) -> SessionConfig:
    return parse_input(Path(path).read_text(encoding="utf-8"))


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = argparse.ArgumentParser(prog="orbfrob", description="G-twisted Frobenius algebra workbench")
    ap.add_argument("command", choices=COMMANDS + ("format",))
    ap.add_argument("input", help="session file (or dump file for 'check' and 'tqft-check --from-dump')")
    ap.add_argument("second", nargs="?", help="second session for tensor, sum and braided")
    ap.add_argument("--enclosing", help="session whose group contains the twist, for 'dual'")
    ap.add_argument("--from-dump", action="store_true", help="tqft-check reads a dump file")
    ap.add_argument("--out", help="write the human report here as well")
    ap.add_argument("--dump", help="write the machine dump here")
    ap.add_argument("-v", "--verbose", action="count", default=0)
    args = ap.parse_args(argv)
    try:
        if args.command == "check" or (args.command == "tqft-check" and args.from_dump):
            res = check_dump(Path(args.input).read_text(encoding="utf-8"),
                             relations=args.command == "tqft-check")
            out_path, dump_path = args.out, None
        else:
            cfg = _read_session(args.input)
            if args.command == "format":
                sys.stdout.write(format_config(cfg))
                return EXIT_OK
            cfg.command = args.command
            cfg.verbose = max(cfg.verbose, args.verbose)
            enclosing = _read_session(args.enclosing) if args.enclosing else None
            other = _read_session(args.second) if args.second else None
            res = run(cfg, enclosing, other)
            out_path, dump_path = args.out or cfg.out, args.dump or cfg.dump
    except OrbfrobError as exc:
        code = exit_code(exc)
        msg = f"error: {type(exc).__name__}: {exc}"
        if exc.witness is not None and not isinstance(exc, InputSyntaxError):
            msg += f" witness={exc.witness}"
        print(msg, file=sys.stderr)
        return code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    sys.stdout.write(res.text)
    if out_path:
        Path(out_path).write_text(res.text, encoding="utf-8")
    if dump_path and res.dump is not None:
        Path(dump_path).write_text(res.dump, encoding="utf-8")
    return res.status


if __name__ == "__main__":
    raise SystemExit(main())
