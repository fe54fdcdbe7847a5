"""Command-line front end: a small expression language, profiles, growth classes,
catalogs, normal pairs, cover operations and the self-test suite."""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass

from sympy.combinatorics import Permutation as SympyPerm
from sympy.combinatorics import PermutationGroup

from . import acceptance, covers
from .classify import check_gap, classify_expr, gamma
from .errors import LimitExceeded, OligoError, ParseError, SpecInvalid, Unsupported
from .expr import Atom, Finite, GroupExpr, Prod, WrOmega, oracle_profile, profile, validate
from .permgrp import DEFAULT_ORDER_LIMIT, FiniteGroup, Permutation, m_sensitivity, trivial_group
from .qatoms import (FiberCoverSpec, QReduct, classify_normal_pair, enumerate_S_catalog,
                     hst_catalog, hst_name)
from .series import DEFAULT_ORDER
from .wordmodel import DEFAULT_BFS_CAP, atom_sensitivity

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_LIMIT, EXIT_CHECK = 0, 1, 2, 3, 4

# -- expression language -----------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<word>[A-Za-z_]+)|(?P<punct>[{}();,=<]))")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int


def _line_col(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def tokenize(text: str) -> list[Token]:
    out, pos = [], 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            return out
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            line, col = _line_col(text, pos)
            raise ParseError("unexpected character", pos, line, col, text[pos])
        kind = m.lastgroup
        out.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()


class _Parser:
    def __init__(self, text: str, order_limit: int):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.order_limit = order_limit

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok if tok is not None else self.peek()
        offset = tok.offset if tok is not None else len(self.text)
        line, col = _line_col(self.text, offset)
        return ParseError(message, offset, line, col, tok.text if tok else None)

    def peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, text: str | None = None, kind: str | None = None) -> Token:
        tok = self.peek()
        if tok is None or (text is not None and tok.text != text) or (kind and tok.kind != kind):
            want = repr(text) if text is not None else kind
            raise self.error(f"expected {want}")
        self.i += 1
        return tok

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.text == text

    def integer(self) -> int:
        return int(self.take(kind="int").text)

    def perm(self, degree: int) -> Permutation:
        start = self.peek()
        cycles = []
        self.take("(")
        while True:
            cyc = []
            while not self.at(")"):
                cyc.append(self.integer())
            self.take(")")
            if cyc:
                cycles.append(cyc)
            if not self.at("("):
                break
            self.take("(")
        try:
            return Permutation.from_cycles(cycles, degree)
        except ValueError as exc:
            raise self.error(str(exc), start) from None

    def perms(self, degree: int) -> tuple[Permutation, ...]:
        out = [self.perm(degree)]
        while self.at(","):
            self.take(",")
            out.append(self.perm(degree))
        return tuple(g for g in out if not g.is_identity())

    def base(self) -> QReduct:
        tok = self.peek()
        if tok is None or tok.text not in ("<", "betw", "cyc", "sep", "sym"):
            raise self.error("expected a base: <, betw, cyc, sep or sym")
        self.i += 1
        return QReduct.parse(tok.text)

    def expr(self) -> GroupExpr:
        tok = self.peek()
        if tok is None:
            raise self.error("expected an expression")
        if tok.text == "triv":
            self.i += 1
            return Finite(trivial_group(1))
        if tok.text == "fin":
            self.i += 1
            self.take("{")
            deg_tok = self.peek()
            degree = self.integer()
            if degree < 1:
                raise self.error("degree must be positive", deg_tok)
            self.take(";")
            gens = self.perms(degree)
            self.take("}")
            return Finite(FiniteGroup(degree, gens, self.order_limit))
        if tok.text == "Q":
            self.i += 1
            return Atom(_point_atom(self.base()))
        if tok.text == "cover":
            self.i += 1
            return Atom(self.cover())
        if tok.text == "prod":
            self.i += 1
            self.take("(")
            kids = [self.expr()]
            while self.at(","):
                self.take(",")
                kids.append(self.expr())
            self.take(")")
            return Prod(tuple(kids))
        if tok.text == "wr_omega":
            self.i += 1
            self.take("(")
            child = self.expr()
            self.take(")")
            return WrOmega(child)
        raise self.error("expected triv, fin, Q, cover, prod or wr_omega")

    def field(self, name: str) -> None:
        self.take(name)
        self.take("=")

    def cover(self) -> FiberCoverSpec:
        self.take("{")
        self.field("F")
        size_tok = self.peek()
        k = self.integer()
        if k < 1:
            raise self.error("fiber size must be positive", size_tok)
        self.take(";")
        self.field("H")
        H = FiniteGroup(k, self.perms(k), self.order_limit)
        self.take(";")
        self.field("L")
        L = FiniteGroup(k, self.perms(k), self.order_limit)
        self.take(";")
        self.field("base")
        base = self.base()
        flip = turn = None
        while self.at(";"):
            self.take(";")
            name = self.peek()
            if name is not None and name.text == "flip" and flip is None:
                self.field("flip")
                flip = self.perm(k)
            elif name is not None and name.text == "turn" and turn is None:
                self.field("turn")
                turn = self.perm(k)
            else:
                raise self.error("expected flip or turn")
        self.take("}")
        return FiberCoverSpec(k, H, L, base, flip, turn)

    def parse(self) -> GroupExpr:
        e = self.expr()
        if self.peek() is not None:
            raise self.error("trailing input")
        return e


def _point_atom(base: QReduct) -> FiberCoverSpec:
    one = trivial_group(1)
    if base is QReduct.EQ:
        return FiberCoverSpec(1, one, one, base)
    turn = Permutation.identity(1) if base.has_turn else None
    return FiberCoverSpec(1, one, one, base, None, turn)


def parse_expr(text: str, order_limit: int = DEFAULT_ORDER_LIMIT) -> GroupExpr:
    """Parse the expression language; errors carry line, column and token."""
    return _Parser(text, order_limit).parse()


def _perms_text(G: FiniteGroup) -> str:
    gens = [str(g) for g in G.generators]
    return ", ".join(gens) if gens else "()"


def print_expr(e: GroupExpr) -> str:
    """Canonical text that parses back to a structurally equal expression."""
    if isinstance(e, Finite):
        if e.group.degree == 1 and not e.group.generators:
            return "triv"
        return f"fin{{{e.group.degree}; {_perms_text(e.group)}}}"
    if isinstance(e, Atom):
        s = e.spec
        if s.fiber == 1 and not s.H.generators and not s.L.generators \
                and s.key() == _point_atom(s.base).key():
            return f"Q {s.base.dsl}"
        out = f"cover{{F={s.fiber}; H={_perms_text(s.H)}; L={_perms_text(s.L)}; base={s.base.dsl}"
        if s.flip is not None:
            out += f"; flip={s.flip}"
        if s.turn is not None:
            out += f"; turn={s.turn}"
        return out + "}"
    if isinstance(e, Prod):
        return "prod(" + ", ".join(print_expr(c) for c in e.children) + ")"
    return f"wr_omega({print_expr(e.child)})"


# -- limits and output -----------------------------------------------------------------

def _limit(flag_value: int | None, env_name: str, default: int) -> int:
    """Flag beats environment variable beats built-in default."""
    if flag_value is not None:
        return flag_value
    raw = os.environ.get(env_name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise _Usage(f"{env_name} must be an integer, got {raw!r}") from None


class _Usage(Exception):
    pass


class _Parser_(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise _Usage(f"cannot read {path}: {exc}") from None


# -- commands ------------------------------------------------------------------------------

def cmd_profile(args, limits) -> int:
    e = validate(parse_expr(args.expr, limits["order_limit"]))
    N = args.n if args.n is not None else limits["series_n"]
    u = profile(e, N).coefficients
    oracle = None
    if args.oracle:
        oracle = oracle_profile(e, N, bfs_cap=limits["bfs_cap"]).coefficients
    mismatch = oracle is not None and tuple(oracle) != tuple(u)
    if args.format == "json":
        out = {"expression": print_expr(e), "n": N, "u": [str(c) for c in u]}
        if oracle is not None:
            out["oracle"] = [str(c) for c in oracle]
            out["match"] = not mismatch
        _emit(out)
    elif args.format == "csv":
        head = "n,u,oracle,match" if oracle is not None else "n,u"
        rows = [head]
        for i, c in enumerate(u):
            rows.append(f"{i},{c},{oracle[i]},{oracle[i] == c}" if oracle is not None else f"{i},{c}")
        sys.stdout.write("\n".join(rows) + "\n")
    else:
        sys.stdout.write(print_expr(e) + "\n")
        for i, c in enumerate(u):
            extra = "" if oracle is None else f"  oracle {oracle[i]}" + ("" if oracle[i] == c else "  MISMATCH")
            sys.stdout.write(f"u_{i} = {c}{extra}\n")
    return EXIT_CHECK if mismatch else EXIT_OK


def cmd_classify(args, limits) -> int:
    e = validate(parse_expr(args.expr, limits["order_limit"]))
    N = args.n if args.n is not None else limits["series_n"]
    growth = classify_expr(e, N)
    out = {"expression": print_expr(e), "growth": growth.to_json()}
    if growth.d is not None:
        out["gamma"] = gamma(growth.d).to_json()
    try:
        out["gap"] = check_gap(e, N).to_json()
    except Unsupported as exc:
        out["gap"] = {"skipped": str(exc)}
    if args.format == "json":
        _emit(out)
    else:
        sys.stdout.write(f"{out['expression']}\nclass: {growth.tag}\n")
        if growth.d is not None:
            g = out["gamma"]
            sys.stdout.write(f"d: {growth.d}\ngamma: {g['value']} in [{g['lo']}, {g['hi']}]\n")
        if growth.degree_estimate is not None:
            sys.stdout.write(f"degree estimate: {growth.degree_estimate:.4f}\n")
        for line in growth.justification:
            sys.stdout.write(f"  because {line}\n")
        gap = out["gap"]
        if "skipped" in gap:
            sys.stdout.write(f"gap check: skipped ({gap['skipped']})\n")
        else:
            sys.stdout.write(f"gap check at N={gap['N']}: max deviation {gap['max_deviation']}, "
                             f"passed {gap['passed']}\n")
    return EXIT_OK


def cmd_gamma(args, limits) -> int:
    g = gamma(args.d, args.tol)
    if args.format == "json":
        _emit(g.to_json())
    else:
        j = g.to_json()
        sys.stdout.write(f"gamma_{g.d} = {j['value']}\nlo = {j['lo']}\nhi = {j['hi']}\n")
    return EXIT_OK


def schreier_sims_order(G: FiniteGroup) -> int:
    """Group order without listing elements."""
    gens = [SympyPerm(list(g.images)) for g in G.generators] or [SympyPerm(list(range(G.degree)))]
    return int(PermutationGroup(gens).order())


def _spec_row(entry) -> dict:
    return {"item": entry.item, "reduct": entry.reduct, "p_oligomorphic": entry.p_oligomorphic,
            "expression": print_expr(Atom(entry.spec)), "spec": entry.spec.to_json()}


def cmd_catalog(args, limits) -> int:
    if args.kind == "hst":
        if args.degree is None:
            raise _Usage("catalog hst needs --degree")
        rows = []
        for G in hst_catalog(args.degree):
            order = schreier_sims_order(G)
            rows.append({"name": hst_name(G, order), "order": order, "group": G.to_json()})
        if args.format == "json":
            _emit(rows)
        else:
            for r in rows:
                sys.stdout.write(f"{r['name']}\torder {r['order']}\t{', '.join(r['group']['generators'])}\n")
        return EXIT_OK
    if args.fiber is None:
        raise _Usage("catalog covers needs --fiber")
    rows = [_spec_row(e) for e in enumerate_S_catalog(args.fiber)]
    if args.format == "json":
        _emit(rows)
    else:
        for r in rows:
            sys.stdout.write(f"({r['item']})\t{r['reduct']}\t{r['expression']}\n")
    return EXIT_OK


def _spec_from_file(path: str) -> FiberCoverSpec:
    data = _load_json(path)
    if isinstance(data, dict) and "atom" in data:
        data = data["atom"]
    try:
        return FiberCoverSpec.from_json(data)
    except (KeyError, TypeError) as exc:
        raise _Usage(f"{path} is not a cover spec: {exc}") from None


def cmd_normal(args, limits) -> int:
    N, G = _spec_from_file(args.N), _spec_from_file(args.G)
    r = classify_normal_pair(N, G)
    out = {"verdict": r.verdict, "case": r.matched_case, "quotient": r.quotient_iso_tag,
           "reason": r.reason}
    if r.quotient_structure is not None:
        out["quotient_group"] = r.quotient_structure.to_json()
    if args.format == "json":
        _emit(out)
    else:
        sys.stdout.write(f"{r.verdict}")
        if r.matched_case:
            sys.stdout.write(f" (case {r.matched_case}, quotient {r.quotient_iso_tag})")
        if r.reason:
            sys.stdout.write(f": {r.reason}")
        sys.stdout.write("\n")
    return EXIT_OK


def _group_row(G: FiniteGroup) -> dict:
    return {"order": G.order, "generators": [str(g) for g in G.generators]}


def _analysis_json(an: covers.CoverAnalysis) -> dict:
    return {
        "trivial": an.trivial, "strongly_trivial": an.strongly_trivial, "split": an.split,
        "strongly_split": an.strongly_split, "linked": an.linked, "kernel_order": an.kernel.order,
        "fibers": [{"point": f.point, "fiber": list(f.fiber), "fiber_group": _group_row(f.fiber_group),
                    "binding": _group_row(f.binding),
                    "pointwise_binding": _group_row(f.pointwise_binding)} for f in an.fibers],
    }


def cmd_cover(args, limits) -> int:
    data = _load_json(args.input)
    if args.action == "build":
        Gt = covers.FiniteCover.from_json(data["linked"])
        out = covers.build_lift(Gt, covers.DescentData.from_json(data["descent"])).to_json()
    else:
        c = covers.FiniteCover.from_json(data)
        if args.action == "analyze":
            out = _analysis_json(covers.analyze(c))
        else:
            Gt, D = covers.decompose(c)
            out = {"linked": Gt.to_json(), "descent": D.to_json()}
    _emit(out)
    return EXIT_OK


def _plain(x):
    if isinstance(x, (tuple, list)):
        return [_plain(v) for v in x]
    return x if isinstance(x, (int, str, bool)) or x is None else str(x)


def cmd_sensitivity(args, limits) -> int:
    e = validate(parse_expr(args.expr, limits["order_limit"]))
    if isinstance(e, Finite):
        rep = m_sensitivity(e.group, args.m, args.max_n)
    elif isinstance(e, Atom):
        rep = atom_sensitivity(e.spec, args.m, args.max_n, bfs_cap=limits["bfs_cap"])
    else:
        raise Unsupported("sensitivity needs a finite group or a single cover atom")
    out = {"expression": print_expr(e), "m": args.m, "max_n": args.max_n, "holds": rep.holds,
           "checked_to": rep.checked_to}
    if rep.witness is not None:
        out["witness"] = _plain(rep.witness)
    if args.format == "json":
        _emit(out)
    else:
        sys.stdout.write(f"{out['expression']}: {args.m}-sensitive up to n={rep.checked_to}: {rep.holds}\n")
    return EXIT_OK if rep.holds else EXIT_CHECK


def cmd_selftest(args, limits) -> int:
    results = acceptance.run_all(args.level)
    for r in results:
        sys.stdout.write(r.line() + "\n")
    return EXIT_OK if all(r.ok for r in results) else EXIT_CHECK


# -- entry point -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser_(prog="oligogrowth", description=__doc__)
    p.add_argument("--order-limit", type=int, default=None)
    p.add_argument("--bfs-cap", type=int, default=None)
    p.add_argument("--series-n", type=int, default=None)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser_)

    def fmt(q, choices=("text", "json")):
        q.add_argument("--format", choices=choices, default="text")

    q = sub.add_parser("profile", help="exact u-series of an expression")
    q.add_argument("expr")
    q.add_argument("--n", type=int, default=None)
    q.add_argument("--oracle", action="store_true", help="cross-check by brute force")
    fmt(q, ("text", "csv", "json"))
    q.set_defaults(run=cmd_profile)

    q = sub.add_parser("classify", help="growth class and rate check")
    q.add_argument("expr")
    q.add_argument("--n", type=int, default=None)
    fmt(q)
    q.set_defaults(run=cmd_classify)

    q = sub.add_parser("gamma", help="certified growth constant")
    q.add_argument("d", type=int)
    q.add_argument("--tol", type=float, default=1e-12)
    fmt(q)
    q.set_defaults(run=cmd_gamma)

    q = sub.add_parser("catalog", help="highly set-transitive groups or cover atoms")
    q.add_argument("kind", choices=("hst", "covers"))
    q.add_argument("--degree", type=int)
    q.add_argument("--fiber", type=int)
    fmt(q)
    q.set_defaults(run=cmd_catalog)

    q = sub.add_parser("normal", help="normality of one atom spec in another")
    q.add_argument("N")
    q.add_argument("G")
    fmt(q)
    q.set_defaults(run=cmd_normal)

    q = sub.add_parser("cover", help="finite cover operations")
    q.add_argument("action", choices=("analyze", "build", "decompose"))
    q.add_argument("--input", required=True)
    q.set_defaults(run=cmd_cover)

    q = sub.add_parser("sensitivity", help="m-sensitivity of a finite group or atom")
    q.add_argument("expr")
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--max-n", type=int, required=True)
    fmt(q)
    q.set_defaults(run=cmd_sensitivity)

    q = sub.add_parser("selftest", help="run the acceptance suite")
    q.add_argument("--level", choices=acceptance.LEVELS, default="quick")
    q.set_defaults(run=cmd_selftest)
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        limits = {"order_limit": _limit(args.order_limit, "ORDER_LIMIT", DEFAULT_ORDER_LIMIT),
                  "bfs_cap": _limit(args.bfs_cap, "BFS_CAP", DEFAULT_BFS_CAP),
                  "series_n": _limit(args.series_n, "SERIES_N", DEFAULT_ORDER)}
        return args.run(args, limits)
    except _Usage as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_USAGE
    except LimitExceeded as exc:
        sys.stderr.write(f"limit exceeded: {exc}\n")
        return EXIT_LIMIT
    except (SpecInvalid, OligoError, ValueError) as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
