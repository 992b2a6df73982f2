"""``diffract`` command line.

Every invocation rebuilds the pipeline group -> subgroup -> cosets ->
representatives -> fibration -> diffracted group up to the stage the
subcommand needs.

Exit codes: 0 ok, 1 law or agreement failure, 2 parse/input error,
3 not a group, 4 requires a transversal, 5 unknown law, 6 unknown element.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import errors
from .diffracted import DiffractedGroup, build, rewrite_product
from .diffraction import Fibration, build_fibration
from .families import parse_builtin
from .group import CosetDecomposition, FiniteGroup, Subgroup, left_cosets, subgroup_generate
from .io import load_gens, load_gtab
from .laws import LAW_IDS, LAWS, run_laws
from .transversal import Transversal, TransversalStrategy, choose

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_NOT_A_GROUP = 3
EXIT_REQUIRES_TRANSVERSAL = 4
EXIT_UNKNOWN_LAW = 5
EXIT_UNKNOWN_ELEMENT = 6


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


@dataclass
class Session:
    group: FiniteGroup
    subgroup: Optional[Subgroup] = None
    cosets: Optional[CosetDecomposition] = None
    transversal: Optional[Transversal] = None
    fibration: Optional[Fibration] = None
    diffracted: Optional[DiffractedGroup] = None
    config: dict = field(default_factory=dict)

    def require(self, stage: str):
        if getattr(self, stage) is None:
            raise CliError(EXIT_PARSE, f"stage {stage!r} has not been built")
        return getattr(self, stage)


# argument parsing -------------------------------------------------------------


def _global_flags(p: argparse.ArgumentParser, suppress: bool):
    # subparsers repeat the global flags with suppressed defaults so that they
    # may appear either before or after the subcommand
    def dflt(value):
        return argparse.SUPPRESS if suppress else value

    p.add_argument("--json", action="store_true", default=dflt(False),
                   help="machine-readable output")
    p.add_argument("--seed", type=int, default=dflt(0),
                   help="seed for 'random' strategies without one and for bench sampling")
    p.add_argument("--max-order", type=int, default=dflt(None),
                   help="closure cap for generator files (default: $DIFFRACT_MAX_ORDER or 20000)")


def _source_flags(p: argparse.ArgumentParser):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--builtin", metavar="SPEC", help="e.g. cyclic:6, dihedral:4, symmetric:4, quaternion")
    src.add_argument("--table", metavar="FILE", help=".gtab multiplication table")
    src.add_argument("--gens", metavar="FILE", help=".gens permutation generators")


def _subgroup_flags(p):
    p.add_argument("--subgroup-gens", default=None, metavar="LIST",
                   help="comma-separated element indices or labels ('' for the trivial subgroup)")


def _transversal_flags(p):
    p.add_argument("--strategy", default="min", help="min | random:SEED | list:i1,i2,...")
    p.add_argument("--allow-non-transversal", action="store_true",
                   help="do not force the identity to represent H itself")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="diffract", description=__doc__.splitlines()[0])
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_, stage):
        p = sub.add_parser(name, help=help_)
        _global_flags(p, suppress=True)
        _source_flags(p)
        if stage >= 1:
            _subgroup_flags(p)
        if stage >= 2:
            _transversal_flags(p)
        return p

    add("load", "load a group and summarise it", 0)
    add("info", "element table and law registry", 1)
    add("subgroup", "generate a subgroup", 1)
    add("cosets", "left cosets of the subgroup", 1)
    add("transversal", "choose coset representatives", 2)
    p = add("diffract", "build the diffracted group T▽H", 2)
    p.add_argument("--emit", metavar="FILE", help="write the diffracted group as JSON")
    p.add_argument("--figures", metavar="DIR", help="render product-table figures into DIR")
    p = add("verify", "run the law suite", 2)
    p.add_argument("--laws", default="all", help="comma-separated law ids or 'all'")
    p.add_argument("--inject-fault", metavar="SPEC", default=None,
                   help="corrupt one stored entry before verifying: delta:G:T, gamma:G:T or bequeath:I:J")
    p.add_argument("--figures", metavar="DIR", help="render the law summary figure into DIR")
    p = add("rewrite", "rewrite g1*g2 through T and H", 2)
    p.add_argument("g1")
    p.add_argument("g2")
    p = add("bench", "time three multiplication paths", 2)
    p.add_argument("--reps", type=int, default=100000)
    return parser


# pipeline ---------------------------------------------------------------------


def _load_group(args) -> FiniteGroup:
    cap = args.max_order
    if args.builtin:
        return parse_builtin(args.builtin)
    if args.table:
        return load_gtab(args.table)
    return load_gens(args.gens, cap=cap)


def _parse_elements(G: FiniteGroup, text: str) -> list[int]:
    out = []
    for tok in text.split(","):
        if tok.strip():
            try:
                out.append(G.element(tok))
            except errors.IndexOutOfRange as exc:
                raise CliError(EXIT_UNKNOWN_ELEMENT, str(exc)) from None
    return out


def _strategy(args, G) -> TransversalStrategy:
    text = args.strategy.strip()
    if text == "random":
        text = f"random:{args.seed}"
    try:
        return TransversalStrategy.parse(text, G)
    except errors.IndexOutOfRange as exc:
        raise CliError(EXIT_UNKNOWN_ELEMENT, str(exc)) from None


def open_session(args, stage: int) -> Session:
    """Build the session up to ``stage``: 0 group, 1 subgroup+cosets, 2 transversal+fibration."""
    G = _load_group(args)
    s = Session(G, config={"json": args.json, "seed": args.seed, "max_order": args.max_order})
    if stage < 1:
        return s
    gens = getattr(args, "subgroup_gens", None)
    gens = _parse_elements(G, gens) if gens is not None else list(range(G.order))
    s.subgroup = subgroup_generate(G, gens)
    s.cosets = left_cosets(G, s.subgroup)
    if stage < 2:
        return s
    strat = _strategy(args, G)
    s.config["strategy"] = strat.describe()
    s.transversal = choose(s.cosets, strat, allow_non_transversal=args.allow_non_transversal)
    s.fibration = build_fibration(s.transversal)
    return s


def _labels(G, xs):
    return [G.label(int(x)) for x in xs]


def _emit(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


# commands -----------------------------------------------------------------------


def cmd_load(args, out) -> int:
    s = open_session(args, 0)
    G = s.group
    if args.json:
        print(_emit({"order": G.order, "abelian": G.is_abelian(),
                     "identity": G.label(G.identity)}), file=out)
    else:
        kind = "abelian" if G.is_abelian() else "non-abelian"
        print(f"order {G.order}, {kind}, identity {G.label(G.identity)}", file=out)
    return EXIT_OK


def cmd_info(args, out) -> int:
    s = open_session(args, 1)
    G, H = s.group, s.subgroup
    elems = [{"index": g, "label": G.label(g), "order": G.element_order(g),
              "in_subgroup": g in H} for g in range(G.order)]
    if args.json:
        print(_emit({"name": G.name, "order": G.order, "abelian": G.is_abelian(),
                     "elements": elems, "laws": list(LAW_IDS)}), file=out)
        return EXIT_OK
    print(f"{G.name or 'group'}: order {G.order}, {'abelian' if G.is_abelian() else 'non-abelian'}", file=out)
    for e in elems:
        mark = "*" if e["in_subgroup"] else " "
        print(f"{mark} {e['index']:>4}  {e['label']:<16} order {e['order']}", file=out)
    print("laws:", file=out)
    for law_id in LAW_IDS:
        tag = " (requires transversal)" if LAWS[law_id].needs_transversal else ""
        print(f"  {law_id}{tag}", file=out)
    return EXIT_OK


def cmd_subgroup(args, out) -> int:
    s = open_session(args, 1)
    G, H = s.group, s.subgroup
    if args.json:
        print(_emit({"order": H.order, "members": list(H.members),
                     "labels": _labels(G, H.members)}), file=out)
    else:
        print(f"|H| = {H.order}, index {G.order // H.order}", file=out)
        print("members: " + ", ".join(_labels(G, H.members)), file=out)
    return EXIT_OK


def cmd_cosets(args, out) -> int:
    s = open_session(args, 1)
    G, C = s.group, s.cosets
    if args.json:
        print(_emit({"index": C.index, "coset_of": C.coset_of.tolist(),
                     "cosets": [list(c) for c in C.cosets]}), file=out)
    else:
        for c, members in enumerate(C.cosets):
            print(f"coset {c}: {{{', '.join(_labels(G, members))}}}", file=out)
    return EXIT_OK


def cmd_transversal(args, out) -> int:
    s = open_session(args, 2)
    G, T = s.group, s.transversal
    if args.json:
        print(_emit({"strategy": s.config["strategy"], "reps": list(T.reps),
                     "is_transversal": T.is_transversal, "bar_of": T.bar_of.tolist()}), file=out)
    else:
        print(f"reps: {', '.join(_labels(G, T.reps))}", file=out)
        print(f"transversal: {'yes' if T.is_transversal else 'no (identity not a representative)'}", file=out)
    return EXIT_OK


def _need_transversal(s: Session):
    if not s.transversal.is_transversal:
        raise CliError(
            EXIT_REQUIRES_TRANSVERSAL,
            "representative system does not contain the identity; T▽H needs a transversal "
            "(use 'verify' for laws-only mode)")


def cmd_diffract(args, out) -> int:
    s = open_session(args, 2)
    _need_transversal(s)
    F = s.fibration
    D = build(F)
    report = run_laws(s.group, s.subgroup, s.transversal, ["diffracted-group", "diffracted-iso"],
                      fibration=F, diffracted=D)
    doc = D.to_json_dict()
    if args.emit:
        Path(args.emit).write_text(_emit(doc) + "\n", encoding="utf-8")
    if args.figures:
        from .plotting import plot_diffracted_tables
        d = Path(args.figures)
        d.mkdir(parents=True, exist_ok=True)
        plot_diffracted_tables(D, d / "diffracted_tables.png")
    if args.json:
        print(_emit(doc), file=out)
    else:
        status = "verified" if report.overall else "FAILED"
        print(f"|T| = {F.t_size}, |H| = {F.h_size}, order {D.order}", file=out)
        print(f"verification: {status} (" + ", ".join(
            f"{r.law_id} {r.status}" for r in report.results) + ")", file=out)
    return EXIT_OK if report.overall else EXIT_FAIL


def _inject(s: Session, spec: str):
    """Return (fibration, diffracted) with one entry replaced by a different valid value."""
    kind, _, rest = spec.partition(":")
    parts = rest.split(":")
    if len(parts) != 2:
        raise CliError(EXIT_PARSE, f"bad fault spec {spec!r}")
    F = s.fibration
    size = {"delta": F.h_size, "gamma": F.t_size, "bequeath": F.degree}.get(kind)
    if size == 1:
        raise CliError(EXIT_PARSE, f"{kind} table admits no wrong value on this instance")
    if kind == "delta":
        g = s.group.element(parts[0])
        i = F.t_pos(s.group.element(parts[1]))
        d = np.array(F.delta)
        d[g, i] = (d[g, i] + 1) % F.h_size
        return F.with_delta(d), None
    if kind == "gamma":
        g = s.group.element(parts[0])
        i = F.t_pos(s.group.element(parts[1]))
        m = np.array(F.gamma)
        m[g, i] = (m[g, i] + 1) % F.t_size
        return F.with_gamma(m), None
    if kind == "bequeath":
        _need_transversal(s)
        D = build(F)
        a, b = int(parts[0]), int(parts[1])
        t = np.array(D.table)
        t[a, b] = (t[a, b] + 1) % D.order
        return F, D.with_table(t)
    raise CliError(EXIT_PARSE, f"bad fault kind {kind!r}")


def cmd_verify(args, out) -> int:
    s = open_session(args, 2)
    F, D = s.fibration, None
    if args.inject_fault:
        F, D = _inject(s, args.inject_fault)
    report = run_laws(s.group, s.subgroup, s.transversal, args.laws, fibration=F, diffracted=D,
                      descriptor={"strategy": s.config["strategy"]})
    out.write(report.to_jsonl())
    if getattr(args, "figures", None):
        from .plotting import plot_law_report
        d = Path(args.figures)
        d.mkdir(parents=True, exist_ok=True)
        plot_law_report(report, d / "law_report.png")
    return EXIT_OK if report.overall else EXIT_FAIL


def cmd_rewrite(args, out) -> int:
    s = open_session(args, 2)
    _need_transversal(s)
    G = s.group
    try:
        g1, g2 = G.element(args.g1), G.element(args.g2)
    except errors.IndexOutOfRange as exc:
        raise CliError(EXIT_UNKNOWN_ELEMENT, str(exc)) from None
    tr = rewrite_product(s.fibration, g1, g2)
    if args.json:
        d = tr.to_dict()
        d["labels"] = {k: G.label(v) for k, v in tr.to_dict().items()}
        print(_emit(d), file=out)
    else:
        L = G.label
        print(f"{L(g1)}*{L(g2)} = {L(tr.result)} = "
              f"{L(tr.rep_part)} * {L(tr.fib_part)} * {L(tr.h_tail)}", file=out)
    return EXIT_OK


def cmd_bench(args, out) -> int:
    from .bench import run_bench
    s = open_session(args, 2)
    _need_transversal(s)
    if args.reps < 0:
        raise CliError(EXIT_PARSE, "--reps must be non-negative")
    res = run_bench(s.fibration, args.reps, seed=args.seed)
    if args.json:
        print(_emit(res.to_dict()), file=out)
    else:
        print(f"{'path':<18}{'ns/op':>10}", file=out)
        for name, ns in res.timings.items():
            print(f"{name:<18}{ns:>10.1f}", file=out)
        if res.reps:
            print(f"agreement: {'ok' if res.agree else 'MISMATCH'} over {res.reps} products", file=out)
    if not res.agree:
        print(f"error: paths disagree at sample {res.first_mismatch}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


COMMANDS = {
    "load": cmd_load,
    "info": cmd_info,
    "subgroup": cmd_subgroup,
    "cosets": cmd_cosets,
    "transversal": cmd_transversal,
    "diffract": cmd_diffract,
    "verify": cmd_verify,
    "rewrite": cmd_rewrite,
    "bench": cmd_bench,
}

_ERROR_CODES = [
    (errors.NotAGroup, EXIT_NOT_A_GROUP),
    (errors.RequiresTransversal, EXIT_REQUIRES_TRANSVERSAL),
    (errors.UnknownLawId, EXIT_UNKNOWN_LAW),
    (errors.IndexOutOfRange, EXIT_UNKNOWN_ELEMENT),
    (errors.NotARepresentative, EXIT_UNKNOWN_ELEMENT),
    (errors.DiffractError, EXIT_PARSE),
    (OSError, EXIT_PARSE),
]


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except tuple(cls for cls, _ in _ERROR_CODES) as exc:
        code = next(c for cls, c in _ERROR_CODES if isinstance(exc, cls))
        print(f"error: {exc}", file=sys.stderr)
        return code


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
