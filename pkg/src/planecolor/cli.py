"""Command-line entry point.

Exit codes: 0 success, 1 negative verdict (violation, UNSAT, failed check),
2 usage or input error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import caseenum, configurations
from .coloring import ColorSpec, SPEC_110, solve, superextend, verify_superextendability
from .discharging import apply_rules, final_report
from .errors import PlaneColorError
from .formats import RotationDocument, format_rotation, load_graphs, write_planar_code
from .generate import FILTERS, generate_plane_graphs
from .plane_graph import check_family_membership, default_root, root_at

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2, 3


class InvariantViolation(RuntimeError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _vertices(text: str) -> list[int]:
    return [int(x) for x in text.replace(",", " ").split()]


def _colors(text: str) -> list[int]:
    return [int(x) for x in text.replace(",", " ").split()]


def _rooted(doc: RotationDocument, c0: str | None):
    if c0:
        return root_at(doc.graph, _vertices(c0))
    return doc.rooted or default_root(doc.graph)


def _docs(args) -> list[RotationDocument]:
    return load_graphs(args.input, args.format)


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


# ---------------------------------------------------------------------------
# subcommands; each returns (exit code, text lines, json document)


def cmd_check(args):
    lines, docs, code = [], [], EXIT_OK
    for i, doc in enumerate(_docs(args), 1):
        v = check_family_membership(doc.graph)
        if v:
            lines.append(f"graph {i}: in F")
        else:
            code = EXIT_NO
            lines.append(f"graph {i}: not in F: {v.kind} {' '.join(map(str, _flat(v.witness)))}")
        docs.append({"graph": i, "in_family": v.in_family, "kind": v.kind, "witness": _jsonable(v.witness)})
    return code, lines, {"results": docs}


def _flat(w):
    if w and isinstance(w[0], tuple):
        return ["|".join(map(str, t)) for t in w]
    return list(w)


def cmd_color(args):
    spec = ColorSpec.parse(args.spec)
    lines, docs, code = [], [], EXIT_OK
    for i, doc in enumerate(_docs(args), 1):
        col = solve(doc.graph, spec)
        if col is None:
            code = EXIT_NO
            lines.append(f"graph {i}: UNSAT under ({spec})")
        else:
            lines.append(f"graph {i}: " + " ".join(f"{v}:{c}" for v, c in sorted(col.items())))
        docs.append({"graph": i, "spec": str(spec), "sat": col is not None, "coloring": col})
    return code, lines, {"results": docs}


def cmd_superextend(args):
    spec = ColorSpec.parse(args.spec)
    doc = _docs(args)[0]
    rooted = _rooted(doc, args.c0)
    colors = _colors(args.precolor)
    walk = rooted.c0_walk
    if len(colors) != len(walk):
        raise ValueError(f"--precolor needs {len(walk)} colours for C0 {walk}")
    pre = dict(zip(walk, colors))
    col = superextend(rooted, pre, spec)
    out = {"c0": list(walk), "precoloring": pre, "spec": str(spec), "extends": col is not None, "coloring": col}
    if col is None:
        return EXIT_NO, [f"C0 {' '.join(map(str, walk))}: no superextension"], out
    return EXIT_OK, ["C0 " + " ".join(map(str, walk)) + ": " + " ".join(f"{v}:{c}" for v, c in sorted(col.items()))], out


def cmd_theorem(args):
    spec = ColorSpec.parse(args.spec)
    lines, docs, code = [], [], EXIT_OK
    for i, doc in enumerate(_docs(args), 1):
        rooted = _rooted(doc, args.c0)
        rep = verify_superextendability(rooted, spec, symmetry_reduction=args.symmetry)
        if rep.ok:
            lines.append(f"graph {i}: all {rep.tried} precolourings of C0 superextend")
        else:
            code = EXIT_NO
            lines.append(f"graph {i}: precolouring {rep.failing} does not superextend")
        lines += [f"  note: {n}" for n in rep.notes]
        docs.append({"graph": i, "ok": rep.ok, "tried": rep.tried, "failing": rep.failing,
                     "c0": list(rep.c0), "notes": rep.notes})
    return code, lines, {"results": docs}


def cmd_configs(args):
    if args.action == "list":
        lines = [f"{c.name}\t{c.tag}\t{c.pattern}" for c in configurations.catalog()]
        return EXIT_OK, lines, {"configs": [{"name": c.name, "tag": c.tag} for c in configurations.catalog()]}
    if args.falsified:
        targets = [configurations.falsified_variant()]
    elif args.id:
        targets = [configurations.find(args.id)]
    else:
        targets = list(configurations.catalog())
        if args.exploratory:
            targets += list(configurations.exploratory())
    reports = [configurations.verify_local_extendability(c) for c in targets]
    lines = []
    for r in reports:
        tail = "" if r.ok else f" witness {' '.join(f'{v}:{c}' for v, c in sorted(r.witness.items()))}"
        lines.append(f"{r.name}: {'ok' if r.ok else 'FAIL'} ({r.precolorings} precolourings){tail}")
    code = EXIT_OK if all(r.ok for r in reports) else EXIT_NO
    return code, lines, {"reports": [r.to_dict() for r in reports]}


def cmd_discharge(args):
    doc = _docs(args)[0]
    rooted = _rooted(doc, args.c0)
    ledger = apply_rules(rooted)
    if ledger.total_initial() != 0 or ledger.total_final() != 0:
        raise InvariantViolation(
            f"charge not conserved: initial {ledger.total_initial()}, final {ledger.total_final()}")
    if args.style == "kv":
        text = ledger.to_keyvalue()
        out = ledger.to_dict()
    else:
        rep = final_report(rooted, ledger)
        text = rep.to_text()
        out = rep.to_dict()
    return EXIT_OK, text.rstrip("\n").split("\n"), out


def cmd_cases(args):
    disabled = caseenum.resolve_switches(args.disable or [])
    if args.table:
        rows = list(caseenum.table(args.center, disabled))
        return EXIT_OK, rows, {"rows": rows[1:]}
    res = caseenum.min_final_charge(args.center, disabled, node_budget=args.budget)
    lines = [f"center {args.center}", f"disabled {','.join(sorted(disabled)) or '-'}",
             f"min {res.value}" + ("" if res.exact else " (counting bound)")]
    if res.witness is not None:
        w = res.witness
        lines.append(f"witness {w.scenario}")
        lines.append("flows " + " ".join(f"{r}:{a}" for r, a in w.flows))
    lines += [f"note {n}" for n in res.notes]
    code = EXIT_OK if res.value is None or res.value >= 0 else EXIT_NO
    return code, lines, {"center": args.center, "disabled": sorted(disabled), **res.to_dict()}


def cmd_gen(args):
    graphs = list(generate_plane_graphs(args.max_n, args.filter, min_n=args.min_n))
    if args.out_format == "pcode":
        data = write_planar_code(graphs)
    else:
        data = "\n".join(format_rotation(g) for g in graphs).encode()
    if args.out == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        lines = []
    else:
        with open(args.out, "wb") as fh:
            fh.write(data)
        lines = [f"wrote {len(graphs)} graphs to {args.out}"]
    return EXIT_OK, lines, {"count": len(graphs), "max_n": args.max_n, "filter": args.filter}


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="planecolor", description="Defective colourings and discharging on small plane graphs.")
    p.add_argument("--json-out", metavar="PATH", help="also write the report as JSON")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_input(sp, rooted=False):
        sp.add_argument("--input", required=True, help="rotation-text or planar_code file")
        sp.add_argument("--format", choices=("rot", "pcode"), help="defaults from the file extension")
        if rooted:
            sp.add_argument("--c0", help="vertices of the outer cycle, in face order")

    sp = sub.add_parser("check", help="membership in F")
    graph_input(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("color", help="find a defective colouring")
    graph_input(sp)
    sp.add_argument("--spec", default=str(SPEC_110))
    sp.set_defaults(func=cmd_color)

    sp = sub.add_parser("superextend", help="extend one precolouring of C0")
    graph_input(sp, rooted=True)
    sp.add_argument("--precolor", required=True, help="colours of C0 in walk order, e.g. 1,2,3")
    sp.add_argument("--spec", default=str(SPEC_110))
    sp.set_defaults(func=cmd_superextend)

    sp = sub.add_parser("theorem", help="check every precolouring of C0 superextends")
    graph_input(sp, rooted=True)
    sp.add_argument("--spec", default=str(SPEC_110))
    sp.add_argument("--symmetry", action="store_true", help="skip colour-permuted precolourings")
    sp.set_defaults(func=cmd_theorem)

    sp = sub.add_parser("configs", help="reducible configuration catalog")
    sp.add_argument("action", choices=("verify", "list"))
    grp = sp.add_mutually_exclusive_group()
    grp.add_argument("--id", help="configuration name or tag")
    grp.add_argument("--all", action="store_true")
    grp.add_argument("--falsified", action="store_true", help="the deliberately broken variant")
    sp.add_argument("--exploratory", action="store_true", help="include entries outside the catalog")
    sp.set_defaults(func=cmd_configs)

    sp = sub.add_parser("discharge", help="charge ledger after the rules")
    graph_input(sp, rooted=True)
    sp.add_argument("--style", choices=("text", "kv"), default="text")
    sp.set_defaults(func=cmd_discharge)

    sp = sub.add_parser("cases", help="minimum final charge around a centre")
    sp.add_argument("--center", required=True, help="face:3|4, vertex:K, c0vertex:K, c0:3|7")
    sp.add_argument("--disable", action="append", metavar="PREDICATE", help="name or tag; repeatable")
    sp.add_argument("--table", action="store_true", help="emit every scenario instead of the minimum")
    sp.add_argument("--budget", type=int, help="node budget for 7+ vertices")
    sp.set_defaults(func=cmd_cases)

    sp = sub.add_parser("gen", help="generate connected plane graphs")
    sp.add_argument("--max-n", type=int, required=True)
    sp.add_argument("--min-n", type=int, default=1)
    sp.add_argument("--filter", choices=FILTERS, default="all")
    sp.add_argument("--out", default="-")
    sp.add_argument("--out-format", choices=("pcode", "rot"), default="pcode")
    sp.set_defaults(func=cmd_gen)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        code, lines, doc = args.func(args)
    except InvariantViolation as e:
        print(f"invariant violation: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except (PlaneColorError, ValueError, KeyError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    for line in lines:
        print(line)
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8") as fh:
            json.dump(_jsonable(doc), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
