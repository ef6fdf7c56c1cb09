"""Command-line interface: ``imsets <command> [options]``.

Exit status is 0 on success, 1 on domain errors (bad grid, triplet, move or a
failed property suite) and 2 on usage errors.  Results go to stdout (or
``--out``), diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from .core import (
    ElementaryImset,
    Triplet,
    configuration_matrix,
    element_names,
    elementary_family,
    format_set,
    semi_elementary,
    varset,
)
from .enumeration import (
    DEFAULT_MAX_LABELED,
    DEFAULT_MAX_PATTERNS,
    brute_force_fiber,
    connected_components,
    degree_table,
    fiber_graph,
    table_report,
)
from .exceptions import ImsetError, InvalidTripletError, NotInFiberError
from .representation import (
    Canonicalizer,
    RepGrid,
    diagnose,
    grid_from_dict,
    grid_to_dict,
    replay,
    standard_representation,
    strip_conditioning,
)
from .rift import (
    classify_points,
    detect_rifts,
    elimination_steps,
    normalize_to_standard,
    sigma_decomposition,
)
from .verify import run_all

FORMATS = ("json", "csv", "text")


class _UsageError(Exception):
    pass


# ---------------------------------------------------------------- helpers


def _triplet(args) -> Triplet:
    if args.A is None or args.B is None:
        raise _UsageError("--A and --B are required")
    if args.A < 0 or args.B < 0 or args.C < 0:
        raise _UsageError("set sizes must be non-negative")
    return Triplet.standard(args.A, args.B, args.C)


def _fiber_sizes(args) -> tuple[int, int]:
    if args.A is None or args.B is None:
        raise _UsageError("--A and --B are required")
    if args.A < 1 or args.B < 1:
        raise InvalidTripletError("fiber commands need non-empty A and B")
    return args.A, args.B


def _read_input(args) -> str:
    if args.input is None:
        raise _UsageError("--in is required")
    if args.input == "-":
        return sys.stdin.read()
    with open(args.input, encoding="utf-8") as fh:
        return fh.read()


def _read_grids(args) -> list[RepGrid]:
    """A single grid object or a list of them (as written by ``fiber``)."""
    try:
        data = json.loads(_read_input(args))
    except json.JSONDecodeError as exc:
        raise NotInFiberError(f"input is not JSON: {exc}") from None
    items = data if isinstance(data, list) else [data]
    grids = []
    for i, d in enumerate(items):
        try:
            g = grid_from_dict(d)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ImsetError):
                raise
            raise NotInFiberError(f"grid #{i}: malformed ({exc})") from None
        problems = diagnose(g)
        if problems:
            raise NotInFiberError(f"grid #{i} is not a representation: {problems[0]}")
        grids.append(g)
    return grids


def _csv(rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _label(u: ElementaryImset, names, c_mask: int = 0) -> str:
    return u.label(names, c_mask)


def _grid_text(g: RepGrid) -> str:
    names = element_names(g.triplet)
    lines = []
    for s in reversed(range(g.nA)):
        lines.append("  ".join(_label(u, names, g.triplet.C) for u in g.rows()[s]))
    return "\n".join(lines)


def _single(results: list, fmt: str):
    return results[0] if len(results) == 1 and fmt == "json" else results


# ---------------------------------------------------------------- commands


def cmd_imset(args) -> str:
    t = _triplet(args)
    names = element_names(t)
    if args.elem:
        index = {n: i for i, n in enumerate(names)}
        a, b, gamma = args.elem
        try:
            g = varset(index[x] for x in (gamma.split(",") if gamma not in ("-", "") else []))
            u = ElementaryImset(index[a], index[b], g).check()
        except KeyError as exc:
            raise InvalidTripletError(f"unknown element {exc.args[0]!r}; names are {names}") from None
        f = u.imset(t.n)
        title = _label(u, names)
    else:
        f = semi_elementary(t)
        title = f"⟨{format_set(t.A, names)},{format_set(t.B, names)}|{format_set(t.C, names)}⟩"
    pairs = f.to_pairs(names)
    if args.format == "json":
        return _json({"imset": title, "entries": pairs})
    if args.format == "csv":
        return _csv([["subset", "value"]] + [[format_set(varset(names.index(x) for x in S), names), v] for S, v in pairs])
    lines = [f"u{title}"]
    lines += [f"  {v:+d}  {''.join(S) or '∅'}" for S, v in pairs]
    return "\n".join(lines) + "\n"


def cmd_family(args) -> str:
    t = _triplet(args)
    t.require_nondegenerate()
    names = element_names(t)
    fam = elementary_family(t)
    rows = [(u.level(t), _label(u, names, t.C), u) for u in fam]
    if args.format == "json":
        return _json(
            [
                {"level": list(lvl), "a": names[u.a], "b": names[u.b], "gamma": [names[i] for i in range(t.n) if u.gamma >> i & 1]}
                for lvl, _, u in rows
            ]
        )
    if args.format == "csv":
        return _csv([["s", "t", "imset"]] + [[lvl[0], lvl[1], lab] for lvl, lab, _ in rows])
    out = [f"{len(fam)} elementary imsets"]
    out += [f"  E^{lvl[0]},{lvl[1]}  {lab}" for lvl, lab, _ in rows]
    return "\n".join(out) + "\n"


def cmd_matrix(args) -> str:
    t = _triplet(args)
    t.require_nondegenerate()
    m = configuration_matrix(t)
    if args.format == "json":
        return _json({"rows": m.row_labels(), "cols": m.col_labels(), "data": m.data.astype(int).tolist()})
    if args.format == "text":
        w = max(len(r) for r in m.row_labels())
        lines = [f"{r.rjust(w)}  " + " ".join(f"{int(x):2d}" for x in row) for r, row in zip(m.row_labels(), m.data)]
        return "\n".join(lines) + "\n"
    return m.to_csv()


def cmd_fiber(args) -> str:
    nA, nB = _fiber_sizes(args)
    fiber = brute_force_fiber(nA, nB, max_labeled=args.max_labeled, threads=args.threads)
    if args.format == "json":
        return _json([grid_to_dict(g) for g in fiber])
    if args.format == "csv":
        names = element_names(Triplet.standard(nA, nB))
        header = ["index"] + [f"u({s},{t})" for s in range(nA) for t in range(nB)]
        return _csv([header] + [[i] + [_label(u, names) for u in g.cells] for i, g in enumerate(fiber)])
    canon = Canonicalizer(Triplet.standard(nA, nB))
    reps = len({canon.key(g.cells) for g in fiber})
    return f"|A|={nA} |B|={nB}: {len(fiber)} labeled representations, {reps} up to relabeling\n"


def cmd_graph(args) -> str:
    nA, nB = _fiber_sizes(args)
    graph = fiber_graph(brute_force_fiber(nA, nB, max_labeled=args.max_labeled, threads=args.threads))
    info = {
        "dims": [nA, nB],
        "vertices": len(graph.vertices),
        "edges": graph.n_edges,
        "components": connected_components(graph),
        "degrees": {str(k): v for k, v in degree_table(graph).items()},
    }
    if args.format == "json":
        return _json(info)
    if args.format == "csv":
        return _csv([["|A|", "|B|", "vertices", "edges", "components"], [nA, nB, info["vertices"], info["edges"], info["components"]]])
    degs = ", ".join(f"{k}:{v}" for k, v in info["degrees"].items())
    return (
        f"|A|={nA} |B|={nB}: {info['vertices']} vertices, {info['edges']} edges, "
        f"{info['components']} component(s)\ndegree histogram {degs}\n"
    )


def _rift_info(g: RepGrid) -> dict:
    p = detect_rifts(g)
    kinds: dict[str, int] = {}
    for pc in classify_points(g):
        kinds[pc.kind] = kinds.get(pc.kind, 0) + 1
    return {
        "dims": list(g.dims),
        "pattern": p.to_string(),
        "rifts": [r.to_dict() for r in p.rifts],
        "sigma_decomposable": sigma_decomposition(g) is not None,
        "point_classes": dict(sorted(kinds.items())),
    }


def cmd_rifts(args) -> str:
    infos = [_rift_info(g) for g in _read_grids(args)]
    if args.format == "json":
        return _json(_single(infos, args.format))
    if args.format == "csv":
        rows = [["index", "pattern", "rifts", "sigma_decomposable"]]
        for i, d in enumerate(infos):
            rows.append([i, d["pattern"], " ".join(r["name"] for r in d["rifts"]), d["sigma_decomposable"]])
        return _csv(rows)
    out = []
    for i, (g, d) in enumerate(zip(_read_grids(args), infos)):
        out.append(f"# grid {i}  ({d['dims'][0]}x{d['dims'][1]})")
        out.append(detect_rifts(g).render() or "(no interior crossings)")
        if d["rifts"]:
            out += [f"  {r['name']}  length {r['length']}" for r in d["rifts"]]
        else:
            out.append("  rift-free")
        out.append("  σ-decomposable" if d["sigma_decomposable"] else "  σ-indecomposable")
    return "\n".join(out) + "\n"


def _tree_text(node: dict, depth: int = 0) -> list[str]:
    s0, s1, t0, t1 = node["rect"]
    pad = "  " * depth
    if "axis" not in node:
        return [f"{pad}cell ({s0},{t0})"]
    head = f"{pad}rows {s0}..{s1 - 1} x cols {t0}..{t1 - 1}: cut {node['axis']} at {node['cut']}"
    lines = [head]
    for child in node["children"]:
        lines += _tree_text(child, depth + 1)
    return lines


def cmd_decompose(args) -> str:
    results = []
    for g in _read_grids(args):
        tree = sigma_decomposition(g)
        results.append({"sigma_decomposable": tree is not None, "tree": tree.to_dict() if tree else None})
    if args.format == "json":
        return _json(_single(results, args.format))
    if args.format == "csv":
        return _csv([["index", "sigma_decomposable"]] + [[i, r["sigma_decomposable"]] for i, r in enumerate(results)])
    out = []
    for i, r in enumerate(results):
        out.append(f"# grid {i}: " + ("σ-decomposable" if r["sigma_decomposable"] else "σ-indecomposable"))
        if r["tree"]:
            out += _tree_text(r["tree"])
    return "\n".join(out) + "\n"


def cmd_normalize(args) -> str:
    grids = _read_grids(args)
    if len(grids) != 1:
        raise _UsageError("normalize takes a single grid")
    g = strip_conditioning(grids[0])
    trace = normalize_to_standard(g)
    if replay(g, trace) != standard_representation(g.triplet):
        raise RuntimeError("trace does not replay to the standard representation")
    if args.format == "json":
        return _json([m.to_dict() for m in trace])
    if args.format == "csv":
        return _csv([["step", "kind", "s", "t"]] + [[i, m.kind, *m.anchor] for i, m in enumerate(trace)])
    out = []
    for r, _, moves in elimination_steps(g):
        out.append(f"eliminate {r}: " + ", ".join(f"{m.kind}{m.anchor}" for m in moves))
    out.append(f"{len(trace)} moves in total to the standard representation")
    return "\n".join(out) + "\n"


def cmd_count(args) -> str:
    if args.max:
        max_a, max_b = args.max
        if max_a < 2 or max_b < 2:
            raise _UsageError("--max bounds must be at least 2")
        report = table_report(max_a, max_b, threads=args.threads, max_patterns=args.max_patterns)
    else:
        from .enumeration import CountReport, count_patterns

        nA, nB = _fiber_sizes(args)
        report = CountReport([count_patterns(nA, nB, threads=args.threads, max_patterns=args.max_patterns)])
    if args.format == "json":
        return report.to_json(indent=2) + "\n"
    if args.format == "csv":
        return report.to_csv()
    return report.to_text()


def cmd_verify(args) -> str:
    results = run_all(seed=args.seed, pairs=args.pairs)
    args._failed = any(not r.ok for r in results)
    if args.format == "json":
        return _json([r.to_dict() for r in results])
    if args.format == "csv":
        return _csv([["suite", "checked", "failures"]] + [[r.name, r.checked, r.failures] for r in results])
    out = []
    for r in results:
        out.append(f"{'PASS' if r.ok else 'FAIL'}  {r.name}: {r.checked} checked, {r.failures} failures")
        out += [f"    {e}" for e in r.examples]
    return "\n".join(out) + "\n"


COMMANDS = {
    "imset": (cmd_imset, "print a semi-elementary or elementary imset", "text"),
    "family": (cmd_family, "list the elementary imsets of a family", "text"),
    "matrix": (cmd_matrix, "emit the configuration matrix", "csv"),
    "fiber": (cmd_fiber, "enumerate every labeled representation", "json"),
    "graph": (cmd_graph, "connectivity of the fiber under two-by-two moves", "text"),
    "rifts": (cmd_rifts, "rift pattern of a grid file", "text"),
    "decompose": (cmd_decompose, "σ-decomposition tree of a grid file", "text"),
    "normalize": (cmd_normalize, "move trace from a grid to the standard representation", "json"),
    "count": (cmd_count, "rift-pattern counts per (|A|, |B|)", "text"),
    "verify": (cmd_verify, "run the built-in property suites", "text"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None, help="output format")
    common.add_argument("--out", default=None, help="write output to this file instead of stdout")
    common.add_argument("--in", dest="input", default=None, help="input grid JSON file ('-' for stdin)")
    common.add_argument("--A", type=int, default=None, help="|A|")
    common.add_argument("--B", type=int, default=None, help="|B|")
    common.add_argument("--C", type=int, default=0, help="|C| (default 0)")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--max-labeled", type=int, default=DEFAULT_MAX_LABELED)
    common.add_argument("--max-patterns", type=int, default=DEFAULT_MAX_PATTERNS)
    common.add_argument("--seed", type=int, default=0, help="seed for sampled property suites")

    ap = argparse.ArgumentParser(prog="imsets", description="Exact calculus of semi-elementary imsets.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, (_, help_text, _default) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name == "imset":
            p.add_argument("--elem", nargs=3, metavar=("A", "B", "GAMMA"),
                           help="elementary imset u<a,b|gamma>, gamma comma-separated or '-'")
        elif name == "count":
            p.add_argument("--max", nargs=2, type=int, metavar=("NA", "NB"), help="all 2 <= |A| <= |B| within bounds")
        elif name == "verify":
            p.add_argument("--pairs", type=int, default=10_000, help="random (grid, move) pairs")
    return ap


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    func, _, default_fmt = COMMANDS[args.command]
    args.format = args.format or default_fmt
    if args.threads < 1:
        print("imsets: error: --threads must be positive", file=stderr)
        return 2
    args._failed = False
    try:
        text = func(args)
    except _UsageError as exc:
        print(f"imsets {args.command}: error: {exc}", file=stderr)
        return 2
    except (ImsetError, OSError) as exc:
        print(f"imsets {args.command}: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 1 if args._failed else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
