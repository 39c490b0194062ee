"""``lpm-bergman``: analyze, check, corpus and render subcommands.

Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 a size cap was hit.
"""

from __future__ import annotations

import argparse
import json
import sys

from lpmbergman.lpm import Lpm, land_neck_report
from lpmbergman.matroid import DEFAULT_MAX_BASES, CapExceeded
from lpmbergman.oracle import DEFAULT_MAX_FACES
from lpmbergman.paths import Point, PathError, PathPair, validate_pair
from lpmbergman.poset import poset_to_json
from lpmbergman.qcomplex import (
    aligned_block_report,
    build_q_poset,
    complex_is_simplicial,
    non_simplicial_witnesses,
    qface_to_json,
)
from lpmbergman.verify import CorpusSpec, run_corpus, summarize, verify_instance

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def load_pair(args) -> PathPair:
    if args.file:
        if args.p or args.q:
            raise InputError("give either --file or --p/--q, not both")
        try:
            with open(args.file, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read {args.file}: {exc}") from exc
        if not isinstance(data, dict) or not {"p", "q"} <= data.keys():
            raise InputError(f"{args.file}: expected an object with keys 'p' and 'q'")
        p, q = data["p"], data["q"]
    else:
        if not (args.p and args.q):
            raise InputError("both --p and --q are required (or --file)")
        p, q = args.p, args.q
    if not isinstance(p, str) or not isinstance(q, str):
        raise InputError("paths must be strings over N/E")
    return validate_pair(p, q)


def _pt(b: Point) -> list[int]:
    return [b.x, b.y]


def analyze(pair: PathPair, max_paths: int, max_faces: int) -> dict:
    lpm = Lpm(pair, max_bases=max_paths)
    bm = lpm.basis_matroid
    qposet = build_q_poset(lpm, max_faces)
    up, uq = lpm.bays
    return {
        "instance": {"p": pair.p, "q": pair.q, "m": pair.m, "r": pair.r, "bases": len(bm)},
        "bays": {"p": [_pt(b) for b in up], "q": [_pt(b) for b in uq]},
        "fundamental_flats": [f.to_json() for f in lpm.fundamental_flats],
        "land_necks": land_neck_report(lpm),
        "flacets": [f.to_json() for f in lpm.flacets],
        "aligned_pairs": aligned_block_report(lpm),
        "simplicial": complex_is_simplicial(lpm),
        "witnesses": [
            {"q_bay": _pt(a), "p_bay": _pt(b), "gap": b.y - a.y} for a, b in non_simplicial_witnesses(lpm)
        ],
        "q_poset": poset_to_json(qposet, lpm.flacets, qface_to_json),
        "f_vector": qposet.f_vector(),
        "reduced_euler": qposet.reduced_euler(),
        "mobius": bm.mobius_number(),
        "max_dim": qposet.max_dim(),
    }


def _fmt_set(xs) -> str:
    return "{" + ",".join(map(str, xs)) + "}"


def analyze_text(rep: dict) -> str:
    inst = rep["instance"]
    necks = rep["land_necks"]
    lines = [
        f"p: {inst['p']}",
        f"q: {inst['q']}",
        f"m, r: {inst['m']}, {inst['r']}",
        f"bases: {inst['bases']}",
        "p-bays: " + " ".join(f"({x},{y})" for x, y in rep["bays"]["p"]),
        "q-bays: " + " ".join(f"({x},{y})" for x, y in rep["bays"]["q"]),
        f"land necks: {_fmt_set(necks['semantic'])}",
        f"literal predicate: {_fmt_set(necks['literal'])} (differs on {_fmt_set(necks['symmetric_difference'])})",
        "flacets: " + " ".join(_fmt_set(f["flat"]) for f in rep["flacets"]),
        f"f_vector: {rep['f_vector']}",
        f"reduced_euler: {rep['reduced_euler']}",
        f"mobius: {rep['mobius']}",
        f"simplicial: {'true' if rep['simplicial'] else 'false'}",
    ]
    for w in rep["witnesses"]:
        (a, b), (c, d) = w["q_bay"], w["p_bay"]
        lines.append(f"witness: aligned pair ({a},{b})/({c},{d}), gap {w['gap']}")
    return "\n".join(lines)


def render_ascii(pair: PathPair, lpm: Lpm | None = None) -> str:
    """Band picture, north up; '*' bays, 'o' other boundary points, '.' interior."""
    lpm = lpm or Lpm(pair)
    up, uq = lpm.bays
    marks = set(up) | set(uq)
    on_path = {pair.point_p(t) for t in range(pair.n + 1)} | {pair.point_q(t) for t in range(pair.n + 1)}
    h_edges, v_edges = set(), set()
    for heights in (pair.P, pair.Q):
        for t in range(pair.n):
            a = Point(t - heights[t], heights[t])
            if heights[t + 1] > heights[t]:
                v_edges.add(a)
            else:
                h_edges.add(a)
    width = 4 * pair.m + 1
    rows = []
    for y in range(pair.r, -1, -1):
        if y < pair.r:
            rows.append("".join("|" if c % 4 == 0 and Point(c // 4, y) in v_edges else " " for c in range(width)))
        line = []
        for c in range(width):
            x, rem = divmod(c, 4)
            if rem == 0:
                pt = Point(x, y)
                if pt in marks:
                    line.append("*")
                elif pt in on_path:
                    line.append("o")
                elif pair.contains(pt):
                    line.append(".")
                else:
                    line.append(" ")
            else:
                line.append("-" if Point(x, y) in h_edges else " ")
        rows.append("".join(line))
    necks = lpm.land_necks
    ruler = "".join(str(i % 10) for i in range(1, pair.n + 1))
    flags = "".join("!" if i in necks else " " for i in range(1, pair.n + 1))
    body = [r.rstrip() for r in rows]
    body += ["", f"step  {ruler}", f"neck  {flags}".rstrip()]
    return "\n".join(body)


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def render_dot(pair: PathPair, max_paths: int, max_faces: int) -> str:
    """Hasse diagram of the Q-poset; edges out of the empty face are left implicit."""
    lpm = Lpm(pair, max_bases=max_paths)
    poset = build_q_poset(lpm, max_faces)
    names = {f.mask: str(f) for f in lpm.flacets}
    faces = poset.sorted_faces()
    ids = {f.label: f"f{i}" for i, f in enumerate(faces)}
    out = ["digraph bergman {", "  rankdir=BT;"]
    for f in faces:
        text = "{" + ", ".join(sorted((names[v] for v in f.label), key=lambda s: (len(s), s))) + "}"
        if not f.label:
            text = "{}"
        out.append(f'  {ids[f.label]} [label="{_dot_escape(text)}\\ndim {f.dim}"];')
    for lo, hi in poset.covers():
        if lo:
            out.append(f"  {ids[lo]} -> {ids[hi]};")
    out.append("}")
    return "\n".join(out)


def cmd_analyze(args) -> int:
    pair = load_pair(args)
    if args.format == "dot":
        print(render_dot(pair, args.max_paths, args.max_faces))
        return EXIT_OK
    rep = analyze(pair, args.max_paths, args.max_faces)
    print(_dump(rep) if args.format == "json" else analyze_text(rep))
    return EXIT_OK


def cmd_check(args) -> int:
    pair = load_pair(args)
    rep = verify_instance(pair, args.max_paths, args.max_faces)
    if rep["status"] == "pass":
        print(_dump({"p": pair.p, "q": pair.q, "status": "pass"}))
        return EXIT_OK
    print(_dump({"p": pair.p, "q": pair.q, "status": "fail", "failed": [c for c in rep["checks"] if not c["pass"]]}))
    return EXIT_FAIL


def cmd_corpus(args) -> int:
    if (args.exhaustive is None) == (args.random is None):
        raise InputError("give exactly one of --exhaustive N or --random N")
    if args.exhaustive is not None:
        spec = CorpusSpec("exhaustive", args.exhaustive, max_paths=args.max_paths, max_faces=args.max_faces)
    else:
        if args.max is None:
            raise InputError("--random needs --max N")
        spec = CorpusSpec("random", args.max, args.random, args.seed, args.max_paths, args.max_faces)
    out = sys.stdout
    reports = []
    for rep in run_corpus(spec, jobs=args.jobs):
        reports.append({"status": rep["status"], "checks": rep.get("checks", ()), "land_necks": rep.get("land_necks", {})})
        out.write(_dump(rep) + "\n")
    summary = summarize(reports)
    out.write(_dump({"summary": summary}) + "\n")
    return EXIT_FAIL if summary["fail"] else EXIT_OK


def cmd_render(args) -> int:
    pair = load_pair(args)
    if args.format == "dot":
        print(render_dot(pair, args.max_paths, args.max_faces))
    elif args.format == "json":
        lpm = Lpm(pair, max_bases=args.max_paths)
        up, uq = lpm.bays
        print(_dump({"p": pair.p, "q": pair.q, "P": list(pair.P), "Q": list(pair.Q),
                     "bays": [_pt(b) for b in sorted(set(up) | set(uq))], "land_necks": sorted(lpm.land_necks)}))
    else:
        print(render_ascii(pair))
    return EXIT_OK


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lpm-bergman", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    caps = argparse.ArgumentParser(add_help=False)
    caps.add_argument("--max-paths", type=_positive, default=DEFAULT_MAX_BASES, help="cap on the number of bases")
    caps.add_argument("--max-faces", type=_positive, default=DEFAULT_MAX_FACES, help="cap on the number of faces")

    inst = argparse.ArgumentParser(add_help=False)
    inst.add_argument("--p", help="upper path, a word over N/E")
    inst.add_argument("--q", help="lower path, a word over N/E")
    inst.add_argument("--file", help='JSON file {"p": ..., "q": ...}')

    a = sub.add_parser("analyze", parents=[inst, caps], help="report bays, flacets and the face poset")
    a.add_argument("--format", choices=("json", "ascii", "dot"), default="json")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("check", parents=[inst, caps], help="compare the construction with the oracle")
    c.set_defaults(func=cmd_check)

    k = sub.add_parser("corpus", parents=[caps], help="verify many instances, JSONL on stdout")
    k.add_argument("--exhaustive", type=_positive, metavar="N", help="every connected pair with at most N steps")
    k.add_argument("--random", type=_positive, metavar="N", help="N random connected pairs")
    k.add_argument("--max", type=_positive, metavar="N", help="step bound for --random")
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--jobs", type=_positive, default=1)
    k.set_defaults(func=cmd_corpus)

    r = sub.add_parser("render", parents=[inst, caps], help="draw the band or the Hasse diagram")
    r.add_argument("--format", choices=("json", "ascii", "dot"), default="ascii")
    r.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, PathError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
