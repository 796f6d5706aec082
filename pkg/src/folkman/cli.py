"""Command line front end.

Subcommands: props (exact invariants per line), arrow (arrowing verdicts),
stage (named proof stages), stats (histogram tables), ingest (external
dataset validation), dedup (canonical dedup). Graph streams read graph6
lines; "-" means stdin/stdout. Exit codes: 0 ok, 1 usage, 2 parse error,
3 expectation mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys

from .arrowing import (
    arrows_edge_33_joined,
    arrows_vertex_233,
    arrows_vertex_33,
    edge_33_witness,
    vertex_233_witness,
    vertex_33_witness,
)
from .canon import canonical_form, dedup_stream
from .graph import Graph6Error, decode_graph6, encode_graph6, join_complete
from .invariants import (
    chromatic_number,
    clique_number,
    degree_profile,
    independence_number,
)
from .pipeline import (
    ExpectationError,
    StageError,
    StreamError,
    check_expectations,
    compute_stats,
    iter_graph6_lines,
    load_expectations,
    render_stats,
    run_ingest,
    run_stage,
    stream_graphs,
    write_graph6,
    STAGE_NAMES,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_EXPECT = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad usage; the contract here is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _props_record(g) -> dict:
    profile = degree_profile(g)
    return {
        "n": g.n,
        "e": profile.edge_count,
        "omega": clique_number(g),
        "alpha": independence_number(g),
        "chi": chromatic_number(g),
        "delta": profile.min_degree,
        "Delta": profile.max_degree,
        "aut": canonical_form(g).aut_size,
    }


def cmd_props(args) -> int:
    status = EXIT_OK
    for line_no, line in iter_graph6_lines(args.source):
        try:
            g = decode_graph6(line)
        except Graph6Error as exc:
            print(f"{args.source}:{line_no}: {exc}", file=sys.stderr)
            status = EXIT_PARSE
            continue
        print(json.dumps(_props_record(g)))
    return status


def _edge_witness_json(witness) -> str:
    return json.dumps({
        "edges": [list(edge) for edge in witness.edges],
        "colors": list(witness.colors),
    })


def _vertex_witness_json(witness) -> str:
    return json.dumps({"colors": list(witness.colors)})


def cmd_arrow(args) -> int:
    if args.kind != "edge33" and args.p:
        raise StageError("--p is only meaningful with kind edge33")
    status = EXIT_OK
    for line_no, line in iter_graph6_lines(args.source):
        try:
            g = decode_graph6(line)
        except Graph6Error as exc:
            print(f"{args.source}:{line_no}: {exc}", file=sys.stderr)
            status = EXIT_PARSE
            continue
        if args.kind == "edge33":
            if args.witness:
                witness = edge_33_witness(join_complete(args.p, g))
                verdict = witness is None
                extra = None if verdict else _edge_witness_json(witness)
            else:
                verdict = arrows_edge_33_joined(args.p, g)
                extra = None
        elif args.kind == "vertex33":
            verdict = arrows_vertex_33(g)
            extra = None
            if args.witness and not verdict:
                extra = _vertex_witness_json(vertex_33_witness(g))
        else:
            verdict = arrows_vertex_233(g)
            extra = None
            if args.witness and not verdict:
                extra = _vertex_witness_json(vertex_233_witness(g))
        text = "true" if verdict else "false"
        print(text if extra is None else f"{text}\t{extra}")
    return status


def _parse_stage_inputs(pairs) -> dict:
    inputs = {}
    for pair in pairs or ():
        key, sep, path = pair.partition("=")
        if not sep or not key or not path:
            raise StageError(f"--input expects key=path, got {pair!r}")
        if key in inputs:
            raise StageError(f"duplicate --input key {key!r}")
        inputs[key] = path
    return inputs


def cmd_stage(args) -> int:
    inputs = _parse_stage_inputs(args.input)
    manifest = run_stage(args.stage, inputs, args.outdir,
                         degree_prune=args.degree_prune, jobs=args.jobs)
    print(manifest.to_json(), end="")
    if args.expect:
        table = load_expectations(args.expect)
        mismatches = check_expectations(manifest, table)
        if mismatches:
            raise ExpectationError(mismatches)
    return EXIT_OK


def cmd_stats(args) -> int:
    table = compute_stats(stream_graphs(args.source))
    if args.json:
        print(json.dumps(table.to_dict(), indent=2))
    else:
        print(render_stats(table), end="")
    return EXIT_OK


def cmd_ingest(args) -> int:
    manifest = run_ingest(args.source, args.out, expected_count=args.expect_count,
                          filter_expr=args.filter, jobs=args.jobs)
    print(json.dumps(manifest, indent=2))
    if manifest["malformed_lines"]:
        print(f"{len(manifest['malformed_lines'])} malformed lines: "
              f"{manifest['malformed_lines']}", file=sys.stderr)
        return EXIT_PARSE
    if not manifest["count_ok"]:
        print(f"expected {manifest['expected_count']} graphs, "
              f"got {manifest['after_filter']}", file=sys.stderr)
        return EXIT_EXPECT
    return EXIT_OK


def cmd_dedup(args) -> int:
    graphs = dedup_stream(list(stream_graphs(args.source)), jobs=args.jobs)
    if args.out == "-":
        for g in graphs:
            sys.stdout.buffer.write(encode_graph6(g) + b"\n")
    else:
        record = write_graph6(args.out, graphs)
        print(json.dumps(record, indent=2))
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="folkman",
                     description="Folkman number search toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("props", help="exact invariants, one JSON record per line")
    p.add_argument("source", nargs="?", default="-", help="graph6 file or - for stdin")
    p.set_defaults(func=cmd_props)

    p = sub.add_parser("arrow", help="arrowing verdicts, one per line")
    p.add_argument("kind", choices=("edge33", "vertex33", "vertex233"))
    p.add_argument("source", nargs="?", default="-")
    p.add_argument("--p", type=int, default=0,
                   help="join a complete graph of this order first (edge33 only)")
    p.add_argument("--witness", action="store_true",
                   help="emit a good coloring for negative verdicts")
    p.set_defaults(func=cmd_arrow)

    p = sub.add_parser("stage", help="run a named proof stage")
    p.add_argument("stage", choices=STAGE_NAMES)
    p.add_argument("--input", action="append", metavar="KEY=PATH",
                   help="named input file; repeatable")
    p.add_argument("--outdir", required=True)
    p.add_argument("--degree-prune", action="store_true",
                   help="minimum-degree pruning (edge-arrowing runs only)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--expect", metavar="FILE",
                   help="expected-count table; 'builtin' for the packaged one")
    p.set_defaults(func=cmd_stage)

    p = sub.add_parser("stats", help="histogram table for a graph stream")
    p.add_argument("source", nargs="?", default="-")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("ingest", help="validate and canonicalize a dataset")
    p.add_argument("source")
    p.add_argument("--out", required=True)
    p.add_argument("--expect-count", type=int)
    p.add_argument("--filter", metavar="EXPR",
                   help="conjunctive clauses, e.g. 'omega<4,alpha<4'")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("dedup", help="canonical dedup of a graph stream")
    p.add_argument("source", nargs="?", default="-")
    p.add_argument("--out", default="-")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_dedup)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except StageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StreamError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except Graph6Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ExpectationError as exc:
        for line in exc.mismatches:
            print(f"expectation mismatch: {line}", file=sys.stderr)
        return EXIT_EXPECT
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
