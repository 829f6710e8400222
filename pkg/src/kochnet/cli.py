"""Command-line front end.

Subcommands: generate, decode, route, stats, betweenness, electrical,
verify.  Labels are given in their textual form ("2011.5"); a vertex id
works too, written "#17".  Exit codes: 0 success / all checks pass,
1 verification failure, 2 usage error, 3 size-cap exceeded.  Output for
identical invocations is byte-identical; every sampling option takes a
--seed with a fixed default.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import analytics, centrality, electrical, verify
from .errors import KochError, SizeCapError
from .graph import KochGraph, build
from .labels import (
    Label,
    children,
    companion,
    degree_of,
    father,
    format_label,
    parse_label,
)
from .routing import ancestor_chain, bfs_distances, route

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_SIZE = 3


class UsageError(KochError):
    pass


def _add_mt(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--m", type=int, required=True, help="groups per triangle vertex (>= 1)")
    parser.add_argument("--t", type=int, required=True, help="growth steps (>= 0)")


def _resolve_vertex(graph: KochGraph, text: str) -> int:
    if text.startswith("#"):
        try:
            vid = int(text[1:])
        except ValueError:
            raise UsageError(f"bad vertex id {text!r}") from None
        if not 0 <= vid < graph.n_vertices:
            raise UsageError(f"vertex id {vid} out of range 0..{graph.n_vertices - 1}")
        return vid
    return graph.vertex_by_label(parse_label(text, graph.m))


def _resolve_label(args, text: str) -> Label:
    """Textual label, or '#<id>' resolved through a build of K_{m,t}."""
    if text.startswith("#"):
        graph = build(args.m, args.t)
        return graph.label_of(_resolve_vertex(graph, text))
    return parse_label(text, args.m)


def _jdump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _num(x) -> float:
    return float(x) if isinstance(x, Fraction) else x


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_generate(args) -> int:
    graph = build(args.m, args.t)
    out = open(args.output, "w") if args.output else sys.stdout
    try:
        if args.format == "edgelist":
            graph.write_edgelist(out)
        elif args.format == "json":
            graph.write_json(out)
        else:
            graph.write_dot(out)
    finally:
        if args.output:
            out.close()
    return EXIT_OK


def _cmd_decode(args) -> int:
    label = _resolve_label(args, args.label)
    m, t = args.m, args.t
    doc = {
        "label": format_label(label),
        "subnet": label.subnet,
        "bits": label.bits,
        "index": label.index,
        "birth": label.birth,
        "degree": degree_of(m, t, label),
        "father": None if label.is_hub else format_label(father(m, label)),
        "companion": None if label.is_hub else format_label(companion(label)),
        "ancestors": [format_label(x) for x in ancestor_chain(m, label)[1:]],
        "children": sorted(format_label(c) for c in children(m, t, label)),
    }
    print(_jdump(doc))
    return EXIT_OK


def _cmd_route(args) -> int:
    a = _resolve_label(args, args.a)
    b = _resolve_label(args, args.b)
    path = route(args.m, args.t, a, b)
    for hop in path.hops:
        print(format_label(hop))
    summary = {"length": path.length, "ops": path.ops_used}
    if args.oracle:
        graph = build(args.m, args.t)
        dist = bfs_distances(graph, graph.vertex_by_label(a))
        summary["oracle_length"] = int(dist[graph.vertex_by_label(b)])
    print(_jdump(summary))
    return EXIT_OK


def _closed_form_doc(cf: analytics.ClosedForms) -> dict:
    return {
        "m": cf.m,
        "t": cf.t,
        "vertices": cf.n_vertices,
        "edges": cf.n_edges,
        "triangles": cf.n_triangles,
        "delta_v": cf.delta_v,
        "gamma": cf.gamma,
        "apl": str(cf.apl),
        "apl_float": float(cf.apl),
        "clustering": str(cf.clustering),
        "clustering_float": float(cf.clustering),
        "degree_histogram": {str(k): v for k, v in sorted(cf.degree_histogram.items())},
    }


def _cmd_stats(args) -> int:
    cf = analytics.closed_forms(args.m, args.t)
    if args.csv:
        print("degree,count_closed_form")
        for k, v in sorted(cf.degree_histogram.items()):
            print(f"{k},{v}")
        return EXIT_OK
    doc = {"closed_form": _closed_form_doc(cf)}
    if args.empirical:
        graph = build(args.m, args.t)
        emp = analytics.empirical_stats(graph, seed=args.seed)
        doc["empirical"] = {
            "vertices": emp.n_vertices,
            "edges": emp.n_edges,
            "degree_histogram": {str(k): v for k, v in emp.degree_histogram.items()},
            "clustering": str(emp.clustering),
            "clustering_float": float(emp.clustering),
            "apl": None if emp.apl is None else str(emp.apl),
            "apl_float": emp.apl_value,
            "apl_stderr": emp.apl_stderr,
        }
        audit = {
            "counts_match": emp.n_vertices == cf.n_vertices and emp.n_edges == cf.n_edges,
            "histogram_matches": cf.degree_histogram == dict(emp.degree_histogram),
            "apl_matches": None if emp.apl is None else emp.apl == cf.apl,
            "clustering_matches": emp.clustering == cf.clustering,
        }
        if args.t >= 2:
            ca = analytics.claim_audit(graph)
            audit["apl_increment"] = ca.apl_increment
            audit["apl_increment_target"] = ca.apl_increment_target
            if args.m == 1:
                audit["clustering_gap_vs_limit"] = ca.clustering_gap_vs_limit
        doc["audit"] = audit
    print(_jdump(doc))
    return EXIT_OK


def _cmd_betweenness(args) -> int:
    graph = build(args.m, args.t)
    if args.mode == "formula":
        if args.edges:
            print("u,v,class,paper")
            for u, v in graph.edges:
                later = max(graph.vertices[u].birth_step, graph.vertices[v].birth_step)
                val = centrality.paper_edge_betweenness(args.m, args.t, later)
                print(
                    f"{format_label(graph.label_of(u))},{format_label(graph.label_of(v))},"
                    f"{graph.edge_class(u, v)},{float(val)!r}"
                )
        else:
            print("label,birth,degree,paper,firstorder")
            for rec in graph.vertices:
                paper = centrality.paper_vertex_betweenness(args.m, args.t, rec.birth_step)
                first = centrality.firstorder_vertex_betweenness(args.m, args.t, rec.birth_step)
                print(
                    f"{format_label(rec.label)},{rec.birth_step},{graph.degree(rec.id)},"
                    f"{float(paper)!r},{float(first)!r}"
                )
        return EXIT_OK

    report = centrality.centrality_report(graph)
    if args.mode == "exact":
        if args.edges:
            print("u,v,class,exact")
            for e in report.edges:
                print(
                    f"{format_label(e.label_u)},{format_label(e.label_v)},"
                    f"{e.edge_class},{e.exact!r}"
                )
        else:
            print("label,birth,degree,exact")
            for r in report.vertices:
                print(f"{format_label(r.label)},{r.birth},{r.degree},{r.exact!r}")
        return EXIT_OK

    for line in centrality.report_csv_rows(report, edges=args.edges):
        print(line)
    print(_jdump(report.audit()))
    return EXIT_OK


def _cmd_electrical(args) -> int:
    graph = build(args.m, args.t)
    if args.cfb:
        n = graph.n_vertices
        if n <= electrical.CFB_EXHAUSTIVE_MAX_N:
            result = electrical.current_flow_betweenness(graph)
        else:
            result = electrical.current_flow_betweenness(
                graph, policy="sampled", sample_pairs=args.pairs, seed=args.seed
            )
        print("label,current_flow_betweenness")
        for rec in graph.vertices:
            print(f"{format_label(rec.label)},{float(result.values[rec.id])!r}")
        return EXIT_OK

    if args.source is None or args.target is None:
        raise UsageError("--source and --target are required for --profile/--gap")
    s = _resolve_vertex(graph, args.source)
    v = _resolve_vertex(graph, args.target)
    if s == v:
        raise UsageError("source and target must differ")
    if args.gap:
        gap = electrical.voltage_gap(graph, s, v)
        print(_jdump({"gap": gap.gap, "spectrum": [float(x) for x in gap.spectrum]}))
        return EXIT_OK
    prof = electrical.path_profile(graph, s, v)
    print(
        _jdump(
            {
                "d": prof.distance,
                "R_eff": prof.effective_resistance,
                "path_voltages": prof.on_path_voltages,
                "companion_voltages": prof.companion_voltages,
                "support_edges": len(prof.support_edges),
                "max_offpath_current": prof.max_offpath_current,
                "thm6": prof.thm_support_ok,
                "thm7": prof.thm_voltages_ok,
                "thm8": prof.thm_split_ok,
            }
        )
    )
    return EXIT_OK


def _cmd_verify(args) -> int:
    suites = verify.SUITE_ORDER if args.suite == "all" else (args.suite,)
    result = verify.run(
        args.m,
        args.t,
        suites=suites,
        seed=args.seed,
        sample_pairs=args.pairs,
        electrical_pairs=args.electrical_pairs,
    )
    sys.stdout.write(verify.render(result))
    return result.exit_code


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kochnet",
        description="Deterministic Koch network laboratory",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="build K_{m,t} and export it")
    _add_mt(p)
    p.add_argument("--format", choices=("edgelist", "json", "dot"), default="edgelist")
    p.add_argument("-o", "--output", default=None, help="write to a file instead of stdout")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("decode", help="explain one label: father, companion, children, degree")
    _add_mt(p)
    p.add_argument("label")
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("route", help="shortest path between two labels, label arithmetic only")
    _add_mt(p)
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--oracle", action="store_true", help="also report the BFS distance")
    p.set_defaults(func=_cmd_route)

    p = sub.add_parser("stats", help="closed-form and measured structural statistics")
    _add_mt(p)
    p.add_argument("--empirical", action="store_true", help="build the graph and measure")
    p.add_argument("--csv", action="store_true", help="flat per-degree rows")
    p.add_argument("--seed", type=int, default=analytics.APL_SAMPLE_SEED)
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("betweenness", help="vertex/edge betweenness: oracle vs printed formulas")
    _add_mt(p)
    p.add_argument("--mode", choices=("formula", "exact", "compare"), default="compare")
    p.add_argument("--edges", action="store_true", help="emit edge rows instead of vertex rows")
    p.set_defaults(func=_cmd_betweenness)

    p = sub.add_parser("electrical", help="unit-resistor analysis")
    _add_mt(p)
    p.add_argument("--source", default=None)
    p.add_argument("--target", default=None)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--profile", action="store_true", help="pair profile (default)")
    mode.add_argument("--cfb", action="store_true", help="current-flow betweenness over pairs")
    mode.add_argument("--gap", action="store_true", help="voltage-gap community statistic")
    p.add_argument("--pairs", type=int, default=2000, help="sample size when N is large")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_electrical)

    p = sub.add_parser("verify", help="run the verification suites")
    _add_mt(p)
    p.add_argument(
        "--suite",
        choices=("all",) + verify.SUITE_ORDER,
        default="all",
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pairs", type=int, default=10**5, help="routing pairs when sampling")
    p.add_argument("--electrical-pairs", type=int, default=50)
    p.add_argument(
        "--jobs",
        type=int,
        default=1,
        help="reserved for parallel oracle passes; results never depend on it",
    )
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SizeCapError as exc:
        print(f"size error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KochError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        # downstream consumer (head, less) closed the stream; not an error
        sys.stderr.close()
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
