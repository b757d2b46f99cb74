"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 bad input,
3 a resource cap was exceeded, 4 an internal invariant was violated.
"""

import argparse
import sys

from . import caps
from .classifiers import classify
from .duality import dual, ess_dual
from .errors import CapExceeded, InputError, InvariantViolation
from .graphs import make_co_half_graph, make_half_graph
from .io import dumps, graph_report, load_graph, load_system, system_report
from .oneinclusion import build_graph, to_dot
from .oracle import report_json, run_all_checks
from .setsystem import SetSystem, canonical_order, complement_family

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT = 2
EXIT_CAP = 3
EXIT_INVARIANT = 4


def full_chain_system(n):
    domain = tuple(str(i) for i in range(1, n + 1))
    return SetSystem._trusted(domain, tuple((1 << k) - 1 for k in range(n + 1)))


def upward_starlike_system(wings, length=1):
    """``wings`` disjoint chains of ``length`` steps out of ∅, plus one unused element."""
    if wings < 2 or length < 1:
        raise InputError("a starlike system needs at least 2 wings of length >= 1")
    n = wings * length + 1
    domain = tuple(str(i) for i in range(1, n + 1))
    family = [0]
    for w in range(wings):
        member = 0
        for step in range(length):
            member |= 1 << (w * length + step)
            family.append(member)
    return SetSystem._trusted(domain, canonical_order(family))


def downward_starlike_system(wings, length=1):
    return complement_family(upward_starlike_system(wings, length))


def _summary_system(rep):
    flags = rep["flags"]
    nums = rep["numbers"]
    lines = [
        f"members {nums['size']}, essential {nums['ess']}, additionality {nums['additionality']}",
        f"VC-dimension {nums['vc_dim']}, |sht| {nums['sht']}, |ssht| {nums['ssht']}",
        "flags: " + (", ".join(k for k in sorted(flags) if flags[k]) or "none"),
        f"kind: {rep['classification']['kind']}",
    ]
    return "\n".join(lines)


def _emit(obj, pretty, summary=None):
    if pretty and summary is not None:
        print(summary(obj))
    else:
        print(dumps(obj, pretty))


def cmd_analyze_system(args):
    _emit(system_report(load_system(args.path)), args.pretty, _summary_system)
    return EXIT_OK


def cmd_analyze_graph(args):
    rep = graph_report(load_graph(args.path))
    _emit(rep, args.pretty)
    return EXIT_OK


def cmd_dual(args):
    _emit(dual(load_system(args.path)).to_json(), args.pretty)
    return EXIT_OK


def cmd_ess_dual(args):
    _emit(ess_dual(load_system(args.path)).to_json(), args.pretty)
    return EXIT_OK


def cmd_classify(args):
    s = load_system(args.path)
    _emit(classify(s).to_json(s), args.pretty)
    return EXIT_OK


def cmd_export_dot(args):
    sys.stdout.write(to_dot(build_graph(load_system(args.path))))
    return EXIT_OK


GENERATORS = {
    "half-graph": lambda a: make_half_graph(a.n, a.orientation),
    "co-half-graph": lambda a: make_co_half_graph(a.n),
    "full-chain": lambda a: full_chain_system(a.n),
    "upward-starlike": lambda a: upward_starlike_system(a.n, a.length),
    "downward-starlike": lambda a: downward_starlike_system(a.n, a.length),
}


def cmd_gen(args):
    if args.n < 0:
        raise InputError("n must be non-negative")
    _emit(GENERATORS[args.kind](args).to_json(), args.pretty)
    return EXIT_OK


def cmd_verify(args):
    results = run_all_checks(
        systems=args.systems, graphs=args.graphs, cliques=args.cliques, workers=args.workers
    )
    rep = report_json(results)
    if args.pretty:
        for r in results:
            status = "pass" if r.passed else ("known erratum" if r.erratum else "FAIL")
            print(f"{r.check_id:28s} {r.instances:8d} instances  {status}")
    else:
        print(dumps(rep))
    return EXIT_OK if rep["all_passed"] else EXIT_CHECK_FAILED


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cubekit",
        description="Analyze finite set systems and graphs: well-gradedness, "
        "VC-dimension, duality and structural classification.",
    )
    parser.add_argument("--pretty", action="store_true", help="human-readable output")
    parser.add_argument("--max-domain", type=int, help="cap on |X| for 2^|X| enumerations")
    parser.add_argument("--max-vertices", type=int, help="cap on clique-system vertex count")
    parser.add_argument("--debug-asserts", action="store_true", help="enable cross-check assertions")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, fn, helptext in (
        ("analyze-system", cmd_analyze_system, "full report for a set-system file"),
        ("analyze-graph", cmd_analyze_graph, "full report for a graph file"),
        ("dual", cmd_dual, "dual system"),
        ("ess-dual", cmd_ess_dual, "essential dual system"),
        ("classify", cmd_classify, "structural classification"),
        ("export-dot", cmd_export_dot, "one-inclusion graph in DOT"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("path")
        p.set_defaults(func=fn)

    p = sub.add_parser("gen", help="generate a named graph or system")
    p.add_argument("kind", choices=sorted(GENERATORS))
    p.add_argument("n", type=int, help="order (graphs), length (full-chain) or wing count")
    p.add_argument("--orientation", choices=("<=", ">="), default="<=")
    p.add_argument("--length", type=int, default=1, help="wing length for starlike systems")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="run the exhaustive theorem checks")
    p.add_argument("--systems", type=int, default=3, help="largest domain size")
    p.add_argument("--graphs", type=int, default=4, help="largest vertex count")
    p.add_argument("--cliques", type=int, default=None, help="largest vertex count for clique checks")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    overrides = {}
    if args.max_domain is not None:
        overrides["max_shatter_domain"] = args.max_domain
    if args.max_vertices is not None:
        overrides["max_vertices"] = args.max_vertices
    try:
        with caps.caps_override(**overrides), caps.debug_asserts(
            args.debug_asserts or caps.debug_enabled()
        ):
            return args.func(args)
    except InputError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
