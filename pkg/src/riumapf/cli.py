"""Command-line entry point: ``riumapf <subcommand> ...``.

Exit status is 0 on success, 2 when a planner returns no plan, and 1 for
usage or I/O errors.
"""
from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from . import bench
from .errors import InvalidGraph, InvalidInstance, InvalidPlan, RiumapfError
from .ilp import build_bounded_model, build_galactic_model, export_lp
from .instance import format_instance, format_plan, read_instance, read_plan, sample_random_instance, validate_plan
from .kernel import GalacticGraph, kernelize
from .maps import format_edge_list, load_graph, read_edge_list
from .trace import write_trace

EXIT_OK, EXIT_ERROR, EXIT_UNSOLVED = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _csv_ints(text: str) -> list:
    return [int(x) for x in text.split(",") if x]


def _map_name(path: str) -> str:
    return Path(path).stem


def _load(args):
    graph = load_graph(args.map)
    instance = read_instance(args.instance, graph, getattr(args, "r", None))
    return graph, instance


def _load_galactic(path, instance):
    """Black-hole flags from ``b`` lines of an edge-list map, if any."""
    if str(path).endswith(".map"):
        return None
    text = Path(path).read_text()
    if not text.lstrip().startswith("p"):
        return None
    graph, black = read_edge_list(path)
    if not black:
        return None
    flags = [False] * graph.vertex_count
    for b in black:
        flags[b] = True
    return GalacticGraph(instance.graph, tuple(flags), tuple(frozenset([v]) for v in range(graph.vertex_count)))


def cmd_gen(args) -> int:
    graph = load_graph(args.map)
    instance = sample_random_instance(graph, args.n, args.r, args.seed)
    _emit(args.out, format_instance(instance))
    return EXIT_OK


def cmd_solve(args) -> int:
    _, instance = _load(args)
    config = bench.BenchConfig(timeout=args.timeout_ms / 1000, livelock_depth=args.livelock_depth)
    rec, plan, reason = bench.run_one(instance, _map_name(args.map), args.seed, args.algo, config)
    w = csv.writer(sys.stdout)
    w.writerow(rec.row())
    if plan is None:
        print(f"unsolved: {reason}", file=sys.stderr)
        return EXIT_UNSOLVED
    if args.out:
        Path(args.out).write_text(format_plan(plan))
    return EXIT_OK


def cmd_validate(args) -> int:
    _, instance = _load(args)
    violation = validate_plan(instance, read_plan(args.plan))
    if violation is None:
        print("ok")
        return EXIT_OK
    print(f"invalid: {violation}")
    return EXIT_UNSOLVED


def cmd_kernelize(args) -> int:
    _, instance = _load(args)
    gal, S, T = kernelize(instance, _load_galactic(args.map, instance))
    lines = [format_edge_list(gal.graph, gal.black_holes).rstrip("\n"),
             f"r {instance.radius}", f"n {instance.n}"]
    lines += [f"s {v}" for v in S] + [f"t {v}" for v in T]
    _emit(args.out, "\n".join(lines) + "\n")
    print(f"vertices {instance.graph.vertex_count} -> {gal.vertex_count}, "
          f"black holes {len(gal.black_holes)}", file=sys.stderr)
    return EXIT_OK


def cmd_export_lp(args) -> int:
    _, instance = _load(args)
    gal = _load_galactic(args.map, instance)
    if gal is None:
        model = build_bounded_model(instance, args.tau)
    else:
        model = build_galactic_model(gal, instance.start, instance.target, instance.n,
                                     instance.radius, args.tau)
    if args.out:
        with open(args.out, "wb") as fh:
            export_lp(model, fh)
    else:
        export_lp(model, sys.stdout.buffer)
    return EXIT_OK


def cmd_bench(args) -> int:
    maps = {_map_name(p): load_graph(p) for p in args.map}
    config = bench.BenchConfig(timeout=args.timeout_ms / 1000, livelock_depth=args.livelock_depth)
    records = bench.sweep(maps, args.n, args.r, args.instances, args.algo, config, args.jobs)
    summary = bench.summarize(records)
    if args.out:
        bench.write_records(args.out, records)
        bench.write_summary(Path(args.out).with_suffix(".summary.csv"), summary)
    else:
        w = csv.writer(sys.stdout)
        w.writerow(bench.RunRecord.columns())
        for rec in records:
            w.writerow(rec.row())
    if summary:
        print(bench.format_summary(summary), file=sys.stderr if not args.out else sys.stdout)
    return EXIT_OK


def cmd_trace(args) -> int:
    _, instance = _load(args)
    paths = write_trace(instance, read_plan(args.plan), args.out)
    print(f"wrote {len(paths)} frames to {args.out}")
    return EXIT_OK


def _emit(out, text: str) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="riumapf", description="Distance-r unlabeled multi-agent path planning.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, instance=True, r_required=False):
        sp.add_argument("--map", required=True, help="MovingAI .map or edge-list file")
        if instance:
            sp.add_argument("--instance", required=True)
        sp.add_argument("--r", type=int, required=r_required, default=None,
                        help="distance radius (overrides the instance file)")

    sp = sub.add_parser("gen", help="sample a random instance")
    sp.add_argument("--map", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("solve", help="plan one instance")
    common(sp)
    sp.add_argument("--algo", choices=bench.ALGORITHMS, default="lacam")
    sp.add_argument("--timeout-ms", type=int, default=60_000)
    sp.add_argument("--livelock-depth", type=int, default=2)
    sp.add_argument("--seed", type=int, default=0, help="recorded in the output row")
    sp.add_argument("--out", help="plan file to write")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("validate", help="check a plan file")
    common(sp)
    sp.add_argument("--plan", required=True)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("kernelize", help="emit the reduced galactic instance")
    common(sp)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_kernelize)

    sp = sub.add_parser("export-lp", help="write the horizon-tau feasibility model")
    common(sp)
    sp.add_argument("--tau", type=int, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_export_lp)

    sp = sub.add_parser("bench", help="run a seeded sweep and write CSV")
    sp.add_argument("--map", required=True, action="append", help="repeat for several maps")
    sp.add_argument("--n", type=_csv_ints, required=True, help="comma-separated agent counts")
    sp.add_argument("--r", type=_csv_ints, required=True, help="comma-separated radii")
    sp.add_argument("--instances", type=int, default=50)
    sp.add_argument("--algo", type=lambda s: s.split(","), default=["lacam"])
    sp.add_argument("--timeout-ms", type=int, default=60_000)
    sp.add_argument("--livelock-depth", type=int, default=2)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("trace", help="render plan frames as SVG")
    common(sp)
    sp.add_argument("--plan", required=True)
    sp.add_argument("--out", required=True, help="output directory")
    sp.set_defaults(func=cmd_trace)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "bench":
        bad = [a for a in args.algo if a not in bench.ALGORITHMS]
        if bad:
            parser.error(f"unknown algorithm {bad[0]!r}")
    try:
        return args.func(args)
    except (OSError, InvalidGraph, InvalidInstance, InvalidPlan, RiumapfError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
