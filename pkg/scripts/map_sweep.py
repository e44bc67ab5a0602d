#!/usr/bin/env python3
"""Run the seeded benchmark grid (n in {10,20,30}, r in {1,2}) and print the per-cell summary.

    python scripts/map_sweep.py --algo lacam,pibt --jobs 4 --out results/sweep.csv
"""
import argparse
from pathlib import Path

from riumapf.bench import BenchConfig, format_summary, summarize, sweep, write_records, write_summary
from riumapf.maps import load_map

MAPS = Path(__file__).resolve().parents[1] / "maps"


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--maps", default="empty-16-16,random-64-64-20")
    ap.add_argument("--n", default="10,20,30")
    ap.add_argument("--r", default="1,2")
    ap.add_argument("--instances", type=int, default=50)
    ap.add_argument("--algo", default="lacam")
    ap.add_argument("--timeout", type=float, default=60.0, help="seconds per run")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", help="per-run CSV; the summary goes next to it")
    args = ap.parse_args()

    maps = {name: load_map(MAPS / f"{name}.map") for name in args.maps.split(",")}
    records = sweep(maps, [int(x) for x in args.n.split(",")], [int(x) for x in args.r.split(",")],
                    args.instances, args.algo.split(","), BenchConfig(timeout=args.timeout), args.jobs)
    summary = summarize(records)
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        write_records(out, records)
        write_summary(out.with_suffix(".summary.csv"), summary)
    print(format_summary(summary))


if __name__ == "__main__":
    main()
