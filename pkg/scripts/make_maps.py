#!/usr/bin/env python3
"""Write the benchmark maps into maps/.

empty-16-16 is fully open. The random 64x64 map with 20% obstacles is a
seeded stand-in for the MovingAI file of the same name, trimmed to its
largest 4-connected component.
"""
import argparse
from pathlib import Path

from riumapf.maps import format_movingai, random_grid

RANDOM_SEED = 20


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[1] / "maps"))
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "empty-16-16.map").write_text(format_movingai([[True] * 16 for _ in range(16)]))
    (out / "random-64-64-20.map").write_text(format_movingai(random_grid(64, 64, 0.2, RANDOM_SEED)))
    print(f"maps written to {out}")


if __name__ == "__main__":
    main()
