from __future__ import annotations

import argparse

from mccarthy.classify import describe
from mccarthy.reduce import CycleDetected, NormalForm, whnf_search
from mccarthy.reproduce import ZOO_FUEL, run_zoo


def main() -> int:
    ap = argparse.ArgumentParser(description="Step counts and verdicts for the classification zoo")
    ap.add_argument("--fuel", type=int, default=ZOO_FUEL)
    args = ap.parse_args()

    header = f"{'term':<18}{'verdict':<40}{'steps':>6}{'whnf':>16}{'loop':>6}{'growth':>8}"
    print(header)
    print("-" * len(header))
    failed = 0
    for row in run_zoo(args.fuel):
        v = row.verdict
        w = whnf_search(row.term, args.fuel)
        if isinstance(w, NormalForm):
            whnf, loop, growth = f"{w.steps} steps", "-", "-"
        elif isinstance(w, CycleDetected):
            whnf, loop, growth = "cycle", str(w.loop_length), str(w.growth)
        else:
            whnf, loop, growth = "fuel", "-", "-"
        mark = "" if row.ok else "  MISMATCH"
        failed += not row.ok
        print(f"{row.label:<18}{describe(v):<40}{v.steps:>6}{whnf:>16}{loop:>6}{growth:>8}{mark}")
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
