"""Run the randomized property battery over several seeds and tabulate violation counts.

Usage:
    python scripts/property_battery.py --seeds 0 1 2 --trials 10000 --csv battery.csv
"""

from __future__ import annotations

import argparse
import csv
import sys
import time

from knockout_balance.axioms import Axiom, matches_expected_pattern, property_matrix, run_battery


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seeds", type=int, nargs="+", default=[0])
    parser.add_argument("--trials", type=int, default=10_000)
    parser.add_argument("--csv", help="also write seed,index,property,checked,violations rows here")
    args = parser.parse_args(argv)

    rows = []
    all_match = True
    for seed in args.seeds:
        start = time.perf_counter()
        result = run_battery(trials=args.trials, seed=seed)
        ok = matches_expected_pattern(property_matrix(result))
        all_match &= ok
        print(f"seed {seed}: {'pattern matches' if ok else 'PATTERN MISMATCH'} ({time.perf_counter() - start:.1f}s)")
        for kind, counts in result.violations.items():
            for axiom in Axiom:
                rows.append((seed, kind.value, axiom.value, result.checked[kind][axiom], counts[axiom]))
            bad = [f"{a.value}={n}" for a, n in counts.items() if n]
            print(f"  {kind.value:>10}: {', '.join(bad) or 'no violations'}")

    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(("seed", "index", "property", "checked", "violations"))
            writer.writerows(rows)
    return 0 if all_match else 1


if __name__ == "__main__":
    sys.exit(main())
