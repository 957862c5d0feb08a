"""Re-run the headline proofs and sanity checks, writing one manifest per run.

    python3 scripts/reproduce.py [--out results] [--skip-x5] [--with-x5-single] [--external-solver CMD]

Runs, in order: X_4 outside, X_4 single (cap 4), the outside SAT sanity set,
and X_5 outside (uncapped). Each run prints its verdict line and leaves
``<out>/<name>.manifest.json`` behind.
"""

import argparse
import sys
import time
from pathlib import Path

from obstacle_sat.cli import main as cli

RUNS = [
    ("x4_outside", ["gyro(4)", "--mode", "outside"], 0),
    ("x4_single_cap4", ["gyro(4)", "--mode", "single", "--max-path-len", "4"], 0),
    ("x3_outside", ["gyro(3)", "--mode", "outside"], 1),
    ("c5_outside", ["cycle(5)", "--mode", "outside"], 1),
    ("c8_outside", ["cycle(8)", "--mode", "outside"], 1),
    ("k23_outside", ["complete_bipartite(2,3)", "--mode", "outside"], 1),
    ("k113_outside", ["complete_multipartite(1,1,3)", "--mode", "outside"], 1),
    ("x5_outside", ["gyro(5)", "--mode", "outside"], 0),
]
# large (487k clauses); best run with an external solver
X5_SINGLE = ("x5_single_cap5", ["gyro(5)", "--mode", "single", "--max-path-len", "5"], 0)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results")
    ap.add_argument("--skip-x5", action="store_true")
    ap.add_argument("--with-x5-single", action="store_true", help="also run X_5 single mode at cap 5")
    ap.add_argument("--external-solver", default=None)
    args = ap.parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    failures = 0
    for name, flags, expect in RUNS + ([X5_SINGLE] if args.with_x5_single else []):
        if args.skip_x5 and name.startswith("x5"):
            continue
        extra = ["--manifest", str(out / f"{name}.manifest.json")]
        if args.external_solver:
            extra += ["--external-solver", args.external_solver]
        t0 = time.perf_counter()
        print(f"[{name}] ", end="", flush=True)
        code = cli(["prove", *flags, *extra])
        ok = code == expect
        failures += not ok
        print(f"[{name}] exit {code} ({'as expected' if ok else 'UNEXPECTED'}) in {time.perf_counter() - t0:.1f} s")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
