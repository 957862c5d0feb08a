"""Minimal DIMACS solver front end on top of pysat, for cross-checking.

Prints competition-style output (``s SATISFIABLE`` plus ``v`` lines, or
``s UNSATISFIABLE``), so it can stand in for any external solver:

    obstacle-sat prove "gyro(5)" --external-solver "python3 scripts/external_solver.py"

Requires ``pip install python-sat``; the package itself does not.
"""

import argparse
import sys

from pysat.formula import CNF
from pysat.solvers import Solver


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("cnf")
    ap.add_argument("--solver", default="cadical153")
    args = ap.parse_args(argv)
    f = CNF(from_file=args.cnf)
    with Solver(name=args.solver, bootstrap_with=f.clauses) as s:
        if s.solve():
            print("s SATISFIABLE")
            print("v " + " ".join(map(str, s.get_model())) + " 0")
            return 10
        print("s UNSATISFIABLE")
        return 20


if __name__ == "__main__":
    sys.exit(main())
