#!/usr/bin/env python3
"""Re-checks sreq verdicts with z3 through the exported SMT-LIB scripts.

    python3 tools/smt_crosscheck.py --sreq build/sreq CLASS FILE...

For every driver of CLASS the negated obligation must be unsat exactly when
sreq reports PROVED. Requires the z3-solver package.
"""

import argparse
import json
import subprocess
import sys

import z3


def run(cmd):
    return subprocess.run(cmd, capture_output=True, text=True)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sreq", default="build/sreq")
    ap.add_argument("requirement_class")
    ap.add_argument("files", nargs="+")
    args = ap.parse_args()

    verify = run([args.sreq, "--format", "structured", "verify", args.requirement_class, *args.files])
    if verify.returncode not in (0, 1):
        sys.exit(verify.stderr)
    outcomes = json.loads(verify.stdout)["payload"]["outcomes"]

    disagreements = 0
    for o in outcomes:
        script = run([args.sreq, "export-smt", o["owner"], *args.files])
        if script.returncode != 0:
            sys.exit(script.stderr)
        solver = z3.Solver()
        solver.from_string(script.stdout)
        answer = str(solver.check())
        expected = "unsat" if o["status"] == "PROVED" else "sat"
        ok = answer == expected
        disagreements += not ok
        print(f"{o['owner']:45} sreq {o['status']:8} z3 {answer:6} {'ok' if ok else 'MISMATCH'}")
    sys.exit(1 if disagreements else 0)


if __name__ == "__main__":
    main()
