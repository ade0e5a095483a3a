"""Run the acceptance scoreboard and exit nonzero on any failure."""

import argparse
import sys

from prodint.acceptance import DEFAULT_SEED, run_all

ap = argparse.ArgumentParser(description=__doc__)
ap.add_argument("--quick", action="store_true")
ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
args = ap.parse_args()
sys.exit(0 if all(o.passed for o in run_all(quick=args.quick, seed=args.seed)) else 1)
