"""Print the verdict strip for both single-exclusion blocks over a range of n."""

import argparse

from prodint.truncadd import verify_pair_single_exclusion
from prodint.wordcap import verify_single_exclusion_wordcap


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=5)
    ap.add_argument("--extra", type=int, default=3, help="window beyond n")
    args = ap.parse_args()
    for label, verify in (("truncadd", verify_pair_single_exclusion), ("wordcap", verify_single_exclusion_wordcap)):
        for n in range(2, args.nmax + 1):
            report = verify(n, n + args.extra)
            print(f"{label:8} n={n}: {report.render()}")


if __name__ == "__main__":
    main()
