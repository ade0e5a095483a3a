"""Realize every cofinite target with exclusions drawn from {2..kmax} and tabulate the constructions."""

import argparse
import itertools

from prodint.natset import NatSet
from prodint.realizer import realize_hnstar, realize_hq


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kmax", type=int, default=5)
    ap.add_argument("--q-count", type=int, default=2)
    args = ap.parse_args()
    print(f"{'target':<22}{'hq components':<18}{'explicit size':<15}hnstar explicit")
    for r in range(args.kmax):
        for s in itertools.combinations(range(2, args.kmax + 1), r):
            x = NatSet.cofinite(s)
            hq = realize_hq(x, args.q_count)
            hn = realize_hnstar(x)
            print(f"{str(x):<22}{str(hq.components):<18}{str(hq.explicit_product_size):<15}{hn.explicit_product_size}")


if __name__ == "__main__":
    main()
