"""Sweep surgery slopes through the obstructed interval and tabulate the
plumbing's determinant and definiteness class.

The rewriting is valid for any r < 4n; inside [2n-1, 4n) the form must
come out positive definite, and this sweep shows what happens on both
sides of that window.

    python3 scripts/definiteness_boundary.py --n 2 --denominator 3 --pad 2
"""

import argparse
from dataclasses import dataclass
from fractions import Fraction

from contactsurgery.cfrac import format_rational
from contactsurgery.homology import det_bareiss
from contactsurgery.kirby import definiteness, plumbing_presentation


@dataclass
class SweepConfig:
    n: int = 1
    denominator: int = 2  # step size 1/denominator
    pad: int = 2  # integers to scan below the interval


def run(cfg: SweepConfig) -> None:
    lo, hi = 2 * cfg.n - 1, 4 * cfg.n
    step = Fraction(1, cfg.denominator)
    r = Fraction(lo - cfg.pad)
    print(f"n = {cfg.n}, obstructed interval [{lo}, {hi})")
    print(f"{'slope':>8}  {'det':>6}  {'definiteness':<20} note")
    while r < hi:
        tree = plumbing_presentation(cfg.n, r)
        m = tree.intersection_matrix()
        note = "obstructed" if lo <= r else ""
        print(
            f"{format_rational(r):>8}  {det_bareiss(m):>6}  "
            f"{definiteness(m).value:<20} {note}"
        )
        r += step


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=SweepConfig.n)
    parser.add_argument("--denominator", type=int, default=SweepConfig.denominator)
    parser.add_argument("--pad", type=int, default=SweepConfig.pad)
    args = parser.parse_args()
    run(SweepConfig(n=args.n, denominator=args.denominator, pad=args.pad))


if __name__ == "__main__":
    main()
