"""Tabulate the witness manifolds carrying m pairwise non-isomorphic
tight structures, for m up to a configurable bound.

    python3 scripts/witness_table.py --max-m 6
    python3 scripts/witness_table.py --max-m 4 --json
"""

import argparse
import json
from dataclasses import dataclass

from contactsurgery.cfrac import format_rational
from contactsurgery.contact import witness_nonisomorphic


@dataclass
class TableConfig:
    max_m: int = 6
    search_bound: int = 10_000
    as_json: bool = False


def run(cfg: TableConfig) -> None:
    reports = [
        witness_nonisomorphic(m, search_bound=cfg.search_bound)
        for m in range(1, cfg.max_m + 1)
    ]
    if cfg.as_json:
        print(json.dumps([r.as_dict() for r in reports], sort_keys=True))
        return
    print(f"{'m':>2}  {'primes':<24} {'|H1|':>8}  {'alpha':>8}  {'slope':<12} orders")
    for m, rep in enumerate(reports, start=1):
        primes = ",".join(str(p) for p in rep.primes)
        orders = ",".join(str(e.order) for e in rep.entries)
        print(
            f"{m:>2}  {primes:<24} {rep.group_order:>8}  {rep.alpha:>8}  "
            f"{format_rational(rep.surgery_slope):<12} {orders}"
        )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-m", type=int, default=TableConfig.max_m)
    parser.add_argument("--bound", type=int, default=TableConfig.search_bound)
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args()
    run(TableConfig(max_m=args.max_m, search_bound=args.bound, as_json=args.json))


if __name__ == "__main__":
    main()
