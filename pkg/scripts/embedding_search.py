"""Exercise the diagonal-embedding search: the rank-6 obstruction forms
should all exhaust without a witness, while the chain lattices embed at
their minimal possible rank.

    python3 scripts/embedding_search.py --a1-max 4 --n-max 3 --chain-max 8
"""

import argparse
import time
from dataclasses import dataclass

from contactsurgery.lattice import embed_bound, embed_in_diagonal, lambda_gram


@dataclass
class SearchConfig:
    a1_max: int = 4
    n_max: int = 3
    chain_max: int = 8


def chain_gram(k: int):
    g = [[0] * k for _ in range(k)]
    for i in range(k):
        g[i][i] = -2
    for i in range(k - 1):
        g[i][i + 1] = g[i + 1][i] = 1
    return g


def run(cfg: SearchConfig) -> None:
    print("obstruction forms")
    for n in range(1, cfg.n_max + 1):
        for a1 in range(2, cfg.a1_max + 1):
            lam = lambda_gram(a1, n)
            bound = embed_bound(lam)
            t0 = time.perf_counter()
            witness = embed_in_diagonal(lam, bound)
            dt = time.perf_counter() - t0
            status = "EMBEDS (unexpected)" if witness else f"no embedding up to rank {bound}"
            print(f"  a1={a1} n={n}: {status}  [{dt:.2f}s]")

    print("chain lattices (minimal embedding rank)")
    for k in range(1, cfg.chain_max + 1):
        for m in range(k, k + 3):
            witness = embed_in_diagonal(chain_gram(k), m)
            if witness is not None:
                assert witness.verify()
                print(f"  k={k}: rank {m}")
                break
        else:
            print(f"  k={k}: none up to rank {k + 2}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--a1-max", type=int, default=SearchConfig.a1_max)
    parser.add_argument("--n-max", type=int, default=SearchConfig.n_max)
    parser.add_argument("--chain-max", type=int, default=SearchConfig.chain_max)
    args = parser.parse_args()
    run(SearchConfig(a1_max=args.a1_max, n_max=args.n_max, chain_max=args.chain_max))


if __name__ == "__main__":
    main()
