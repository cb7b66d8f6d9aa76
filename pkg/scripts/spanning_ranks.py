"""Rank of the spanning family F_n against the number of cd-monomials of degree n.

    python scripts/spanning_ranks.py 8
"""

import argparse
import time

from bruhatcd.constructions import spanning_family
from bruhatcd.polynomials import cd_monomial_count


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("max_n", type=int)
    args = ap.parse_args()

    print(f"{'n':>3} {'|F_n|':>6} {'rank':>6} {'monomials':>10} {'witness':>8} {'sec':>7}")
    for n in range(1, args.max_n + 1):
        start = time.perf_counter()
        fam = spanning_family(n)
        print(
            f"{n:>3} {len(fam.words):>6} {fam.rank():>6} {cd_monomial_count(n):>10} "
            f"{str(fam.reduction_witness()):>8} {time.perf_counter() - start:>7.2f}"
        )


if __name__ == "__main__":
    main()
