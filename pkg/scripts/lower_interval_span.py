"""Do the lower intervals [1, w] of a finite group span the cd-monomials?

Prints, for each length l, the rank of {cd-index of [1, w] : l(w) = l} and
the number of cd-monomials of degree l - 1. This is an experiment; there is
no expected answer.

    python scripts/lower_interval_span.py 5
"""

import argparse

from bruhatcd.constructions import lower_interval_span_rank
from bruhatcd.coxeter import symmetric


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("n", type=int, help="use S_n")
    args = ap.parse_args()

    sys = symmetric(args.n)
    top = args.n * (args.n - 1) // 2
    for length in range(1, top + 1):
        rank, monomials = lower_interval_span_rank(sys, length)
        print(f"l={length:>2} rank={rank:>3} monomials={monomials:>3}")


if __name__ == "__main__":
    main()
