"""Tabulate [C_k, C_{d+k+1}] in the universal group: size, coatoms and cd-index.

    python scripts/dual_stacked_table.py --max-d 3 --max-k 3
"""

import argparse

from bruhatcd.constructions import dual_stacked_properties
from bruhatcd.polynomials import CdPolynomial


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-d", type=int, default=3)
    ap.add_argument("--max-k", type=int, default=3)
    args = ap.parse_args()

    for d in range(1, args.max_d + 1):
        for k in range(args.max_k + 1):
            row = dual_stacked_properties(d, k)
            phi = CdPolynomial.from_dict(row["cd_index"])
            flags = "ok" if row["eulerian"] and row["thin"] and row["shaving_agrees"] else "FAIL"
            print(f"d={d} k={k} elements={row['elements']:>4} coatoms={row['coatoms']:>2} {flags}  {phi}")


if __name__ == "__main__":
    main()
