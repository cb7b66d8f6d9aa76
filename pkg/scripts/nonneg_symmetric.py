"""Check that every interval of S_n has a non-negative cd-index.

    python scripts/nonneg_symmetric.py 5
    python scripts/nonneg_symmetric.py 6 --method recursion
"""

import argparse
import json
import time

from bruhatcd.constructions import check_nonnegativity, interval_cd_indices
from bruhatcd.coxeter import symmetric
from bruhatcd.recursion import WholeGroup


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("n", type=int)
    ap.add_argument("--method", choices=["bruteforce", "recursion"], default="recursion")
    args = ap.parse_args()

    start = time.perf_counter()
    group = WholeGroup(symmetric(args.n))
    report = check_nonnegativity(interval_cd_indices(group, args.method), f"all intervals of S_{args.n}")
    out = report.to_dict()
    out["seconds"] = round(time.perf_counter() - start, 2)
    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
