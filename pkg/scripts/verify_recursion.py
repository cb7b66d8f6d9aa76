"""Compare the recursive cd-index with enumeration on every interval of S_n.

    python scripts/verify_recursion.py 5
    python scripts/verify_recursion.py 6 --sample 2000 --policy random
"""

import argparse
import json
import time

from bruhatcd.coxeter import symmetric
from bruhatcd.recursion import random_descent_policy, smallest_descent, verify_recursion


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("n", type=int)
    ap.add_argument("--sample", type=int, default=None, help="check a random sample of intervals")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--policy", choices=["smallest", "random"], default="smallest")
    args = ap.parse_args()

    policy = smallest_descent if args.policy == "smallest" else random_descent_policy(args.seed)
    start = time.perf_counter()
    report = verify_recursion(symmetric(args.n), sample=args.sample, seed=args.seed, policy=policy)
    out = report.to_dict()
    out["seconds"] = round(time.perf_counter() - start, 2)
    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
