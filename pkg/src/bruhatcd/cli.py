"""Command-line front end.

Exit status: 0 success, 1 usage error, 2 a theorem-class check failed,
3 a resource cap (element budget or word-length cap) was hit.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import constructions as con
from .coxeter import (
    CoxeterMatrix,
    CoxeterSystem,
    LengthBoundError,
    bruhat_interval,
    bruhat_leq,
    from_matrix,
    parse_element,
    symmetric,
    universal,
)
from .flags import ab_index, cd_index, flag_f, flag_h, flag_index
from .polynomials import cd_monomial_count
from .poset import format_label, is_eulerian, is_thin, zip_mobius_failures
from .recursion import (
    CdRecursion,
    RecursionMismatch,
    WholeGroup,
    ZippingError,
    verify_recursion,
    zipping_sequence,
)

DEFAULT_BUDGET = 120
LONG_BUDGET = 720


class UsageError(Exception):
    pass


class ResourceCap(Exception):
    pass


class TheoremViolation(Exception):
    def __init__(self, payload: dict):
        super().__init__(payload.get("reason", "theorem violation"))
        self.payload = payload


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------


def parse_group(spec: str, max_length: int = 12) -> CoxeterSystem:
    kind, _, arg = spec.partition(":")
    try:
        if kind == "sym":
            return symmetric(int(arg))
        if kind == "universal":
            return universal(int(arg))
        if kind == "matrix":
            return from_matrix(CoxeterMatrix.from_text(Path(arg).read_text()), max_length)
    except (ValueError, OSError) as exc:
        raise UsageError(f"bad group spec {spec!r}: {exc}") from exc
    raise UsageError(f"group spec must be sym:n, universal:r or matrix:<path>, got {spec!r}")


def _element(text: str, sys: CoxeterSystem):
    try:
        return parse_element(text, sys)
    except (ValueError, IndexError) as exc:
        raise UsageError(f"bad element {text!r}: {exc}") from exc


def _pair(args, sys):
    u, w = _element(args.u, sys), _element(args.w, sys)
    if not bruhat_leq(u, w):
        raise UsageError(f"{u} is not below {w} in Bruhat order")
    return u, w


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    return LONG_BUDGET if args.long else DEFAULT_BUDGET


def _whole_group(args, sys: CoxeterSystem) -> WholeGroup:
    """All elements (finite groups) or those of length <= --max-len, within the budget."""
    budget = _budget(args)
    if sys.backend == "symmetric" and args.max_len is None:
        size = math.factorial(sys.n)
        if size > budget:
            raise ResourceCap(f"{sys.describe()} has {size} elements, budget is {budget} (see --budget, --long)")
        return WholeGroup(sys)
    if args.max_len is None:
        raise UsageError("infinite or generic groups need --max-len")
    group = WholeGroup(sys, args.max_len)
    if len(group.elements) > budget:
        raise ResourceCap(f"{len(group.elements)} elements exceed budget {budget}")
    return group


def _one_rank(u, w):
    if u == w:
        raise UsageError("a one-element interval has no flag vectors")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_cdindex(args) -> dict:
    sys_ = parse_group(args.group, args.max_length)
    u, w = _pair(args, sys_)
    _one_rank(u, w)
    results = {}
    if args.method in ("bruteforce", "both"):
        results["bruteforce"] = cd_index(bruhat_interval(u, w))
    if args.method in ("recursion", "both"):
        try:
            results["recursion"] = CdRecursion(form=args.form)(u, w)
        except RecursionMismatch as exc:
            raise TheoremViolation({"reason": str(exc), "u": str(u), "w": str(w)}) from exc
    values = list(results.values())
    if len(values) == 2 and values[0] != values[1]:
        raise TheoremViolation(
            {
                "reason": "bruteforce and recursion disagree",
                "u": str(u),
                "w": str(w),
                **{k: v.to_dict() for k, v in results.items()},
            }
        )
    return values[0].to_dict()


def cmd_abindex(args) -> dict:
    sys_ = parse_group(args.group, args.max_length)
    u, w = _pair(args, sys_)
    _one_rank(u, w)
    return ab_index(bruhat_interval(u, w), check=True).to_dict()


def cmd_flags(args) -> dict:
    sys_ = parse_group(args.group, args.max_length)
    u, w = _pair(args, sys_)
    _one_rank(u, w)
    P = bruhat_interval(u, w)
    return {
        "rank": P.rank,
        "flag_f": flag_f(P).to_dict(),
        "flag_h": flag_h(P).to_dict(),
        "flag_index": flag_index(P).to_dict(),
    }


def cmd_interval(args) -> dict:
    sys_ = parse_group(args.group, args.max_length)
    u, w = _pair(args, sys_)
    P = bruhat_interval(u, w)
    out = P.to_dict()
    out["rank_sizes"] = P.rank_sizes()
    return out


def cmd_zip_sequence(args) -> dict:
    sys_ = parse_group(args.group, args.max_length)
    u, w = _pair(args, sys_)
    try:
        seq = zipping_sequence(u, w, args.s, variant=args.variant)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    except ZippingError as exc:
        raise TheoremViolation({"reason": str(exc), "u": str(u), "w": str(w), "s": args.s}) from exc
    steps = []
    for st in seq.steps:
        x, y, z = st.zipper
        steps.append(
            {
                "v": str(st.element),
                "zipper": [format_label(st.before.labels[i]) for i in (x, y, z)],
                "size_after": len(st.after),
                "eulerian": is_eulerian(st.after),
                "thin": is_thin(st.after),
                "mobius_ok": not zip_mobius_failures(st.before, x, y, z, st.after),
            }
        )
    bad = [s for s in steps if not (s["eulerian"] and s["thin"] and s["mobius_ok"])]
    payload = {
        "u": str(u),
        "w": str(w),
        "s": args.s,
        "variant": args.variant,
        "base_size": len(seq.base),
        "target_size": len(seq.target),
        "steps": steps,
        "isomorphic_to_target": True,
    }
    if bad:
        raise TheoremViolation({"reason": "zipped poset lost a property", **payload})
    return payload


def cmd_construct(args) -> dict:
    if args.what == "boolean":
        P = con.boolean_interval(args.n)
        if args.emit == "poset":
            return P.to_dict()
        return {"n": args.n, "cd_index": cd_index(P).to_dict() if args.n else None}
    if args.what == "dual-stacked":
        try:
            P = con.dual_stacked_interval(args.d, args.k)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        if args.emit == "poset":
            return P.to_dict()
        return con.dual_stacked_properties(args.d, args.k)
    fam = con.spanning_family(args.n, args.max_length)
    return {
        "n": fam.n,
        "words": ["".join(f"s{i}" for i in w) for w in fam.words],
        "cd_indices": [p.to_dict() for p in fam.cd_indices],
        "rank": fam.rank(),
        "fibonacci": cd_monomial_count(fam.n),
    }


def cmd_verify(args) -> dict:
    what = args.what
    if what == "span":
        rows = []
        for n in range(1, args.n + 1):
            fam = con.spanning_family(n, args.max_length)
            r = fam.rank()
            rows.append({"n": n, "size": len(fam.words), "rank": r, "independent": r == len(fam.words),
                         "reduction_witness": fam.reduction_witness()})
        bad = [r for r in rows if not (r["independent"] and r["reduction_witness"])]
        payload = {"scope": f"families F_1..F_{args.n}", "results": rows}
        if bad:
            raise TheoremViolation({"reason": "family is not independent", "witness": bad[0], **payload})
        return payload
    sys_ = parse_group(args.group, args.max_length)
    group = _whole_group(args, sys_)
    scope = f"all intervals of {sys_.describe()}"
    if args.max_len is not None:
        scope += f" with l(w) <= {args.max_len}"
    if what == "eulerian":
        checked, bad = 0, []
        for u, w in group.pairs():
            P = group.interval(u, w)
            checked += 1
            if not (is_eulerian(P) and is_thin(P)):
                bad.append({"u": str(u), "w": str(w), "rank": P.rank})
        payload = {"scope": scope, "checked": checked, "failures": bad}
        if bad:
            raise TheoremViolation({"reason": "non-Eulerian or non-thin interval", "witness": bad[0], **payload})
        return payload
    if what == "recursion":
        report = verify_recursion(sys_, sample=None if args.all else args.sample, seed=args.seed, group=group)
        payload = report.to_dict()
        if not report.ok:
            raise TheoremViolation({"reason": "recursion disagrees with enumeration",
                                    "witness": report.discrepancies[0], **payload})
        return payload
    if what == "nonneg":
        report = con.check_nonnegativity(con.interval_cd_indices(group, args.method),
                                         scope)
        return report.to_dict()
    if what == "boolean-bound":
        rep = con.check_boolean_bound(sys_, group.elements)
        payload = rep.to_dict()
        if not rep.ok:
            witness = rep.ab.violations[0] if rep.ab.violations else "general-interval counterexample"
            raise TheoremViolation({"reason": "Boolean ab-bound failed", "witness": witness, **payload})
        return payload
    if what == "dual-stacked-bound":
        return con.dual_stacked_bound_in_group(group, args.d, args.k).to_dict()
    raise UsageError(f"unknown verify target {what!r}")


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, pair: bool = True) -> None:
    p.add_argument("--group", default="sym:4", help="sym:n, universal:r or matrix:<path>")
    p.add_argument("--max-length", type=int, default=12, help="word-length cap for matrix groups")
    if pair:
        p.add_argument("--u", required=True, help="lower element (permutation or word)")
        p.add_argument("--w", required=True, help="upper element")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bruhatcd", description="cd-indices of Bruhat intervals")
    parser.add_argument("--out", help="write JSON here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("cdindex", help="cd-index of [u, w]")
    _add_common(p)
    p.add_argument("--method", choices=["bruteforce", "recursion", "both"], default="bruteforce")
    p.add_argument("--form", choices=["subtraction", "half", "both"], default="subtraction")
    p.set_defaults(func=cmd_cdindex)

    p = sub.add_parser("abindex", help="ab-index of [u, w]")
    _add_common(p)
    p.set_defaults(func=cmd_abindex)

    p = sub.add_parser("flags", help="flag f-vector, flag h-vector and flag index of [u, w]")
    _add_common(p)
    p.set_defaults(func=cmd_flags)

    p = sub.add_parser("interval", help="the poset [u, w] as JSON")
    _add_common(p)
    p.set_defaults(func=cmd_interval)

    p = sub.add_parser("zip-sequence", help="zip [u,w] x [1,s] (or its shaving) down to [u,ws] (or [us,ws])")
    _add_common(p)
    p.add_argument("--s", type=int, required=True, help="generator index")
    p.add_argument("--variant", choices=["interval", "shaved"], default="interval")
    p.set_defaults(func=cmd_zip_sequence)

    p = sub.add_parser("construct", help="named intervals")
    p.add_argument("what", choices=["boolean", "dual-stacked", "spanning"])
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--emit", choices=["poset", "summary"], default="summary")
    p.add_argument("--max-length", type=int, default=12)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="exhaustive checks over a group")
    p.add_argument("what", choices=["eulerian", "recursion", "nonneg", "boolean-bound", "dual-stacked-bound", "span"])
    _add_common(p, pair=False)
    p.add_argument("--max-len", type=int, default=None, help="restrict to elements of length <= this")
    p.add_argument("--budget", type=int, default=None, help="cap on the number of group elements")
    p.add_argument("--long", action="store_true", help=f"raise the default budget to {LONG_BUDGET} (S_6)")
    p.add_argument("--method", choices=["bruteforce", "recursion"], default="bruteforce")
    p.add_argument("--all", action="store_true", help="check every interval (default)")
    p.add_argument("--sample", type=int, default=None, help="check a random sample of intervals")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=6, help="largest family index for 'span'")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--k", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload = args.func(args)
    except UsageError as exc:
        print(f"bruhatcd: {exc}", file=sys.stderr)
        return 1
    except (ResourceCap, LengthBoundError) as exc:
        print(f"bruhatcd: resource cap: {exc}", file=sys.stderr)
        return 3
    except TheoremViolation as exc:
        _emit({**exc.payload, "status": "theorem_violation"}, args.out)
        print(f"bruhatcd: theorem violation: {exc}", file=sys.stderr)
        return 2
    _emit(payload, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
