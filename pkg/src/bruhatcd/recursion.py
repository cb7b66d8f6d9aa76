"""Structural recursion for Bruhat intervals.

For u < us, w < ws and u <= w:

* [u, ws] is the fibre poset of eta: [u,w] x [1,s] -> [u,ws], reached from
  the product by a sequence of zippings;
* when us <= w, [us, ws] is likewise reached from the shaving Sh_us[u,w].

The same steps, read through the zipping rule for cd-indices, give a
recursion for the cd-index of any Bruhat interval.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .coxeter import Element, bruhat_interval, bruhat_leq, bruhat_poset, CoxeterSystem
from .flags import cd_index, pyramid_cd, shave_cd
from .polynomials import CD_ONE, CdPolynomial
from .poset import (
    GradedPoset,
    fiber_poset,
    is_isomorphic,
    is_order_projection,
    is_zipper,
    merged_label,
    product,
    zip_poset,
)

_C = CdPolynomial.monomial("c")
_D = CdPolynomial.monomial("d")


class ZippingError(AssertionError):
    """A step of the structural recursion failed; this would contradict a theorem."""


class RecursionMismatch(AssertionError):
    """Two evaluations of the cd recursion disagree."""


def _check_setup(u: Element, w: Element, s: int) -> None:
    if s in u.right_descents():
        raise ValueError("need u < us")
    if s in w.right_descents():
        raise ValueError("need w < ws")
    if not bruhat_leq(u, w):
        raise ValueError("need u <= w")


def _base_product(u: Element, w: Element, s: int) -> GradedPoset:
    sys = u.system
    return product(bruhat_interval(u, w), bruhat_interval(sys.identity, sys.generator(s)))


# ---------------------------------------------------------------------------
# eta and theta
# ---------------------------------------------------------------------------


@dataclass
class ProjectionCertificate:
    domain: GradedPoset
    codomain: GradedPoset
    images: list[int]  # domain id -> codomain id
    is_projection: bool
    fibers_match: bool

    def image_label(self, label) -> Element:
        return self.codomain.labels[self.images[self.domain.index(label)]]

    @property
    def ok(self) -> bool:
        return self.is_projection and self.fibers_match


def _eta_value(v: Element, t: Element, s: int) -> Element:
    if t.is_identity():
        return v
    return v if s in v.right_descents() else v.right_mul(s)


def eta(u: Element, w: Element, s: int) -> ProjectionCertificate:
    """The map [u,w] x [1,s] -> [u,ws]; (v,1) -> v, (v,s) -> vs if vs > v else v."""
    _check_setup(u, w, s)
    dom = _base_product(u, w, s)
    cod = bruhat_interval(u, w.right_mul(s))
    images = [cod.index(_eta_value(v, t, s)) for v, t in dom.labels]
    ident, gen = u.system.identity, u.system.generator(s)
    fibers_ok = True
    for q, v in enumerate(cod.labels):
        actual = {dom.labels[p] for p in range(len(dom)) if images[p] == q}
        if s in v.right_descents():
            vs = v.right_mul(s)
            expected = {(v, ident), (vs, gen), (v, gen)}
        else:
            expected = {(v, ident)}
        expected = {lab for lab in expected if lab in dom}
        fibers_ok &= actual == expected
    return ProjectionCertificate(dom, cod, images, is_order_projection(dom, cod, images), fibers_ok)


def shaved_base(u: Element, w: Element, s: int) -> tuple[GradedPoset, GradedPoset, tuple]:
    """(P0, Sh_us[u,w], label of the merged bottom element).

    Sh_us[u,w] is realised as the interval [us, (w,s)] of P0 after zipping
    ((us,1), (u,s), (us,s)).
    """
    sys = u.system
    us = u.right_mul(s)
    if not bruhat_leq(us, w):
        raise ValueError("shaving needs us <= w")
    ident, gen = sys.identity, sys.generator(s)
    P0 = _base_product(u, w, s)
    x, y, z = P0.index((us, ident)), P0.index((u, gen)), P0.index((us, gen))
    P1 = zip_poset(P0, x, y, z)
    bottom = merged_label(P0, x, y)
    return P0, P1.interval(P1.index(bottom), P1.index((w, gen))), bottom


def theta(u: Element, w: Element, s: int) -> ProjectionCertificate:
    """The map Sh_us[u,w] -> [us,ws]; agrees with eta away from the new bottom."""
    _check_setup(u, w, s)
    _, dom, bottom = shaved_base(u, w, s)
    us = u.right_mul(s)
    cod = bruhat_interval(us, w.right_mul(s))
    images = []
    for lab in dom.labels:
        if lab == bottom:
            images.append(cod.index(us))
        else:
            v, t = lab
            images.append(cod.index(_eta_value(v, t, s)))
    proj = is_order_projection(dom, cod, images)
    fibers_ok = proj and is_isomorphic(fiber_poset(dom, images), cod) is not None
    return ProjectionCertificate(dom, cod, images, proj, fibers_ok)


# ---------------------------------------------------------------------------
# zipping sequences
# ---------------------------------------------------------------------------


@dataclass
class ZipStep:
    element: Element  # the v_i being processed
    zipper: tuple[int, int, int]  # ids in ``before``
    before: GradedPoset
    after: GradedPoset


@dataclass
class ZippingSequence:
    u: Element
    w: Element
    s: int
    variant: str
    base: GradedPoset
    steps: list[ZipStep]
    target: GradedPoset
    isomorphism: dict[int, int]

    @property
    def final(self) -> GradedPoset:
        return self.steps[-1].after if self.steps else self.base


def descent_elements(interval: GradedPoset, lo: Element, hi: Element, s: int) -> list[Element]:
    """v in the open interval (lo, hi) with vs < v, in (length, shortlex) order."""
    return sorted(v for v in interval.labels if v != lo and v != hi and s in v.right_descents())


def zipping_sequence(
    u: Element, w: Element, s: int, variant: str = "interval", check_intervals: bool = True
) -> ZippingSequence:
    """Zip [u,w] x [1,s] (or Sh_us[u,w]) down to [u,ws] (or [us,ws]).

    Every step is checked to be a proper zipper; with ``check_intervals``
    the flanking intervals [bottom, (v,1)] and [(v,s), (w,s)] are checked to
    be isomorphic to their copies in the unzipped product. The final poset
    must be isomorphic to the target Bruhat interval.
    """
    if variant not in ("interval", "shaved"):
        raise ValueError("variant must be 'interval' or 'shaved'")
    _check_setup(u, w, s)
    sys = u.system
    ident, gen = sys.identity, sys.generator(s)
    us, ws = u.right_mul(s), w.right_mul(s)
    I = bruhat_interval(u, w)
    todo = descent_elements(I, u, w, s)
    if variant == "shaved":
        P0, P, _ = shaved_base(u, w, s)
        todo = [v for v in todo if v != us]
        low, target = us, bruhat_interval(us, ws)
    else:
        P0 = P = _base_product(u, w, s)
        low, target = u, bruhat_interval(u, ws)
    base = P
    steps = []
    for v in todo:
        vs = v.right_mul(s)
        x, y, z = P.index((v, ident)), P.index((vs, gen)), P.index((v, gen))
        status = is_zipper(P, x, y, z)
        if not status or not status.proper:
            raise ZippingError(f"step at v={v}: {status.reason or 'zipper is not proper'}")
        if check_intervals:
            bot, top = P.require_bounds()
            ref_low = P0.interval(P0.index((low, ident)), P0.index((v, ident)))
            ref_high = P0.interval(P0.index((v, gen)), P0.index((w, gen)))
            if is_isomorphic(P.interval(bot, x), ref_low) is None:
                raise ZippingError(f"lower flanking interval changed before v={v}")
            if is_isomorphic(P.interval(z, top), ref_high) is None:
                raise ZippingError(f"upper flanking interval changed before v={v}")
        after = zip_poset(P, x, y, z, check=False)
        steps.append(ZipStep(v, (x, y, z), P, after))
        P = after
    iso = is_isomorphic(P, target)
    if iso is None:
        raise ZippingError("zipped poset is not isomorphic to the target interval")
    return ZippingSequence(u, w, s, variant, base, steps, target, iso)


# ---------------------------------------------------------------------------
# cd-index recursion
# ---------------------------------------------------------------------------


def smallest_descent(w: Element) -> int:
    return min(w.right_descents())


def random_descent_policy(seed: int | None = None) -> Callable[[Element], int]:
    rng = random.Random(seed)
    return lambda w: rng.choice(sorted(w.right_descents()))


class CdRecursion:
    """Memoised cd-indices of Bruhat intervals via the structural recursion.

    ``form`` selects the subtraction form (derivation G for Pyr/Sh, minus the
    zipping corrections), the half form (sigma-weighted coproduct sums), or
    ``"both"``, which evaluates each step both ways and raises
    RecursionMismatch on disagreement.

    ``members(u, w)`` lists the elements of [u, w]; by default it builds the
    interval, but callers holding a whole-group poset can pass a faster one.
    """

    def __init__(
        self,
        form: str = "subtraction",
        policy: Callable[[Element], int] = smallest_descent,
        members: Callable[[Element, Element], Iterable[Element]] | None = None,
    ):
        if form not in ("subtraction", "half", "both"):
            raise ValueError("form must be 'subtraction', 'half' or 'both'")
        self.form = form
        self.policy = policy
        self.members = members or (lambda lo, hi: bruhat_interval(lo, hi).labels)
        self.memo: dict[tuple[Element, Element], CdPolynomial] = {}
        self.calls = 0

    def __call__(self, u: Element, w: Element) -> CdPolynomial:
        if u == w:
            raise ValueError("a one-element interval has no cd-index")
        if not bruhat_leq(u, w):
            raise ValueError(f"{u} is not below {w}")
        return self._cd(u, w, w.length + 1)

    def _cd(self, u: Element, w: Element, bound: int) -> CdPolynomial:
        if w.length >= bound:
            raise AssertionError("recursion did not shorten the top element")
        key = (u, w)
        got = self.memo.get(key)
        if got is not None:
            return got
        self.calls += 1
        if w.length - u.length == 1:
            result = CD_ONE
        else:
            result = self._step(u, w)
        self.memo[key] = result
        return result

    def _inner(self, lo: Element, hi: Element) -> list[Element]:
        return sorted(v for v in self.members(lo, hi) if v != lo and v != hi)

    def _step(self, u: Element, w: Element) -> CdPolynomial:
        s = self.policy(w)
        w1 = w.right_mul(s)  # w = w1 s with w1 < w
        L = w.length
        if s in u.right_descents():
            # [u, w] = [u1 s, w1 s] with u1 = us <= w1: the shaving formula
            u1 = u.right_mul(s)
            base = self._cd(u1, w1, L)
            if not bruhat_leq(u, w1):
                return base
            link = self._cd(u, w1, L)
            inner = self._inner(u, w1)
            forms = {}
            if self.form in ("subtraction", "both"):
                corr = CdPolynomial()
                for v in inner:
                    if s in v.right_descents():
                        corr = corr + self._cd(u, v, L) * _D * self._cd(v, w1, L)
                forms["subtraction"] = shave_cd(base, link) - corr
            if self.form in ("half", "both"):
                total = link * _C - _C * link
                for v in inner:
                    term = self._cd(u, v, L) * _D * self._cd(v, w1, L)
                    total = total - term if s in v.right_descents() else total + term
                forms["half"] = base + _halve(total, u, w)
        else:
            # u < us, u <= w1: the pyramid formula
            base = self._cd(u, w1, L)
            if not bruhat_leq(u.right_mul(s), w1):
                return pyramid_cd(base)
            inner = self._inner(u, w1)
            forms = {}
            if self.form in ("subtraction", "both"):
                corr = CdPolynomial()
                for v in inner:
                    if s in v.right_descents():
                        corr = corr + self._cd(u, v, L) * _D * self._cd(v, w1, L)
                forms["subtraction"] = pyramid_cd(base) - corr
            if self.form in ("half", "both"):
                total = base * _C + _C * base
                for v in inner:
                    term = self._cd(u, v, L) * _D * self._cd(v, w1, L)
                    total = total - term if s in v.right_descents() else total + term
                forms["half"] = _halve(total, u, w)
        values = list(forms.values())
        if any(val != values[0] for val in values[1:]):
            raise RecursionMismatch(f"forms disagree on [{u}, {w}]: {forms}")
        return values[0]


def _halve(total: CdPolynomial, u: Element, w: Element) -> CdPolynomial:
    try:
        return total.halve()
    except ValueError as exc:
        raise RecursionMismatch(f"half form on [{u}, {w}]: {exc}") from exc


def cd_index_interval(
    u: Element,
    w: Element,
    method: str = "recursion",
    form: str = "subtraction",
    policy: Callable[[Element], int] = smallest_descent,
) -> CdPolynomial:
    """cd-index of [u, w] by brute-force flag enumeration or by the recursion."""
    if method == "bruteforce":
        if u == w:
            raise ValueError("a one-element interval has no cd-index")
        return cd_index(bruhat_interval(u, w))
    if method == "recursion":
        return CdRecursion(form=form, policy=policy)(u, w)
    raise ValueError("method must be 'bruteforce' or 'recursion'")


# ---------------------------------------------------------------------------
# verification harness
# ---------------------------------------------------------------------------


class WholeGroup:
    """Bruhat order on a finite group, with fast interval extraction."""

    def __init__(self, sys: CoxeterSystem, max_len: float | None = None):
        self.system = sys
        self.poset = bruhat_poset(sys, max_len)
        self.elements: tuple[Element, ...] = self.poset.labels

    def members(self, lo: Element, hi: Element) -> list[Element]:
        P = self.poset
        return [P.labels[i] for i in P.between(P.index(lo), P.index(hi))]

    def interval(self, lo: Element, hi: Element) -> GradedPoset:
        P = self.poset
        return P.interval(P.index(lo), P.index(hi))

    def pairs(self, lower_only: bool = False) -> list[tuple[Element, Element]]:
        """All (u, w) with u < w, sorted."""
        P = self.poset
        out = []
        for i, u in enumerate(P.labels):
            if lower_only and u.length:
                continue
            for j in P.members(P.up_mask(i)):
                if j != i:
                    out.append((u, P.labels[j]))
        return sorted(out, key=lambda p: (p[1].length - p[0].length, p[0], p[1]))

    def recursion(self, form: str = "subtraction", policy=smallest_descent) -> CdRecursion:
        return CdRecursion(form=form, policy=policy, members=self.members)


@dataclass
class VerificationReport:
    scope: str
    checked: int = 0
    agreed: int = 0
    histogram: dict[int, dict[str, int]] = field(default_factory=dict)
    discrepancies: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.discrepancies and self.agreed == self.checked

    def record(self, rank: int, poly: CdPolynomial) -> None:
        h = self.histogram.setdefault(rank, {"count": 0, "min_coefficient": poly.min_coefficient(),
                                             "max_coefficient": poly.max_coefficient()})
        h["count"] += 1
        h["min_coefficient"] = min(h["min_coefficient"], poly.min_coefficient())
        h["max_coefficient"] = max(h["max_coefficient"], poly.max_coefficient())

    def to_dict(self) -> dict:
        return {
            "scope": self.scope,
            "checked": self.checked,
            "agreed": self.agreed,
            "status": "all_agree" if self.ok else "discrepancies_found",
            "histogram": {str(r): self.histogram[r] for r in sorted(self.histogram)},
            "discrepancies": self.discrepancies,
        }


def verify_recursion(
    sys: CoxeterSystem,
    sample: int | None = None,
    seed: int = 0,
    form: str = "both",
    policy: Callable[[Element], int] = smallest_descent,
    group: WholeGroup | None = None,
) -> VerificationReport:
    """Compare brute force with the recursion on every (or a sample of) interval(s) of a finite group."""
    group = group or WholeGroup(sys)
    pairs = group.pairs()
    scope = f"all intervals of {sys.describe()}"
    if sample is not None and sample < len(pairs):
        pairs = sorted(random.Random(seed).sample(pairs, sample), key=lambda p: (p[1].length - p[0].length, p[0], p[1]))
        scope = f"{sample} sampled intervals of {sys.describe()} (seed {seed})"
    rec = group.recursion(form=form, policy=policy)
    report = VerificationReport(scope)
    for u, w in pairs:
        report.checked += 1
        brute = cd_index(group.interval(u, w))
        try:
            fast = rec(u, w)
        except RecursionMismatch as exc:
            report.discrepancies.append({"u": str(u), "w": str(w), "error": str(exc)})
            continue
        report.record(w.length - u.length, brute)
        if brute == fast:
            report.agreed += 1
        else:
            report.discrepancies.append(
                {"u": str(u), "w": str(w), "bruteforce": brute.to_dict(), "recursion": fast.to_dict()}
            )
    return report
