"""Named Bruhat intervals and checkers for coefficient bounds on cd-indices.

* Boolean intervals [1, s1...sn] in a universal group;
* dual stacked intervals [C_k, C_{d+k+1}], C_k the cyclic word s1 s2 ... s_k
  with indices read mod d+1;
* the family F_n of words whose lower intervals have linearly independent
  cd-indices, and an exact rank computation for it;
* bound checkers returning JSON-ready reports.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .coxeter import (
    CoxeterMatrix,
    CoxeterSystem,
    Element,
    bruhat_interval,
    enumerate_elements,
    generic,
    normalize,
    universal,
)
from .flags import ab_index, cd_index, pyramid_cd, shave_cd
from .polynomials import CD_ONE, CdPolynomial, cd_monomials, cd_to_ab
from .poset import GradedPoset, boolean_lattice, is_eulerian, is_isomorphic, is_thin
from .recursion import WholeGroup

_D = CdPolynomial.monomial("d")


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass
class ConjectureReport:
    scope: str
    checked: int = 0
    violations: list[dict] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "all_pass" if not self.violations else "violations_found"

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "scope": self.scope,
            "checked": self.checked,
            "status": self.status,
            "violations": self.violations,
        }


def _witness(u: Element, w: Element, poly, bound=None) -> dict:
    out = {"u": str(u), "w": str(w), "value": poly.to_dict()}
    if bound is not None:
        out["bound"] = bound.to_dict()
    return out


# ---------------------------------------------------------------------------
# Boolean intervals
# ---------------------------------------------------------------------------


def boolean_interval(n: int, check: bool = True) -> GradedPoset:
    """B_n as the Bruhat interval [1, s1 s2 ... sn] of the universal group of rank n.

    With ``check`` the result is compared with the lattice of subsets of [n].
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return boolean_lattice(0)
    sys = universal(n)
    P = bruhat_interval(sys.identity, sys.element(range(1, n + 1)))
    if check and is_isomorphic(P, boolean_lattice(n)) is None:
        raise AssertionError(f"[1, s1...s{n}] is not Boolean")
    return P


@lru_cache(maxsize=None)
def boolean_cd(n: int) -> CdPolynomial:
    """cd-index of B_n (n >= 1), by iterating the pyramid rule from B_1."""
    if n < 1:
        raise ValueError("B_n has a cd-index only for n >= 1")
    return CD_ONE if n == 1 else pyramid_cd(boolean_cd(n - 1))


# ---------------------------------------------------------------------------
# dual stacked intervals
# ---------------------------------------------------------------------------


def cyclic_word(k: int, d: int) -> tuple[int, ...]:
    """s1 s2 ... s_k with subscripts taken mod d+1 (residue 0 read as d+1)."""
    return tuple((i - 1) % (d + 1) + 1 for i in range(1, k + 1))


def _cyclic(k: int, d: int) -> Element:
    if d == 0 and k > 1:
        raise ValueError("with d = 0 the cyclic words stop being reduced after one letter")
    return universal(d + 1).element(cyclic_word(k, d))


def dual_stacked_interval(d: int, k: int) -> GradedPoset:
    """[C_k, C_{d+k+1}] in the universal group of rank d+1.

    It is the face lattice of a d-polytope got from a simplex by k vertex
    shavings. For d >= 2 it has d+k+1 coatoms, which is asserted. For d = 1
    every shaving returns a segment, so there are always two coatoms.
    """
    if d < 0 or k < 0:
        raise ValueError("need d >= 0 and k >= 0")
    if d == 0 and k > 0:
        raise ValueError("d = 0 only admits k = 0")
    P = bruhat_interval(_cyclic(k, d), _cyclic(d + k + 1, d))
    assert P.rank == d + 1
    facets = len(P.coatoms())
    expected = d + k + 1 if d != 1 else 2
    assert facets == expected, f"{facets} coatoms, expected {expected}"
    return P


def dual_stacked_cd(d: int, k: int) -> CdPolynomial:
    """cd-index of [C_k, C_{d+k+1}] by shaving: start from B_{d+1} and shave
    vertex C_j of [C_{j-1}, C_{d+j}] for j = 1..k."""
    phi = cd_index(dual_stacked_interval(d, 0))
    for j in range(1, k + 1):
        link = bruhat_interval(_cyclic(j, d), _cyclic(d + j, d))
        phi = shave_cd(phi, cd_index(link))
    return phi


def dual_stacked_zipping_elements(d: int, k: int) -> list[Element]:
    """Elements of the open interval (C_k, C_{d+k}) shortened on the right by
    the last letter of C_{d+k+1}; this list is expected to be empty."""
    if k < 1:
        raise ValueError("need k >= 1")
    lo, hi = _cyclic(k, d), _cyclic(d + k, d)
    s = cyclic_word(d + k + 1, d)[-1]
    return [v for v in bruhat_interval(lo, hi).labels if v not in (lo, hi) and s in v.right_descents()]


# ---------------------------------------------------------------------------
# the spanning family
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def family_words(n: int) -> tuple[tuple[int, ...], ...]:
    """F_1 = {s1}, F_2 = {s1 s2}, F_n = F_{n-1} s_n followed by s_n F_{n-2} s_n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return ((1,),)
    if n == 2:
        return ((1, 2),)
    return tuple(w + (n,) for w in family_words(n - 1)) + tuple((n,) + w + (n,) for w in family_words(n - 2))


@dataclass
class SpanningFamily:
    n: int
    words: list[tuple[int, ...]]
    cd_indices: list[CdPolynomial]

    def matrix(self) -> list[list[int]]:
        """Coefficient rows over the degree n-1 cd-monomials in lex order."""
        cols = cd_monomials(self.n - 1)
        return [[phi[m] for m in cols] for phi in self.cd_indices]

    def rank(self) -> int:
        return exact_rank(self.matrix())

    def reduction_witness(self) -> bool:
        """For w in F_{n-2}: Psi[1, w s_{n-1} s_n] - Psi[1, s_n w s_n] = d Psi[1, w]."""
        if self.n < 3:
            return True
        lower = spanning_family(self.n - 2)
        index = {w: i for i, w in enumerate(self.words)}
        n = self.n
        for w, phi in zip(lower.words, lower.cd_indices):
            top = self.cd_indices[index[w + (n - 1, n)]]
            twisted = self.cd_indices[index[(n,) + w + (n,)]]
            if top - twisted != _D * phi:
                return False
        return True


@lru_cache(maxsize=None)
def _family_system(n: int, max_length: int) -> CoxeterSystem:
    return generic(CoxeterMatrix.complete(n, 3), max_length=max_length)


@lru_cache(maxsize=None)
def _spanning_family_cached(n: int, max_length: int) -> SpanningFamily:
    sys = _family_system(n, max_length)
    words = list(family_words(n))
    phis = []
    for w in words:
        top = normalize(w, sys)
        if top.length != len(w):
            raise AssertionError(f"{w} is not reduced")
        phis.append(cd_index(bruhat_interval(sys.identity, top)))
    return SpanningFamily(n, words, phis)


def spanning_family(n: int, max_length: int = 12) -> SpanningFamily:
    """F_n with the cd-index of each lower interval, in the complete
    label-3 Coxeter system of rank n."""
    return _spanning_family_cached(n, max_length)


def spanning_rank(n: int, max_length: int = 12) -> int:
    return spanning_family(n, max_length).rank()


def exact_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    M = [list(map(int, r)) for r in rows]
    if not M:
        return 0
    ncols = len(M[0])
    rank, prev = 0, 1
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(M)) if M[i][col]), None)
        if pivot is None:
            continue
        M[rank], M[pivot] = M[pivot], M[rank]
        p = M[rank][col]
        for i in range(rank + 1, len(M)):
            for j in range(col + 1, ncols):
                M[i][j] = (p * M[i][j] - M[i][col] * M[rank][j]) // prev
            M[i][col] = 0
        prev = p
        rank += 1
        if rank == len(M):
            break
    return rank


def lower_interval_span_rank(sys: CoxeterSystem, length: int) -> tuple[int, int]:
    """(rank of the cd-indices of [1, w] with l(w) = length, number of cd-monomials
    of that degree) over a finite group. No particular answer is expected."""
    if length < 1:
        raise ValueError("length must be >= 1")
    group = WholeGroup(sys, max_len=length)
    cols = cd_monomials(length - 1)
    rows = {
        tuple(cd_index(group.interval(sys.identity, w))[m] for m in cols)
        for w in group.elements
        if w.length == length
    }
    return exact_rank(sorted(rows)), len(cols)


# ---------------------------------------------------------------------------
# bound checkers
# ---------------------------------------------------------------------------


def interval_cd_indices(
    group: WholeGroup, method: str = "bruteforce", lower_only: bool = False
) -> Iterable[tuple[Element, Element, CdPolynomial]]:
    """(u, w, cd-index of [u, w]) for every u < w of a finite group, in a fixed order."""
    if method == "recursion":
        rec = group.recursion()
        for u, w in group.pairs(lower_only):
            yield u, w, rec(u, w)
    elif method == "bruteforce":
        for u, w in group.pairs(lower_only):
            yield u, w, cd_index(group.interval(u, w))
    else:
        raise ValueError("method must be 'bruteforce' or 'recursion'")


def check_nonnegativity(
    scope: Iterable[tuple[Element, Element, CdPolynomial]], description: str
) -> ConjectureReport:
    report = ConjectureReport(description)
    for u, w, phi in scope:
        report.checked += 1
        if phi.min_coefficient() < 0:
            report.violations.append(_witness(u, w, phi))
    return report


def nonnegativity_in_symmetric_group(n: int, method: str = "bruteforce") -> ConjectureReport:
    from .coxeter import symmetric

    group = WholeGroup(symmetric(n))
    return check_nonnegativity(interval_cd_indices(group, method), f"all intervals of S_{n}")


@dataclass
class BooleanBoundReport:
    ab: ConjectureReport
    cd: ConjectureReport
    general_interval_fails: bool  # [1324, 3412] against B_3 in the cd bound

    @property
    def ok(self) -> bool:
        # only the ab bound is a theorem; the counterexample must behave as expected
        return self.ab.ok and self.general_interval_fails

    def to_dict(self) -> dict:
        return {
            "ab_bound": self.ab.to_dict(),
            "cd_bound": self.cd.to_dict(),
            "general_interval_counterexample_fails_cd_bound": self.general_interval_fails,
        }


def general_interval_counterexample() -> tuple[CdPolynomial, CdPolynomial]:
    """(cd-index of [1324, 3412] in S_4, cd-index of B_3)."""
    from .coxeter import parse_element, symmetric

    S4 = symmetric(4)
    u, w = parse_element("1324", S4), parse_element("3412", S4)
    return cd_index(bruhat_interval(u, w)), boolean_cd(3)


def check_boolean_bound(sys: CoxeterSystem, elements: Iterable[Element] | None = None) -> BooleanBoundReport:
    """Compare [1, w] with B_{l(w)}, coefficientwise, as ab-indices and as cd-indices."""
    if elements is None:
        elements = enumerate_elements(sys)
    tops = sorted(w for w in elements if w.length >= 1)
    name = sys.describe()
    ab_rep = ConjectureReport(f"lower intervals of {name}, ab-index")
    cd_rep = ConjectureReport(f"lower intervals of {name}, cd-index")
    for w in tops:
        P = bruhat_interval(sys.identity, w)
        psi = ab_index(P)
        bound_cd = boolean_cd(w.length)
        bound_ab = cd_to_ab(bound_cd)
        phi = cd_index(P)
        ab_rep.checked += 1
        cd_rep.checked += 1
        if not psi.leq(bound_ab):
            ab_rep.violations.append(_witness(sys.identity, w, psi, bound_ab))
        if not phi.leq(bound_cd):
            cd_rep.violations.append(_witness(sys.identity, w, phi, bound_cd))
    phi, bound = general_interval_counterexample()
    return BooleanBoundReport(ab_rep, cd_rep, not phi.leq(bound))


def check_dual_stacked_bound(
    pairs: Iterable[tuple[Element, Element, CdPolynomial]], d: int, k: int, description: str
) -> ConjectureReport:
    """Compare each given cd-index (over intervals with l(u) = k, l(w) = d+k+1)
    with that of the dual stacked interval."""
    bound = cd_index(dual_stacked_interval(d, k))
    report = ConjectureReport(description)
    for u, w, phi in pairs:
        if u.length != k or w.length != d + k + 1:
            raise ValueError(f"[{u}, {w}] does not have l(u) = {k}, l(w) = {d + k + 1}")
        report.checked += 1
        if not phi.leq(bound):
            report.violations.append(_witness(u, w, phi, bound))
    return report


def dual_stacked_bound_in_group(group: WholeGroup, d: int, k: int) -> ConjectureReport:
    scope = []
    for u, w in group.pairs():
        if u.length == k and w.length == d + k + 1:
            scope.append((u, w, cd_index(group.interval(u, w))))
    return check_dual_stacked_bound(
        scope, d, k, f"intervals of {group.system.describe()} with l(u)={k}, l(w)={d + k + 1}"
    )


def dual_stacked_properties(d: int, k: int) -> dict:
    """Facts about [C_k, C_{d+k+1}] as a JSON-ready dict."""
    P = dual_stacked_interval(d, k)
    direct = cd_index(P)
    return {
        "d": d,
        "k": k,
        "elements": len(P),
        "coatoms": len(P.coatoms()),
        "eulerian": is_eulerian(P),
        "thin": is_thin(P),
        "cd_index": direct.to_dict(),
        "shaving_agrees": direct == dual_stacked_cd(d, k),
    }


def random_cd_polynomial(degree: int, rng: random.Random, lo: int = -5, hi: int = 5) -> CdPolynomial:
    """Homogeneous cd-polynomial of the given degree with random coefficients (nonzero)."""
    while True:
        poly = CdPolynomial({m: rng.randint(lo, hi) for m in cd_monomials(degree)})
        if poly:
            return poly


__all__ = [
    "BooleanBoundReport",
    "ConjectureReport",
    "SpanningFamily",
    "boolean_cd",
    "boolean_interval",
    "check_boolean_bound",
    "check_dual_stacked_bound",
    "check_nonnegativity",
    "cyclic_word",
    "dual_stacked_bound_in_group",
    "dual_stacked_cd",
    "dual_stacked_interval",
    "dual_stacked_properties",
    "dual_stacked_zipping_elements",
    "exact_rank",
    "family_words",
    "general_interval_counterexample",
    "interval_cd_indices",
    "lower_interval_span_rank",
    "nonnegativity_in_symmetric_group",
    "random_cd_polynomial",
    "spanning_family",
    "spanning_rank",
]
