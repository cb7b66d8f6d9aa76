"""Flag f- and h-vectors, the flag index, the ab-index and the cd-index of a
graded poset with hat0 and hat1, plus the cd-index transformation rules
for pyramid, vertex shaving and zipping.

A subset S of [n] = {1..n} is stored as a bitmask with rank i at bit i-1,
and corresponds to the ab-word u_S whose i-th letter is b iff i is in S.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import prod
from typing import Iterable

import numpy as np

from .poset import GradedPoset, is_zipper
from .polynomials import (
    AbPolynomial,
    CdPolynomial,
    ab_to_cd,
    derivation_G,
    substitute_a_minus_b,
)

_INT64_SAFE = 2**62


@dataclass(frozen=True)
class FlagVector:
    """Values indexed by subsets of [n]; ``values[mask]``."""

    n: int
    values: tuple[int, ...]

    def __getitem__(self, S: Iterable[int]) -> int:
        return self.values[subset_mask(S, self.n)]

    def items(self) -> list[tuple[frozenset[int], int]]:
        return [(mask_subset(m), v) for m, v in enumerate(self.values)]

    def to_dict(self) -> dict[str, int]:
        return {",".join(map(str, sorted(S))): v for S, v in self.items()}


def subset_mask(S: Iterable[int], n: int) -> int:
    m = 0
    for i in S:
        if not 1 <= i <= n:
            raise ValueError(f"rank {i} outside [1, {n}]")
        m |= 1 << (i - 1)
    return m


def mask_subset(m: int) -> frozenset[int]:
    return frozenset(i + 1 for i in range(m.bit_length()) if m >> i & 1)


@lru_cache(maxsize=64)
def _mask_words(n: int) -> tuple[str, ...]:
    return tuple("".join("b" if m >> i & 1 else "a" for i in range(n)) for m in range(1 << n))


def _alpha_array(P: GradedPoset) -> np.ndarray:
    """Flag f-vector by dynamic programming over ranks.

    For x of rank r, row G_x (length 2^(r-1)) counts chains hat0 < ... < x by
    the rank set strictly between hat0 and x. Chains whose last interior
    element has rank q land in the block [2^(q-1), 2^q), so each block is a
    sum of rows one rank level below, i.e. a 0/1 matrix product.
    """
    bot, top = P.require_bounds()
    R = P.ranks[top]
    if R < 1:
        raise ValueError("flag vectors need rank >= 1")
    levels: list[list[int]] = [[] for _ in range(R + 1)]
    for i, r in enumerate(P.ranks):
        levels[r].append(i)
    bound = prod(len(levels[r]) for r in range(1, R))
    dtype = np.int64 if bound < _INT64_SAFE else object
    rows: dict[int, np.ndarray] = {}
    for r in range(1, R + 1):
        xs = levels[r]
        G = np.zeros((len(xs), 1 << (r - 1)), dtype=dtype)
        G[:, 0] = 1
        for q in range(1, r):
            ys = levels[q]
            rel = np.array([[(P.down_mask(x) >> y) & 1 for y in ys] for x in xs], dtype=dtype)
            G[:, 1 << (q - 1): 1 << q] = rel @ rows[q]
        rows[r] = G
    return rows[R][0]


def _subset_mobius(arr: np.ndarray, n: int) -> np.ndarray:
    """beta(S) = sum over T subset of S of (-1)^|S-T| alpha(T)."""
    out = arr.copy()
    for i in range(n):
        view = out.reshape(-1, 2, 1 << i)
        view[:, 1, :] -= view[:, 0, :]
    return out


def flag_f(P: GradedPoset) -> FlagVector:
    alpha = _alpha_array(P)
    n = len(alpha).bit_length() - 1
    return FlagVector(n, tuple(int(v) for v in alpha))


def flag_h(P: GradedPoset) -> FlagVector:
    alpha = _alpha_array(P)
    n = len(alpha).bit_length() - 1
    return FlagVector(n, tuple(int(v) for v in _subset_mobius(alpha, n)))


def _poly_from_array(arr: np.ndarray) -> AbPolynomial:
    n = len(arr).bit_length() - 1
    words = _mask_words(n)
    return AbPolynomial({words[m]: int(v) for m, v in enumerate(arr) if v})


def flag_index(P: GradedPoset) -> AbPolynomial:
    """Upsilon_P = sum of alpha_P(S) u_S."""
    return _poly_from_array(_alpha_array(P))


def ab_index(P: GradedPoset, check: bool = False) -> AbPolynomial:
    """Psi_P = sum of beta_P(S) u_S.

    With ``check=True`` the result is also computed as Upsilon_P(a-b, b) and
    the two are compared.
    """
    alpha = _alpha_array(P)
    n = len(alpha).bit_length() - 1
    psi = _poly_from_array(_subset_mobius(alpha, n))
    if check:
        other = substitute_a_minus_b(_poly_from_array(alpha))
        if other != psi:
            raise AssertionError("ab-index disagrees with the substituted flag index")
    return psi


def cd_index(P: GradedPoset) -> CdPolynomial:
    """cd-index by direct flag enumeration. Raises NotInCdSpan for non-Eulerian input."""
    return ab_to_cd(ab_index(P))


# ---------------------------------------------------------------------------
# operator formulas
# ---------------------------------------------------------------------------

_C = CdPolynomial.monomial("c")
_D = CdPolynomial.monomial("d")


def pyramid_cd(psi: CdPolynomial) -> CdPolynomial:
    """cd-index of Pyr(P) from that of P: c * psi + G(psi)."""
    if not psi or not psi.is_homogeneous():
        raise ValueError("pyramid_cd needs a nonzero homogeneous cd-polynomial")
    return _C * psi + derivation_G(psi)


def shave_cd(psi: CdPolynomial, psi_link: CdPolynomial) -> CdPolynomial:
    """cd-index of Sh_a(P): psi_P + G(psi_[a, hat1])."""
    if psi.degree is None or psi_link.degree is None or psi_link.degree != psi.degree - 1:
        raise ValueError("shave_cd needs deg psi_[a,hat1] = deg psi_P - 1")
    return psi + derivation_G(psi_link)


def pyramid_cd_sum(P: GradedPoset) -> CdPolynomial:
    """cd-index of Pyr(P) from the cd-indices of all intervals through interior x.

    Half of (psi c + c psi + sum_x psi_[0,x] d psi_[x,1]); the bracket is
    checked to be even before halving.
    """
    bot, top = P.require_bounds()
    psi = cd_index(P)
    total = psi * _C + _C * psi
    for x in range(len(P)):
        if x not in (bot, top):
            total = total + cd_index(P.interval(bot, x)) * _D * cd_index(P.interval(x, top))
    return total.halve()


def shave_cd_sum(P: GradedPoset, a: int) -> CdPolynomial:
    """cd-index of Sh_a(P) as psi_P + half of
    (psi_[a,1] c - c psi_[a,1] + sum over a < x < 1 of psi_[a,x] d psi_[x,1])."""
    bot, top = P.require_bounds()
    if a not in P.atoms():
        raise ValueError("shaving needs an atom")
    psi = cd_index(P)
    link = cd_index(P.interval(a, top))
    total = link * _C - _C * link
    for x in P.between(a, top):
        if x not in (a, top):
            total = total + cd_index(P.interval(a, x)) * _D * cd_index(P.interval(x, top))
    return psi + total.halve()


def zip_cd(psi: CdPolynomial, psi_lower: CdPolynomial, psi_upper: CdPolynomial) -> CdPolynomial:
    """psi_P - psi_[hat0,x] * d * psi_[z,hat1]."""
    for p in (psi, psi_lower, psi_upper):
        if not p or not p.is_homogeneous():
            raise ValueError("zip_cd needs nonzero homogeneous inputs")
    if psi_lower.degree + 2 + psi_upper.degree != psi.degree:
        raise ValueError("degrees of the flanking intervals do not add up")
    return psi - psi_lower * _D * psi_upper


def zip_ab(psi: AbPolynomial, psi_lower: AbPolynomial, psi_upper: AbPolynomial) -> AbPolynomial:
    """ab-level zipping rule: psi_P - psi_[hat0,x] (ab + ba) psi_[z,hat1]."""
    return psi - psi_lower * AbPolynomial({"ab": 1, "ba": 1}) * psi_upper


def zip_flag_index(ups: AbPolynomial, ups_lower: AbPolynomial, ups_upper: AbPolynomial) -> AbPolynomial:
    """Flag-index zipping rule: Upsilon_P - Upsilon_[hat0,x] (2bb + ab + ba) Upsilon_[z,hat1]."""
    return ups - ups_lower * AbPolynomial({"bb": 2, "ab": 1, "ba": 1}) * ups_upper


def zip_cd_poset(P: GradedPoset, x: int, y: int, z: int) -> CdPolynomial:
    """cd-index of P after zipping (x, y, z), using only intervals of P."""
    status = is_zipper(P, x, y, z)
    if not status:
        raise ValueError(f"not a zipper: {status.reason}")
    if not status.proper:
        raise ValueError("the cd zipping rule needs a proper zipper")
    bot, top = P.require_bounds()
    return zip_cd(cd_index(P), cd_index(P.interval(bot, x)), cd_index(P.interval(z, top)))
