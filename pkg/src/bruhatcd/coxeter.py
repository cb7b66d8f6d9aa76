"""Coxeter systems, group elements in canonical form, and Bruhat order.

Three backends share one interface:

* ``symmetric(n)``  -- S_n, elements stored as one-line permutations;
* ``universal(r)``  -- all m(s,t) = inf, elements stored as freely reduced words;
* ``generic(matrix)`` -- any Coxeter matrix, elements stored as the
  shortlex-least reduced word, found by closing a word under braid moves.

Generators are 1-based everywhere (s_1, s_2, ...).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

INF = math.inf

DEFAULT_MAX_LENGTH = 12


class LengthBoundError(ValueError):
    """A word or element exceeds the length cap of a generic system."""


# ---------------------------------------------------------------------------
# Coxeter matrices and systems
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoxeterMatrix:
    rank: int
    entries: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be positive")
        if len(self.entries) != self.rank or any(len(row) != self.rank for row in self.entries):
            raise ValueError("matrix must be rank x rank")
        for i in range(self.rank):
            if self.entries[i][i] != 1:
                raise ValueError(f"m(s{i + 1},s{i + 1}) must be 1")
            for j in range(i + 1, self.rank):
                m = self.entries[i][j]
                if m != self.entries[j][i]:
                    raise ValueError("Coxeter matrix must be symmetric")
                if m != INF and (m < 2 or int(m) != m):
                    raise ValueError(f"m(s{i + 1},s{j + 1}) must be an integer >= 2 or inf")

    def m(self, s: int, t: int) -> float:
        """Order of s_s s_t (1-based indices)."""
        return self.entries[s - 1][t - 1]

    @classmethod
    def from_upper(cls, rank: int, upper: dict[tuple[int, int], float]) -> "CoxeterMatrix":
        """Build from ``{(i, j): m}`` with 1-based i < j; missing pairs default to 2."""
        rows = [[1 if i == j else 2 for j in range(rank)] for i in range(rank)]
        for (i, j), m in upper.items():
            rows[i - 1][j - 1] = rows[j - 1][i - 1] = m
        return cls(rank, tuple(tuple(r) for r in rows))

    @classmethod
    def type_a(cls, rank: int) -> "CoxeterMatrix":
        return cls.from_upper(rank, {(i, i + 1): 3 for i in range(1, rank)})

    @classmethod
    def all_infinite(cls, rank: int) -> "CoxeterMatrix":
        return cls.from_upper(rank, {(i, j): INF for i in range(1, rank + 1) for j in range(i + 1, rank + 1)})

    @classmethod
    def complete(cls, rank: int, label: int = 3) -> "CoxeterMatrix":
        """Complete Coxeter graph with every edge carrying ``label``."""
        return cls.from_upper(rank, {(i, j): label for i in range(1, rank + 1) for j in range(i + 1, rank + 1)})

    def is_type_a(self) -> bool:
        return self == CoxeterMatrix.type_a(self.rank)

    def is_universal(self) -> bool:
        return all(self.entries[i][j] == INF for i in range(self.rank) for j in range(self.rank) if i != j)

    def to_text(self) -> str:
        lines = [str(self.rank)]
        for i in range(self.rank - 1):
            lines.append(" ".join(_fmt_entry(m) for m in self.entries[i][i + 1:]))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "CoxeterMatrix":
        """Parse ``rank`` followed by the upper triangle, row by row.

        The strict upper triangle (r(r-1)/2 entries) is expected; a triangle
        that includes the diagonal (r(r+1)/2 entries, all diagonal 1) is also
        accepted. ``inf`` (or ``oo``) denotes an infinite entry.
        """
        tokens = text.replace(",", " ").split()
        if not tokens:
            raise ValueError("empty Coxeter matrix file")
        rank = int(tokens[0])
        vals = [_parse_entry(t) for t in tokens[1:]]
        strict = rank * (rank - 1) // 2
        upper: dict[tuple[int, int], float] = {}
        if len(vals) == strict:
            it = iter(vals)
            for i in range(1, rank + 1):
                for j in range(i + 1, rank + 1):
                    upper[i, j] = next(it)
        elif len(vals) == strict + rank:
            it = iter(vals)
            for i in range(1, rank + 1):
                for j in range(i, rank + 1):
                    m = next(it)
                    if i == j:
                        if m != 1:
                            raise ValueError("diagonal entries must be 1")
                    else:
                        upper[i, j] = m
        else:
            raise ValueError(f"expected {strict} upper-triangle entries for rank {rank}, got {len(vals)}")
        return cls.from_upper(rank, upper)


def _fmt_entry(m: float) -> str:
    return "inf" if m == INF else str(int(m))


def _parse_entry(tok: str) -> float:
    if tok.lower() in ("inf", "oo", "infinity"):
        return INF
    return int(tok)


@dataclass(frozen=True)
class CoxeterSystem:
    """A Coxeter matrix together with the backend that represents its elements."""

    matrix: CoxeterMatrix
    backend: str  # "symmetric" | "universal" | "generic"
    max_length: int = DEFAULT_MAX_LENGTH

    def __post_init__(self):
        if self.backend == "symmetric" and not self.matrix.is_type_a():
            raise ValueError("symmetric backend requires a type A matrix")
        if self.backend == "universal" and not self.matrix.is_universal():
            raise ValueError("universal backend requires all off-diagonal entries infinite")
        if self.backend not in ("symmetric", "universal", "generic"):
            raise ValueError(f"unknown backend {self.backend!r}")

    @property
    def rank(self) -> int:
        return self.matrix.rank

    @property
    def n(self) -> int:
        """Degree of the symmetric group (symmetric backend only)."""
        return self.rank + 1

    @property
    def identity(self) -> "Element":
        if self.backend == "symmetric":
            return Element(self, tuple(range(1, self.n + 1)), 0)
        return Element(self, (), 0)

    def generator(self, s: int) -> "Element":
        return self.identity.right_mul(s)

    def element(self, word: Iterable[int]) -> "Element":
        return normalize(word, self)

    def permutation(self, perm: Sequence[int]) -> "Element":
        if self.backend != "symmetric":
            raise ValueError("permutation input requires the symmetric backend")
        perm = tuple(int(p) for p in perm)
        if sorted(perm) != list(range(1, self.n + 1)):
            raise ValueError(f"{perm} is not a permutation of 1..{self.n}")
        return Element(self, perm, _inversions(perm))

    def describe(self) -> str:
        if self.backend == "symmetric":
            return f"sym:{self.n}"
        if self.backend == "universal":
            return f"universal:{self.rank}"
        return f"generic:{self.rank}"


@lru_cache(maxsize=None)
def symmetric(n: int) -> CoxeterSystem:
    if n < 2:
        raise ValueError("symmetric(n) needs n >= 2")
    return CoxeterSystem(CoxeterMatrix.type_a(n - 1), "symmetric")


@lru_cache(maxsize=None)
def universal(rank: int) -> CoxeterSystem:
    return CoxeterSystem(CoxeterMatrix.all_infinite(rank), "universal")


def generic(matrix: CoxeterMatrix, max_length: int = DEFAULT_MAX_LENGTH) -> CoxeterSystem:
    return CoxeterSystem(matrix, "generic", max_length)


def from_matrix(matrix: CoxeterMatrix, max_length: int = DEFAULT_MAX_LENGTH) -> CoxeterSystem:
    """Pick the most specialised backend able to represent ``matrix``."""
    if matrix.is_type_a():
        return symmetric(matrix.rank + 1)
    if matrix.is_universal():
        return universal(matrix.rank)
    return generic(matrix, max_length)


def dihedral(m: int, max_length: int = DEFAULT_MAX_LENGTH) -> CoxeterSystem:
    """I_2(m) on the generic backend."""
    return generic(CoxeterMatrix.from_upper(2, {(1, 2): m}), max_length)


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------


class Element:
    """A group element in canonical form.

    ``key`` is the one-line permutation (symmetric backend) or the
    shortlex-least reduced word (other backends). Equality and hashing use
    only the key and the system, so elements work as memo keys.
    """

    __slots__ = ("system", "key", "length", "_hash")

    def __init__(self, system: CoxeterSystem, key: tuple[int, ...], length: int):
        self.system = system
        self.key = key
        self.length = length
        self._hash = hash(key)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.key == other.key and (self.system is other.system or self.system == other.system)

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "Element") -> bool:
        # (length, shortlex) -- a total order used only for deterministic sorting
        return (self.length, self.key) < (other.length, other.key)

    def __repr__(self):
        return f"Element({self})"

    def __str__(self):
        if self.system.backend == "symmetric":
            sep = "" if self.system.n < 10 else ","
            return sep.join(str(p) for p in self.key)
        if not self.key:
            return "e"
        return "".join(f"s{s}" for s in self.key)

    # -- structure -----------------------------------------------------------

    def word(self) -> tuple[int, ...]:
        """A fixed reduced word for this element."""
        if self.system.backend != "symmetric":
            return self.key
        return _perm_word(self.key)

    def is_identity(self) -> bool:
        return self.length == 0

    def right_descents(self) -> frozenset[int]:
        sys = self.system
        if sys.backend == "symmetric":
            p = self.key
            return frozenset(i for i in range(1, sys.n) if p[i - 1] > p[i])
        if sys.backend == "universal":
            return frozenset(self.key[-1:])
        return frozenset(w[-1] for w in _braid_orbit(sys.matrix, self.key) if w)

    def left_descents(self) -> frozenset[int]:
        sys = self.system
        if sys.backend == "symmetric":
            pos = _inverse(self.key)
            return frozenset(i for i in range(1, sys.n) if pos[i - 1] > pos[i])
        if sys.backend == "universal":
            return frozenset(self.key[:1])
        return frozenset(w[0] for w in _braid_orbit(sys.matrix, self.key) if w)

    def right_mul(self, s: int) -> "Element":
        """The element w*s_s."""
        sys = self.system
        _check_gen(s, sys)
        if sys.backend == "symmetric":
            p = list(self.key)
            down = p[s - 1] > p[s]
            p[s - 1], p[s] = p[s], p[s - 1]
            return Element(sys, tuple(p), self.length - 1 if down else self.length + 1)
        if sys.backend == "universal":
            if self.key and self.key[-1] == s:
                return Element(sys, self.key[:-1], self.length - 1)
            return Element(sys, self.key + (s,), self.length + 1)
        return _generic_right_mul(sys, self.key, s)

    def left_mul(self, s: int) -> "Element":
        """The element s_s*w."""
        sys = self.system
        _check_gen(s, sys)
        if sys.backend == "symmetric":
            p = tuple(s + 1 if x == s else s if x == s + 1 else x for x in self.key)
            return Element(sys, p, _inversions(p))
        if sys.backend == "universal":
            if self.key and self.key[0] == s:
                return Element(sys, self.key[1:], self.length - 1)
            return Element(sys, (s,) + self.key, self.length + 1)
        return normalize((s,) + self.key, sys)

    def sigma(self, s: int) -> int:
        """l(ws) - l(w), which is +1 or -1."""
        return -1 if s in self.right_descents() else 1

    def __mul__(self, other: "Element") -> "Element":
        if other.system != self.system:
            raise ValueError("elements belong to different systems")
        out = self
        for s in other.word():
            out = out.right_mul(s)
        return out

    def inverse(self) -> "Element":
        return normalize(reversed(self.word()), self.system)


def _check_gen(s: int, sys: CoxeterSystem) -> None:
    if not isinstance(s, int) or not 1 <= s <= sys.rank:
        raise ValueError(f"generator index {s!r} outside 1..{sys.rank}")


def _inversions(p: Sequence[int]) -> int:
    n = len(p)
    return sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])


def _inverse(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, x in enumerate(p, start=1):
        inv[x - 1] = i
    return tuple(inv)


def _perm_word(p: tuple[int, ...]) -> tuple[int, ...]:
    # bubble-sort decomposition: strip the smallest right descent until sorted
    p = list(p)
    word: list[int] = []
    i = 0
    while i < len(p) - 1:
        if p[i] > p[i + 1]:
            p[i], p[i + 1] = p[i + 1], p[i]
            word.append(i + 1)
            i = max(i - 1, 0)
        else:
            i += 1
    return tuple(reversed(word))


# ---------------------------------------------------------------------------
# generic backend: braid-move closure
# ---------------------------------------------------------------------------


def _alternating(s: int, t: int, m: int) -> tuple[int, ...]:
    return tuple(s if k % 2 == 0 else t for k in range(m))


@lru_cache(maxsize=200_000)
def _braid_orbit(matrix: CoxeterMatrix, word: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    """All words reachable from ``word`` by braid moves (finite m only)."""
    seen = {word}
    queue = deque([word])
    rank = matrix.rank
    while queue:
        w = queue.popleft()
        for s in range(1, rank + 1):
            for t in range(1, rank + 1):
                if s == t:
                    continue
                m = matrix.m(s, t)
                if m == INF:
                    continue
                m = int(m)
                if m > len(w):
                    continue
                pat = _alternating(s, t, m)
                rep = _alternating(t, s, m)
                for i in range(len(w) - m + 1):
                    if w[i:i + m] == pat:
                        nw = w[:i] + rep + w[i + m:]
                        if nw not in seen:
                            seen.add(nw)
                            queue.append(nw)
    return frozenset(seen)


@lru_cache(maxsize=200_000)
def _generic_right_mul_cached(matrix: CoxeterMatrix, key: tuple[int, ...], s: int) -> tuple[tuple[int, ...], int]:
    orbit = _braid_orbit(matrix, key)
    for w in orbit:
        if w and w[-1] == s:
            shorter = w[:-1]
            return min(_braid_orbit(matrix, shorter)), len(shorter)
    longer = key + (s,)
    return min(_braid_orbit(matrix, longer)), len(longer)


def _generic_right_mul(sys: CoxeterSystem, key: tuple[int, ...], s: int) -> Element:
    nkey, length = _generic_right_mul_cached(sys.matrix, key, s)
    if length > sys.max_length:
        raise LengthBoundError(f"length {length} exceeds cap {sys.max_length}")
    return Element(sys, nkey, length)


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def normalize(word: Iterable[int], sys: CoxeterSystem) -> Element:
    """Canonical element represented by ``word`` (any word, reduced or not).

    Letters are multiplied in on the right one at a time. A reduced word
    followed by s is either reduced or has a braid-equivalent form ending in
    s (exchange condition), in which case the trailing pair cancels; so the
    result is the nil-move fixed point of the whole braid class.
    """
    word = tuple(word)
    for s in word:
        _check_gen(s, sys)
    if sys.backend == "generic" and len(word) > sys.max_length:
        raise LengthBoundError(f"word length {len(word)} exceeds cap {sys.max_length}")
    out = sys.identity
    for s in word:
        out = out.right_mul(s)
    return out


def right_descents(v: Element) -> frozenset[int]:
    return v.right_descents()


def bruhat_leq(u: Element, v: Element) -> bool:
    """u <= v in Bruhat order.

    Scans a fixed reduced word of v from the right: when the current letter
    s is a right descent of u, it is absorbed into the subword (u -> us).
    u <= v iff u is reduced to the identity at the end. This is the greedy
    form of the Subword Property.
    """
    if u.system != v.system:
        raise ValueError("elements belong to different systems")
    if u.length > v.length:
        return False
    if u.length == v.length:
        return u == v
    for s in reversed(v.word()):
        if s in u.right_descents():
            u = u.right_mul(s)
            if u.length == 0:
                return True
    return u.length == 0


def lower_covers(v: Element) -> list[Element]:
    """Elements covered by v in Bruhat order, sorted."""
    sys = v.system
    if sys.backend == "symmetric":
        p = v.key
        n = len(p)
        out = []
        for i in range(n):
            for j in range(i + 1, n):
                if p[i] > p[j] and not any(p[j] < p[k] < p[i] for k in range(i + 1, j)):
                    q = list(p)
                    q[i], q[j] = q[j], q[i]
                    out.append(Element(sys, tuple(q), v.length - 1))
        return sorted(out)
    word = v.word()
    found = set()
    for i in range(len(word)):
        x = normalize(word[:i] + word[i + 1:], sys)
        if x.length == v.length - 1:
            found.add(x)
    return sorted(found)


def bruhat_interval(u: Element, w: Element):
    """The interval [u, w] as a GradedPoset whose labels are Elements.

    Built by breadth-first descent from w through lower covers, keeping
    only elements above u.
    """
    return _bruhat_interval_cached(u, w)


@lru_cache(maxsize=50_000)
def _bruhat_interval_cached(u: Element, w: Element):
    from .poset import GradedPoset

    if not bruhat_leq(u, w):
        raise ValueError(f"{u} is not below {w} in Bruhat order")
    members = {w}
    covers: list[tuple[Element, Element]] = []
    frontier = [w]
    while frontier:
        nxt = []
        for x in frontier:
            if x.length == u.length:
                continue
            for y in lower_covers(x):
                if y.length < u.length or not bruhat_leq(u, y):
                    continue
                covers.append((y, x))
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    elems = sorted(members)
    idx = {e: i for i, e in enumerate(elems)}
    return GradedPoset(elems, [(idx[a], idx[b]) for a, b in covers])


def enumerate_elements(sys: CoxeterSystem, max_len: float | None = None) -> list[Element]:
    """All elements of length <= max_len, sorted by (length, shortlex).

    ``max_len=None`` means unbounded, which is only allowed for the
    symmetric backend.
    """
    if max_len is None or max_len == INF:
        if sys.backend != "symmetric":
            raise ValueError("unbounded enumeration needs a finite group")
        max_len = sys.n * (sys.n - 1) // 2
    if sys.backend == "generic" and max_len > sys.max_length:
        raise LengthBoundError(f"max_len {max_len} exceeds cap {sys.max_length}")
    level = [sys.identity]
    out = list(level)
    for _ in range(int(max_len)):
        nxt = set()
        for x in level:
            for s in range(1, sys.rank + 1):
                if s not in x.right_descents():
                    nxt.add(x.right_mul(s))
        if not nxt:
            break
        level = sorted(nxt)
        out.extend(level)
    return out


def bruhat_poset(sys: CoxeterSystem, max_len: float | None = None):
    """Bruhat order on all elements of length <= max_len as one GradedPoset."""
    from .poset import GradedPoset

    elems = enumerate_elements(sys, max_len)
    idx = {e: i for i, e in enumerate(elems)}
    covers = [(idx[y], idx[x]) for x in elems for y in lower_covers(x) if y in idx]
    return GradedPoset(elems, covers)


# ---------------------------------------------------------------------------
# text formats
# ---------------------------------------------------------------------------


def parse_word(text: str) -> tuple[int, ...]:
    """Parse ``"1 2 3 1"``, ``"1,2,3"`` or ``"s1s2s3"``; ``""`` and ``"e"`` are the identity."""
    text = text.strip()
    if text in ("", "e"):
        return ()
    if "s" in text:
        parts = [p for p in text.replace(",", " ").replace("s", " ").split()]
    else:
        parts = text.replace(",", " ").split()
    return tuple(int(p) for p in parts)


def parse_element(text: str, sys: CoxeterSystem) -> Element:
    """Parse an element: a permutation (``"3412"``, ``"3,4,1,2"``) for the
    symmetric backend, a word for the others. Words written with ``s``
    (``"s1s2"``) are accepted by every backend."""
    text = text.strip()
    if sys.backend == "symmetric" and "s" not in text:
        if text in ("", "e"):
            return sys.identity
        if "," in text or " " in text:
            perm = [int(p) for p in text.replace(",", " ").split()]
        else:
            perm = [int(ch) for ch in text]
        return sys.permutation(perm)
    return normalize(parse_word(text), sys)
