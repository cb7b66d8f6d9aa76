"""Finite graded posets: Möbius function, Eulerian/thin tests, products,
pyramids, vertex shaving, zipping, fiber posets and isomorphism search.

Posets are immutable. Elements are dense integer ids ``0..n-1`` carrying
hashable, unique labels; the order is stored as reflexive reachability
bitsets (Python ints), one per element.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Any, Hashable, Iterable, Iterator, Mapping, Sequence


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def format_label(label: Any) -> str:
    if isinstance(label, tuple):
        return "(" + ",".join(format_label(x) for x in label) + ")"
    return str(label)


class GradedPoset:
    """A graded poset given by its cover relations.

    Ranks are recomputed from the covers: minimal elements get rank 0 and
    every cover must raise rank by exactly one, and all maximal elements
    must share a rank. Anything else raises ``ValueError``.
    """

    def __init__(self, labels: Iterable[Hashable], covers: Iterable[tuple[int, int]]):
        self.labels = tuple(labels)
        n = len(self.labels)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._index) != n:
            raise ValueError("labels must be distinct")
        self.covers = tuple(sorted(set((int(a), int(b)) for a, b in covers)))
        up: list[list[int]] = [[] for _ in range(n)]
        down: list[list[int]] = [[] for _ in range(n)]
        for a, b in self.covers:
            if a == b or not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"bad cover {(a, b)}")
            up[a].append(b)
            down[b].append(a)
        self._upper = tuple(tuple(u) for u in up)
        self._lower = tuple(tuple(d) for d in down)

        # Kahn's algorithm gives a linear extension and the ranks
        indeg = [len(d) for d in down]
        order = [i for i in range(n) if indeg[i] == 0]
        ranks = [0] * n
        k = 0
        while k < len(order):
            a = order[k]
            k += 1
            for b in up[a]:
                ranks[b] = max(ranks[b], ranks[a] + 1)
                indeg[b] -= 1
                if indeg[b] == 0:
                    order.append(b)
        if len(order) != n:
            raise ValueError("cover relation has a cycle")
        for a, b in self.covers:
            if ranks[b] != ranks[a] + 1:
                raise ValueError("not graded: a cover relation skips a rank")
        tops = {ranks[i] for i in range(n) if not up[i]}
        if len(tops) > 1:
            raise ValueError("not graded: maximal elements have different ranks")
        self.ranks = tuple(ranks)

        downset = [0] * n
        for a in order:
            m = 1 << a
            for b in down[a]:
                m |= downset[b]
            downset[a] = m
        upset = [0] * n
        for a in reversed(order):
            m = 1 << a
            for b in up[a]:
                m |= upset[b]
            upset[a] = m
        self._up = tuple(upset)
        self._down = tuple(downset)
        self._mobius_rows: dict[int, dict[int, int]] = {}

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_relation(cls, labels: Sequence[Hashable], up_sets: Sequence[int]) -> "GradedPoset":
        """Build from reflexive up-set bitsets, checking the partial-order axioms."""
        n = len(labels)
        full = (1 << n) - 1
        for a in range(n):
            if not (up_sets[a] >> a) & 1:
                raise ValueError("relation is not reflexive")
            if up_sets[a] & ~full:
                raise ValueError("relation refers to unknown elements")
        down_sets = [0] * n
        for a in range(n):
            for b in _bits(up_sets[a]):
                down_sets[b] |= 1 << a
        for a in range(n):
            if (up_sets[a] & down_sets[a]) != (1 << a):
                raise ValueError("relation is not antisymmetric")
            for b in _bits(up_sets[a]):
                if up_sets[b] & ~up_sets[a]:
                    raise ValueError("relation is not transitive")
        covers = []
        for a in range(n):
            strict = up_sets[a] & ~(1 << a)
            for b in _bits(strict):
                if not (strict & down_sets[b] & ~(1 << b)):
                    covers.append((a, b))
        return cls(labels, covers)

    # -- basic queries -------------------------------------------------------

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"GradedPoset(n={len(self)}, rank={self.rank})"

    @property
    def rank(self) -> int:
        return max(self.ranks) if self.ranks else -1

    def index(self, label: Hashable) -> int:
        return self._index[label]

    def __contains__(self, label: Hashable) -> bool:
        return label in self._index

    @property
    def bottom(self) -> int | None:
        mins = [i for i in range(len(self)) if not self._lower[i]]
        return mins[0] if len(mins) == 1 else None

    @property
    def top(self) -> int | None:
        maxs = [i for i in range(len(self)) if not self._upper[i]]
        return maxs[0] if len(maxs) == 1 else None

    def require_bounds(self) -> tuple[int, int]:
        b, t = self.bottom, self.top
        if b is None or t is None:
            raise ValueError("poset needs a unique minimum and maximum")
        return b, t

    def leq(self, x: int, y: int) -> bool:
        return bool((self._up[x] >> y) & 1)

    def up_mask(self, x: int) -> int:
        return self._up[x]

    def down_mask(self, x: int) -> int:
        return self._down[x]

    def upper_covers(self, x: int) -> tuple[int, ...]:
        return self._upper[x]

    def lower_covers(self, x: int) -> tuple[int, ...]:
        return self._lower[x]

    def members(self, mask: int) -> list[int]:
        return list(_bits(mask))

    def between(self, x: int, y: int) -> list[int]:
        """Ids of the closed interval [x, y]."""
        return list(_bits(self._up[x] & self._down[y]))

    def atoms(self) -> list[int]:
        b = self.bottom
        return [] if b is None else list(self._upper[b])

    def coatoms(self) -> list[int]:
        t = self.top
        return [] if t is None else list(self._lower[t])

    def rank_sizes(self) -> list[int]:
        counts = Counter(self.ranks)
        return [counts[r] for r in range(self.rank + 1)]

    # -- derived posets ------------------------------------------------------

    def induced(self, ids: Iterable[int]) -> "GradedPoset":
        """Induced subposet on ``ids`` (kept in increasing id order)."""
        ids = sorted(set(ids))
        pos = {old: new for new, old in enumerate(ids)}
        keep = 0
        for i in ids:
            keep |= 1 << i
        ups = []
        for i in ids:
            m = 0
            for j in _bits(self._up[i] & keep):
                m |= 1 << pos[j]
            ups.append(m)
        return GradedPoset.from_relation([self.labels[i] for i in ids], ups)

    def interval(self, x: int, y: int) -> "GradedPoset":
        """The closed interval [x, y] with labels preserved."""
        if not self.leq(x, y):
            raise ValueError("interval endpoints are not comparable")
        mask = self._up[x] & self._down[y]
        ids = list(_bits(mask))
        pos = {old: new for new, old in enumerate(ids)}
        covers = [(pos[a], pos[b]) for a in ids for b in self._upper[a] if (mask >> b) & 1]
        return GradedPoset([self.labels[i] for i in ids], covers)

    def dual(self) -> "GradedPoset":
        return GradedPoset(self.labels, [(b, a) for a, b in self.covers])

    # -- Möbius function -----------------------------------------------------

    def mobius_row(self, x: int) -> dict[int, int]:
        """{y: mu(x, y)} for every y >= x."""
        row = self._mobius_rows.get(x)
        if row is not None:
            return row
        above = sorted(_bits(self._up[x]), key=lambda i: self.ranks[i])
        row = {}
        for y in above:
            if y == x:
                row[y] = 1
                continue
            below = self._up[x] & self._down[y] & ~(1 << y)
            row[y] = -sum(row[z] for z in _bits(below))
        self._mobius_rows[x] = row
        return row

    def mobius(self, x: int, y: int) -> int:
        if not self.leq(x, y):
            raise ValueError("mobius(x, y) needs x <= y")
        return self.mobius_row(x)[y]

    # -- serialisation -------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "elements": [
                {"id": i, "rank": self.ranks[i], "label": format_label(self.labels[i])} for i in range(len(self))
            ],
            "covers": [[a, b] for a, b in self.covers],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=None, separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: Mapping) -> "GradedPoset":
        elems = sorted(data["elements"], key=lambda e: e["id"])
        if [e["id"] for e in elems] != list(range(len(elems))):
            raise ValueError("element ids must be 0..n-1")
        poset = cls([e["label"] for e in elems], [tuple(c) for c in data["covers"]])
        if any(poset.ranks[e["id"]] != e["rank"] for e in elems):
            raise ValueError("stored ranks disagree with the cover relation")
        return poset

    @classmethod
    def from_json(cls, text: str) -> "GradedPoset":
        return cls.from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# small named posets
# ---------------------------------------------------------------------------


def chain(k: int) -> GradedPoset:
    """Chain with k elements labelled 0..k-1."""
    return GradedPoset(range(k), [(i, i + 1) for i in range(k - 1)])


def boolean_lattice(n: int) -> GradedPoset:
    """Subsets of {1..n} as sorted tuples."""
    subsets = sorted((tuple(i + 1 for i in range(n) if m >> i & 1) for m in range(1 << n)), key=lambda s: (len(s), s))
    idx = {s: i for i, s in enumerate(subsets)}
    covers = []
    for s in subsets:
        for j in range(1, n + 1):
            if j not in s:
                covers.append((idx[s], idx[tuple(sorted(s + (j,)))]))
    return GradedPoset(subsets, covers)


def polygon(m: int) -> GradedPoset:
    """Face lattice of an m-gon (m = 2 gives the two-vertex, two-edge digon)."""
    if m < 2:
        raise ValueError("polygon needs m >= 2")
    labels = ["empty"] + [f"v{i}" for i in range(m)] + [f"e{i}" for i in range(m)] + ["polygon"]
    covers = [(0, 1 + i) for i in range(m)]
    for i in range(m):
        covers.append((1 + i, 1 + m + i))
        covers.append((1 + (i + 1) % m, 1 + m + i))
        covers.append((1 + m + i, 1 + 2 * m))
    return GradedPoset(labels, covers)


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def leq(P: GradedPoset, x: int, y: int) -> bool:
    return P.leq(x, y)


def mobius(P: GradedPoset, x: int, y: int) -> int:
    return P.mobius(x, y)


def is_eulerian(P: GradedPoset) -> bool:
    """mu(x, y) = (-1)^(rank y - rank x) on every interval."""
    P.require_bounds()
    for x in range(len(P)):
        rx = P.ranks[x]
        for y, mu in P.mobius_row(x).items():
            if mu != (-1) ** (P.ranks[y] - rx):
                return False
    return True


def is_thin(P: GradedPoset) -> bool:
    """Every interval of rank 2 has exactly four elements."""
    P.require_bounds()
    for x in range(len(P)):
        rx = P.ranks[x]
        for y in _bits(P.up_mask(x)):
            if P.ranks[y] == rx + 2 and (P.up_mask(x) & P.down_mask(y)).bit_count() != 4:
                return False
    return True


def product(P: GradedPoset, Q: GradedPoset) -> GradedPoset:
    """Componentwise order on P x Q; labels are pairs, id of (p, q) is p*|Q| + q."""
    nq = len(Q)
    labels = [(lp, lq) for lp in P.labels for lq in Q.labels]
    covers = []
    for p in range(len(P)):
        for q in range(nq):
            for p2 in P.upper_covers(p):
                covers.append((p * nq + q, p2 * nq + q))
            for q2 in Q.upper_covers(q):
                covers.append((p * nq + q, p * nq + q2))
    return GradedPoset(labels, covers)


def pyramid(P: GradedPoset) -> GradedPoset:
    """P times a two-element chain; the new coordinate is 0 (bottom copy) or 1."""
    return product(P, chain(2))


def shave(P: GradedPoset, a: int) -> GradedPoset:
    """Vertex shaving Sh_a(P) as an induced subposet of P x [hat0, a].

    Keeps ((P - {hat0, a}) x {a}) + ((a, hat1] x {hat0}) + {(hat0, hat0)};
    labels are the product pairs.
    """
    bot, _ = P.require_bounds()
    if a not in P.atoms():
        raise ValueError("shaving needs an atom")
    Q = product(P, P.interval(bot, a))
    lb, la = P.labels[bot], P.labels[a]
    keep = [Q.index((lb, lb))]
    for p in range(len(P)):
        if p not in (bot, a):
            keep.append(Q.index((P.labels[p], la)))
        if p != a and P.leq(a, p):
            keep.append(Q.index((P.labels[p], lb)))
    return Q.induced(keep)


def shave_by_zipping(P: GradedPoset, a: int) -> GradedPoset:
    """Sh_a(P) built as [a, (hat1, a)] after zipping ((a,hat0),(hat0,a),(a,a)) in P x [hat0, a]."""
    bot, top = P.require_bounds()
    if a not in P.atoms():
        raise ValueError("shaving needs an atom")
    Q = product(P, P.interval(bot, a))
    lb, la, lt = P.labels[bot], P.labels[a], P.labels[top]
    x, y, z = Q.index((la, lb)), Q.index((lb, la)), Q.index((la, la))
    Z = zip_poset(Q, x, y, z)
    return Z.interval(Z.index(merged_label(Q, x, y)), Z.index((lt, la)))


@dataclass(frozen=True)
class ZipperStatus:
    is_zipper: bool
    proper: bool = False
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.is_zipper


def join(P: GradedPoset, x: int, y: int) -> int | None:
    """Least common upper bound of x and y, or None if there is none."""
    common = P.up_mask(x) & P.up_mask(y)
    for z in _bits(common):
        if P.up_mask(z) & common == common:
            return z
    return None


def is_zipper(P: GradedPoset, x: int, y: int, z: int) -> ZipperStatus:
    """Classify (x, y, z): z covers exactly x and y, z = x v y, and D(x) = D(y)."""
    if len({x, y, z}) != 3:
        return ZipperStatus(False, reason="elements are not distinct")
    if set(P.lower_covers(z)) != {x, y}:
        return ZipperStatus(False, reason="z must cover x and y and nothing else")
    if join(P, x, y) != z:
        return ZipperStatus(False, reason="z is not the join of x and y")
    if P.down_mask(x) & ~(1 << x) != P.down_mask(y) & ~(1 << y):
        return ZipperStatus(False, reason="x and y have different strict down-sets")
    return ZipperStatus(True, proper=bool(P.upper_covers(z)))


def merged_label(P: GradedPoset, x: int, y: int) -> tuple:
    return (P.labels[x], P.labels[y])


def zip_poset(P: GradedPoset, x: int, y: int, z: int, check: bool = True) -> GradedPoset:
    """Replace the zipper (x, y, z) by one element xy.

    xy sits where x was; its label is ``(label(x), label(y))``.
    """
    if check:
        status = is_zipper(P, x, y, z)
        if not status:
            raise ValueError(f"not a zipper: {status.reason}")
    gone = (1 << x) | (1 << y) | (1 << z)
    keep = [i for i in range(len(P)) if i not in (y, z)]
    pos = {old: new for new, old in enumerate(keep)}

    def translate(mask: int) -> int:
        out = 0
        for j in _bits(mask & ~gone):
            out |= 1 << pos[j]
        return out

    xy = pos[x]
    ups = []
    for i in keep:
        if i == x:
            m = translate(P.up_mask(x) | P.up_mask(y))
        else:
            m = translate(P.up_mask(i))
            if P.leq(i, x):
                m |= 1 << xy
        ups.append(m | (1 << pos[i]))
    labels = [merged_label(P, x, y) if i == x else P.labels[i] for i in keep]
    return GradedPoset.from_relation(labels, ups)


def zip_mobius_failures(P: GradedPoset, x: int, y: int, z: int, zipped: GradedPoset | None = None) -> list[str]:
    """Check how the Mobius function changes under zipping (x, y, z).

    Expected: mu'(a, xy) = mu(a, x) = mu(a, y) for a below xy; mu'(a, b) = mu(a, b)
    for a != xy; mu'(xy, b) = mu(x, b) + mu(y, b) + mu(z, b) for b above xy.
    Returns a description of every pair where this fails.
    """
    Q = zipped if zipped is not None else zip_poset(P, x, y, z)
    xy = Q.index(merged_label(P, x, y))
    old = {Q.labels[i]: (P.index(Q.labels[i]) if i != xy else None) for i in range(len(Q))}
    bad = []

    def mu(p: int, q: int) -> int:
        return P.mobius_row(p).get(q, 0)

    for qa in range(len(Q)):
        for qb in Q.members(Q.up_mask(qa)):
            got = Q.mobius(qa, qb)
            pa, pb = old[Q.labels[qa]], old[Q.labels[qb]]
            if qa == xy and qb == xy:
                continue
            if qb == xy:
                want = {mu(pa, x), mu(pa, y)}
                if want != {got}:
                    bad.append(f"below xy: {format_label(Q.labels[qa])}")
            elif qa == xy:
                want = mu(x, pb) + mu(y, pb) + mu(z, pb)
                if want != got:
                    bad.append(f"above xy: {format_label(Q.labels[qb])}")
            elif mu(pa, pb) != got:
                bad.append(f"off the zipper: {format_label(Q.labels[qa])}, {format_label(Q.labels[qb])}")
    return bad


def is_order_projection(P: GradedPoset, Q: GradedPoset, eta: Sequence[int]) -> bool:
    """eta (P id -> Q id) is order-preserving and every q <= r lifts to some a <= b."""
    if len(eta) != len(P):
        return False
    for a in range(len(P)):
        for b in _bits(P.up_mask(a)):
            if not Q.leq(eta[a], eta[b]):
                return False
    reach = [0] * len(Q)
    for a in range(len(P)):
        img = 0
        for b in _bits(P.up_mask(a)):
            img |= 1 << eta[b]
        reach[eta[a]] |= img
    return all(reach[q] & Q.up_mask(q) == Q.up_mask(q) for q in range(len(Q)))


def fiber_poset(P: GradedPoset, eta: Sequence[Hashable]) -> GradedPoset:
    """Poset of the nonempty fibres of eta, F1 <= F2 iff some a in F1, b in F2 have a <= b.

    Fibres are labelled by their image and ordered by first occurrence.
    Raises ValueError when the induced relation is not a partial order.
    """
    keys: list[Hashable] = []
    fid: dict[Hashable, int] = {}
    for a in range(len(P)):
        if eta[a] not in fid:
            fid[eta[a]] = len(keys)
            keys.append(eta[a])
    ups = [0] * len(keys)
    for a in range(len(P)):
        m = 0
        for b in _bits(P.up_mask(a)):
            m |= 1 << fid[eta[b]]
        ups[fid[eta[a]]] |= m
    # the relation is not closed transitively here: a failure of transitivity is reported
    return GradedPoset.from_relation(keys, ups)


def _refine_colors(P: GradedPoset, Q: GradedPoset) -> tuple[list[int], list[int]]:
    nodes = [(P, i) for i in range(len(P))] + [(Q, j) for j in range(len(Q))]
    offset = len(P)

    def gid(poset, i):
        return i if poset is P else offset + i

    color = [(poset.ranks[i], len(poset.upper_covers(i)), len(poset.lower_covers(i))) for poset, i in nodes]
    palette = {c: k for k, c in enumerate(sorted(set(color)))}
    color = [palette[c] for c in color]
    while True:
        sig = [
            (
                color[g],
                tuple(sorted(color[gid(poset, u)] for u in poset.upper_covers(i))),
                tuple(sorted(color[gid(poset, d)] for d in poset.lower_covers(i))),
            )
            for g, (poset, i) in enumerate(nodes)
        ]
        palette = {c: k for k, c in enumerate(sorted(set(sig)))}
        new = [palette[s] for s in sig]
        if len(palette) == len(set(color)):
            return new[:offset], new[offset:]
        color = new


def is_isomorphic(P: GradedPoset, Q: GradedPoset) -> dict[int, int] | None:
    """A witness bijection P -> Q preserving covers, or None.

    Candidates are pruned by colour refinement seeded with
    (rank, up-degree, down-degree); elements are placed in rank order so
    each step only checks the lower covers of the new element.
    """
    if len(P) != len(Q) or len(P.covers) != len(Q.covers) or sorted(P.ranks) != sorted(Q.ranks):
        return None
    cp, cq = _refine_colors(P, Q)
    if Counter(cp) != Counter(cq):
        return None
    by_color: dict[int, list[int]] = {}
    for j, col in enumerate(cq):
        by_color.setdefault(col, []).append(j)
    order = sorted(range(len(P)), key=lambda i: (P.ranks[i], i))
    mapping = [-1] * len(P)
    used = [False] * len(Q)
    choice = [0] * len(order)
    k = 0
    while 0 <= k < len(order):
        p = order[k]
        cands = by_color[cp[p]]
        if mapping[p] >= 0:
            used[mapping[p]] = False
            mapping[p] = -1
        placed = False
        while choice[k] < len(cands):
            q = cands[choice[k]]
            choice[k] += 1
            if used[q]:
                continue
            if {mapping[d] for d in P.lower_covers(p)} != set(Q.lower_covers(q)):
                continue
            mapping[p] = q
            used[q] = True
            placed = True
            break
        if placed:
            k += 1
            if k < len(order):
                choice[k] = 0
        else:
            choice[k] = 0
            k -= 1
    if k < 0:
        return None
    return {p: mapping[p] for p in range(len(P))}


def order_complex_stats(P: GradedPoset) -> tuple[tuple[int, ...], int]:
    """Face numbers and reduced Euler characteristic of Delta(hat0, hat1).

    f[i] counts chains of i+1 elements of the open interval; the reduced
    Euler characteristic is -1 + f[0] - f[1] + ... (so -1 when empty).
    """
    bot, top = P.require_bounds()
    if P.ranks[top] < 1:
        raise ValueError("order complex needs rank >= 1")
    inner = sorted((i for i in range(len(P)) if i not in (bot, top)), key=lambda i: P.ranks[i])
    ends: dict[int, list[int]] = {}
    for x in inner:
        counts = [0, 1]
        for y in _bits(P.down_mask(x) & ~(1 << x) & ~(1 << bot)):
            cy = ends[y]
            if len(cy) + 1 > len(counts):
                counts.extend([0] * (len(cy) + 1 - len(counts)))
            for k in range(1, len(cy)):
                counts[k + 1] += cy[k]
        ends[x] = counts
    size = max((len(c) for c in ends.values()), default=1)
    totals = [0] * size
    for c in ends.values():
        for k, v in enumerate(c):
            totals[k] += v
    f = tuple(totals[1:])
    chi = -1 + sum((-1) ** i * fi for i, fi in enumerate(f))
    return f, chi
