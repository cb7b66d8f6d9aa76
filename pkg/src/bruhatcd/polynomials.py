"""Sparse integer polynomials in non-commuting variables.

``AbPolynomial`` lives in Z<a,b> and ``CdPolynomial`` in Z<c,d> with
deg c = 1, deg d = 2. Monomials are strings over the two-letter alphabet,
so the usual string order is the lexicographic order with a < b, c < d.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product as _cartesian
from typing import Iterable, Iterator, Mapping


class NotInCdSpan(ValueError):
    """An ab-polynomial that cannot be written in c = a+b and d = ab+ba."""


class _NCPolynomial:
    alphabet = ""
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[str, int] | Iterable[tuple[str, int]] | None = None):
        clean: dict[str, int] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for word, coef in items:
                if any(ch not in self.alphabet for ch in word):
                    raise ValueError(f"{word!r} is not a word over {self.alphabet!r}")
                coef = int(coef)
                total = clean.get(word, 0) + coef
                if total:
                    clean[word] = total
                else:
                    clean.pop(word, None)
        self._terms = clean
        self._hash = None

    # -- construction --------------------------------------------------------

    @classmethod
    def monomial(cls, word: str, coef: int = 1):
        return cls({word: coef})

    @classmethod
    def one(cls):
        return cls({"": 1})

    # -- mapping protocol ----------------------------------------------------

    def __getitem__(self, word: str) -> int:
        return self._terms.get(word, 0)

    def __iter__(self) -> Iterator[str]:
        return iter(self.sorted_words())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def items(self) -> list[tuple[str, int]]:
        return [(w, self._terms[w]) for w in self.sorted_words()]

    def sorted_words(self) -> list[str]:
        return sorted(self._terms, key=lambda w: (self.word_degree(w), w))

    @property
    def terms(self) -> dict[str, int]:
        return dict(self._terms)

    # -- degree --------------------------------------------------------------

    @staticmethod
    def word_degree(word: str) -> int:
        return len(word)

    def degrees(self) -> set[int]:
        return {self.word_degree(w) for w in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int | None:
        """The common degree of a homogeneous nonzero polynomial."""
        degs = self.degrees()
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError("polynomial is not homogeneous")
        return degs.pop()

    # -- arithmetic ----------------------------------------------------------

    def _same(self, other) -> None:
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self == type(self).one() * other
        if type(other) is not type(self):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other):
        self._same(other)
        out = dict(self._terms)
        for w, k in other._terms.items():
            out[w] = out.get(w, 0) + k
        return type(self)(out)

    def __neg__(self):
        return type(self)({w: -k for w, k in self._terms.items()})

    def __sub__(self, other):
        self._same(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return type(self)({w: k * other for w, k in self._terms.items()})
        self._same(other)
        out: dict[str, int] = {}
        for w1, k1 in self._terms.items():
            for w2, k2 in other._terms.items():
                w = w1 + w2
                out[w] = out.get(w, 0) + k1 * k2
        return type(self)(out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def halve(self):
        """Exact division by 2; raises ValueError if some coefficient is odd."""
        odd = [w for w, k in self._terms.items() if k % 2]
        if odd:
            raise ValueError(f"odd coefficient at {odd[0]!r}; cannot halve")
        return type(self)({w: k // 2 for w, k in self._terms.items()})

    def leq(self, other) -> bool:
        """Coefficientwise comparison."""
        self._same(other)
        words = set(self._terms) | set(other._terms)
        return all(self[w] <= other[w] for w in words)

    def first_term(self) -> str:
        """Lexicographically first monomial."""
        if not self._terms:
            raise ValueError("zero polynomial has no terms")
        return min(self._terms)

    def min_coefficient(self) -> int:
        return min(self._terms.values()) if self._terms else 0

    def max_coefficient(self) -> int:
        return max(self._terms.values()) if self._terms else 0

    # -- output --------------------------------------------------------------

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for w, k in self.items():
            mono = _compress(w) or "1"
            if mono == "1":
                body = str(abs(k))
            else:
                body = mono if abs(k) == 1 else f"{abs(k)}{mono}"
            sign = "-" if k < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def to_dict(self) -> dict:
        degs = self.degrees()
        return {
            "basis": self.alphabet,
            "degree": (degs.pop() if len(degs) == 1 else None),
            "terms": {w: k for w, k in self.items()},
        }

    @classmethod
    def from_dict(cls, data: Mapping):
        if data.get("basis") != cls.alphabet:
            raise ValueError(f"expected basis {cls.alphabet!r}")
        poly = cls(data["terms"])
        if data.get("degree") is not None and poly and poly.degree != data["degree"]:
            raise ValueError("declared degree disagrees with the terms")
        return poly


def _compress(word: str) -> str:
    out = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        out.append(word[i] if j - i == 1 else f"{word[i]}^{j - i}")
        i = j
    return "".join(out)


class AbPolynomial(_NCPolynomial):
    alphabet = "ab"
    __slots__ = ()


class CdPolynomial(_NCPolynomial):
    alphabet = "cd"
    __slots__ = ()

    @staticmethod
    def word_degree(word: str) -> int:
        return len(word) + word.count("d")

    def is_monic(self) -> bool:
        deg = self.degree
        return deg is not None and self["c" * deg] == 1


a = AbPolynomial.monomial("a")
b = AbPolynomial.monomial("b")
c = CdPolynomial.monomial("c")
d = CdPolynomial.monomial("d")
AB_ONE = AbPolynomial.one()
CD_ONE = CdPolynomial.one()


# ---------------------------------------------------------------------------
# conversions
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _expand_monomial(word: str) -> tuple[str, ...]:
    # every choice gives a distinct ab-word, so all coefficients are 1
    pieces = [("a", "b") if ch == "c" else ("ab", "ba") for ch in word]
    return tuple("".join(choice) for choice in _cartesian(*pieces))


def cd_to_ab(q: CdPolynomial) -> AbPolynomial:
    """Expand with c = a + b and d = ab + ba."""
    out: dict[str, int] = {}
    for w, k in q.items():
        for v in _expand_monomial(w):
            out[v] = out.get(v, 0) + k
    return AbPolynomial(out)


def _leading_preimage(word: str) -> str | None:
    # images of c -> a, d -> ab are exactly the words with every b preceded by a
    if word.startswith("b") or "bb" in word:
        return None
    return word.replace("ab", "d").replace("a", "c")


def ab_to_cd(p: AbPolynomial) -> CdPolynomial:
    """Rewrite a homogeneous ab-polynomial in the cd basis.

    Triangular elimination: the lexicographically least ab-word in the
    expansion of a cd-monomial is its image under c -> a, d -> ab, and
    distinct cd-monomials have distinct least words. Peel off the least
    surviving word until nothing is left; a least word that is not such an
    image proves p is outside the cd-span.
    """
    if not p:
        return CdPolynomial()
    if not p.is_homogeneous():
        raise ValueError("ab_to_cd needs a homogeneous polynomial")
    residue = p.terms
    out: dict[str, int] = {}
    while residue:
        lead = min(residue)
        coef = residue[lead]
        mono = _leading_preimage(lead)
        if mono is None:
            raise NotInCdSpan(f"residue has leading word {lead!r} outside the image of c, d")
        out[mono] = coef
        for v in _expand_monomial(mono):
            k = residue.get(v, 0) - coef
            if k:
                residue[v] = k
            else:
                del residue[v]
    return CdPolynomial(out)


def substitute_a_minus_b(p: AbPolynomial) -> AbPolynomial:
    """p(a - b, b): turns a flag index into the corresponding ab-index."""
    out: dict[str, int] = {}
    for w, k in p.items():
        pieces = [(("a", 1), ("b", -1)) if ch == "a" else (("b", 1),) for ch in w]
        for choice in _cartesian(*pieces):
            v = "".join(ch for ch, _ in choice)
            sign = 1
            for _, s in choice:
                sign *= s
            out[v] = out.get(v, 0) + sign * k
    return AbPolynomial(out)


def derivation_G(q: CdPolynomial) -> CdPolynomial:
    """The derivation with G(c) = d and G(d) = dc, extended by the Leibniz rule."""
    out: dict[str, int] = {}
    for w, k in q.items():
        for i, ch in enumerate(w):
            v = w[:i] + ("d" if ch == "c" else "dc") + w[i + 1:]
            out[v] = out.get(v, 0) + k
    return CdPolynomial(out)


@lru_cache(maxsize=None)
def cd_monomials(degree: int) -> tuple[str, ...]:
    """All cd-monomials of the given degree, in lexicographic order."""
    if degree < 0:
        return ()
    if degree == 0:
        return ("",)
    out = ["c" + w for w in cd_monomials(degree - 1)]
    out += ["d" + w for w in cd_monomials(degree - 2)] if degree >= 2 else []
    return tuple(sorted(out))


def cd_monomial_count(n: int) -> int:
    """Number of cd-monomials of degree n - 1 (the Fibonacci number F_n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return len(cd_monomials(n - 1))
