import pytest
from hypothesis import given
from hypothesis import strategies as st

from bruhatcd.flags import pyramid_cd
from bruhatcd.polynomials import (
    AbPolynomial,
    CdPolynomial,
    NotInCdSpan,
    ab_to_cd,
    cd_monomial_count,
    cd_monomials,
    cd_to_ab,
    derivation_G,
    substitute_a_minus_b,
)

from .strategies import ab_polynomials, cd_polynomials

Ab, Cd = AbPolynomial, CdPolynomial


def test_basic_expansions():
    assert cd_to_ab(Cd({"c": 1})) == Ab({"a": 1, "b": 1})
    assert cd_to_ab(Cd({"d": 1})) == Ab({"ab": 1, "ba": 1})
    assert cd_to_ab(Cd({"cd": 1})) == Ab({"aab": 1, "aba": 1, "bab": 1, "bba": 1})


def test_boolean_rank_three():
    assert ab_to_cd(Ab({"aa": 1, "ab": 2, "ba": 2, "bb": 1})) == Cd({"cc": 1, "d": 1})
    assert ab_to_cd(Ab({"a": 1, "b": 1})) == Cd({"c": 1})


def test_not_in_cd_span():
    with pytest.raises(NotInCdSpan):
        ab_to_cd(Ab({"ab": 1, "ba": -1}))
    with pytest.raises(NotInCdSpan):
        ab_to_cd(Ab({"b": 1}))


def test_degree_two_span_exhausted():
    # the cd-span in degree 2 is {x aa + y(ab+ba) + x bb}
    for coefs in [(1, 0, 0, 1), (0, 1, 1, 0), (2, 3, 3, 2)]:
        ab_to_cd(Ab(dict(zip(["aa", "ab", "ba", "bb"], coefs))))
    for coefs in [(1, 0, 0, 0), (0, 1, 0, 0), (1, 1, 1, 2)]:
        with pytest.raises(NotInCdSpan):
            ab_to_cd(Ab(dict(zip(["aa", "ab", "ba", "bb"], coefs))))


def test_derivation_examples():
    assert derivation_G(Cd({"c": 1})) == Cd({"d": 1})
    assert derivation_G(Cd({"cc": 1})) == Cd({"dc": 1, "cd": 1})
    assert derivation_G(Cd({"dd": 1})) == Cd({"dcd": 1, "ddc": 1})
    assert derivation_G(Cd.one()) == Cd()


@given(cd_polynomials(max_degree=4), cd_polynomials(max_degree=4))
def test_derivation_is_leibniz(p, q):
    assert derivation_G(p * q) == derivation_G(p) * q + p * derivation_G(q)


@given(cd_polynomials(max_degree=7))
def test_round_trip(q):
    assert ab_to_cd(cd_to_ab(q)) == q


@given(cd_polynomials(max_degree=6))
def test_degrees(q):
    assert cd_to_ab(q).degree == q.degree
    assert derivation_G(q).degree in (None, q.degree + 1)


@given(cd_polynomials(max_degree=6))
def test_pyramid_leading_term(q):
    assert pyramid_cd(q).first_term() == "c" + q.first_term()


@given(cd_polynomials(max_degree=5), cd_polynomials(max_degree=5))
def test_pyramid_is_injective(p, q):
    if p.degree == q.degree and p != q:
        assert pyramid_cd(p) != pyramid_cd(q)


@given(ab_polynomials())
def test_substitution_inverts(p):
    # Upsilon(a - b, b) followed by a -> a + b is the identity
    back = {}
    for w, k in substitute_a_minus_b(p).items():
        expanded = Ab.one()
        for ch in w:
            expanded = expanded * (Ab({"a": 1, "b": 1}) if ch == "a" else Ab({"b": 1}))
        for v, k2 in expanded.items():
            back[v] = back.get(v, 0) + k * k2
    assert Ab(back) == p


def test_monomial_counts_are_fibonacci():
    fib = [1, 1]
    while len(fib) < 12:
        fib.append(fib[-1] + fib[-2])
    for n in range(1, 13):
        assert cd_monomial_count(n) == fib[n - 1]
    assert cd_monomials(3) == ("ccc", "cd", "dc")


def test_arithmetic_and_format():
    c, d = Cd({"c": 1}), Cd({"d": 1})
    p = c * c + d * 2
    assert str(p) == "c^2 + 2d"
    assert str(Cd()) == "0"
    assert str(-p) == "-c^2 - 2d"
    assert p - p == Cd()
    assert p.is_monic() and not (d * 2).is_monic()
    assert (p * 2).halve() == p
    with pytest.raises(ValueError):
        p.halve()
    assert Cd.one() == 1


def test_coefficientwise_order():
    assert Cd({"cc": 1}).leq(Cd({"cc": 1, "d": 1}))
    assert not Cd({"cc": 1, "d": 2}).leq(Cd({"cc": 1, "d": 1}))


def test_mixing_types_is_an_error():
    with pytest.raises(TypeError):
        Cd({"c": 1}) + Ab({"a": 1})
    with pytest.raises(ValueError):
        Cd({"ca": 1})


@given(cd_polynomials())
def test_dict_round_trip(q):
    data = q.to_dict()
    assert data["basis"] == "cd" and data["degree"] == q.degree
    assert Cd.from_dict(data) == q


def test_dict_sorted_by_degree_then_lex():
    assert list(Cd({"d": 2, "cc": 1}).to_dict()["terms"]) == ["cc", "d"]


@given(st.integers(0, 6))
def test_monomials_are_homogeneous(n):
    assert all(Cd.word_degree(m) == n for m in cd_monomials(n))
