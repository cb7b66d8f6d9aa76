import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from bruhatcd.constructions import (
    boolean_cd,
    boolean_interval,
    check_boolean_bound,
    check_dual_stacked_bound,
    check_nonnegativity,
    cyclic_word,
    dual_stacked_cd,
    dual_stacked_interval,
    dual_stacked_zipping_elements,
    exact_rank,
    family_words,
    general_interval_counterexample,
    interval_cd_indices,
    lower_interval_span_rank,
    spanning_family,
    spanning_rank,
)
from bruhatcd.coxeter import bruhat_interval, dihedral, symmetric
from bruhatcd.flags import cd_index
from bruhatcd.polynomials import CdPolynomial, cd_monomial_count
from bruhatcd.poset import boolean_lattice, is_eulerian, is_isomorphic, is_thin, polygon

Cd = CdPolynomial


def test_boolean_intervals():
    assert len(boolean_interval(0)) == 1
    B3 = boolean_interval(3)
    assert len(B3) == 8 and cd_index(B3) == Cd({"cc": 1, "d": 1})
    assert cd_index(boolean_interval(4)) == Cd({"ccc": 1, "cd": 2, "dc": 2})


def test_boolean_cd_matches_enumeration():
    for n in range(1, 7):
        assert boolean_cd(n) == cd_index(boolean_lattice(n))


def test_cyclic_words():
    assert cyclic_word(7, 2) == (1, 2, 3, 1, 2, 3, 1)
    assert cyclic_word(0, 2) == ()


def test_dual_stacked_examples():
    assert is_isomorphic(dual_stacked_interval(2, 0), boolean_lattice(3)) is not None
    P = dual_stacked_interval(2, 1)
    assert is_isomorphic(P, polygon(4)) is not None and cd_index(P) == Cd({"cc": 1, "d": 2})
    assert len(dual_stacked_interval(3, 2).coatoms()) == 6


@pytest.mark.parametrize("d", [2, 3])
@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_dual_stacked_family(d, k):
    P = dual_stacked_interval(d, k)
    assert len(P.coatoms()) == d + k + 1
    assert is_eulerian(P) and is_thin(P)
    assert cd_index(P) == dual_stacked_cd(d, k)
    if k:
        assert dual_stacked_zipping_elements(d, k) == []


def test_dual_stacked_segments():
    # in dimension one, shaving a vertex of a segment gives back a segment
    for k in range(4):
        P = dual_stacked_interval(1, k)
        assert len(P.coatoms()) == 2 and cd_index(P) == Cd({"c": 1})
    with pytest.raises(ValueError):
        dual_stacked_interval(0, 1)


def test_family_recurrence():
    assert family_words(1) == ((1,),)
    assert family_words(2) == ((1, 2),)
    assert family_words(3) == ((1, 2, 3), (3, 1, 3))
    for n in range(3, 9):
        words = family_words(n)
        assert len(words) == cd_monomial_count(n)
        assert words[: len(family_words(n - 1))] == tuple(w + (n,) for w in family_words(n - 1))
        assert all(len(w) == n for w in words)


def test_family_values():
    fam = spanning_family(3)
    assert fam.cd_indices == [Cd({"cc": 1, "d": 1}), Cd({"cc": 1})]
    assert spanning_rank(1) == 1
    assert spanning_rank(5) == 5


@pytest.mark.parametrize("n", range(1, 7))
def test_family_rank_against_sympy(n):
    fam = spanning_family(n)
    assert fam.rank() == sympy.Matrix(fam.matrix()).rank() == cd_monomial_count(n)
    assert fam.reduction_witness()


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=5, max_size=5), min_size=1, max_size=6))
def test_exact_rank_against_sympy(rows):
    assert exact_rank(rows) == sympy.Matrix(rows).rank()


def test_exact_rank_edge_cases():
    assert exact_rank([]) == 0
    assert exact_rank([[0, 0], [0, 0]]) == 0
    assert exact_rank([[0, 1], [1, 0], [1, 1]]) == 2


def test_nonnegativity_s4(S4):
    report = check_nonnegativity(interval_cd_indices(S4), "all intervals of S_4")
    assert report.status == "all_pass" and report.checked == 189
    rank_one = [phi for u, w, phi in interval_cd_indices(S4) if w.length - u.length == 1]
    assert {k for phi in rank_one for k in phi.terms.values()} == {1}


def test_nonnegativity_reports_witnesses():
    S3 = symmetric(3)
    fake = [(S3.identity, S3.generator(1), Cd({"c": -1}))]
    report = check_nonnegativity(fake, "fake")
    assert report.status == "violations_found" and report.violations[0]["u"] == "123"


def test_dihedral_interval_nonnegative():
    I3 = dihedral(3)
    phi = cd_index(bruhat_interval(I3.identity, I3.element((2, 1, 2))))
    assert phi == Cd({"cc": 1}) and phi.min_coefficient() >= 0


def test_boolean_bound_s4():
    report = check_boolean_bound(symmetric(4))
    assert report.ab.status == "all_pass" and report.cd.status == "all_pass"
    assert report.general_interval_fails and report.ok
    assert report.ab.checked == 23


def test_boolean_bound_longest_s3():
    S3 = symmetric(3)
    w0 = S3.permutation((3, 2, 1))
    phi = cd_index(bruhat_interval(S3.identity, w0))
    assert phi == Cd({"cc": 1}) and phi.leq(boolean_cd(3))


def test_general_interval_counterexample():
    phi, bound = general_interval_counterexample()
    assert phi == Cd({"cc": 1, "d": 2}) and bound == Cd({"cc": 1, "d": 1})
    assert not phi.leq(bound)


def test_dual_stacked_bound_s4(S4):
    pairs = [(u, w, cd_index(S4.interval(u, w))) for u, w in S4.pairs() if u.length == 1 and w.length == 4]
    report = check_dual_stacked_bound(pairs, 2, 1, "rank-3 intervals of S_4 with l(u) = 1")
    assert report.status == "all_pass" and report.checked == len(pairs) > 0


def test_dual_stacked_bound_self_and_simplex():
    P = dual_stacked_interval(2, 1)
    u, w = P.labels[P.bottom], P.labels[P.top]
    assert check_dual_stacked_bound([(u, w, cd_index(P))], 2, 1, "self").status == "all_pass"
    for d in range(1, 4):
        assert cd_index(boolean_lattice(d + 1)) == cd_index(dual_stacked_interval(d, 0))


def test_dual_stacked_bound_rejects_wrong_lengths():
    S3 = symmetric(3)
    with pytest.raises(ValueError):
        check_dual_stacked_bound([(S3.identity, S3.generator(1), Cd.one())], 2, 1, "bad")


def test_lower_interval_span_rank_runs():
    rank, dim = lower_interval_span_rank(symmetric(4), 3)
    assert 1 <= rank <= dim == 2


def test_report_json_shape():
    report = check_boolean_bound(symmetric(3)).to_dict()
    assert set(report) == {"ab_bound", "cd_bound", "general_interval_counterexample_fails_cd_bound"}
    assert report["ab_bound"]["status"] == "all_pass"
