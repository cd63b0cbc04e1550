import pytest
from hypothesis import given, settings, strategies as st

from combassoc.avoiders import (CAS3_NUMERATOR, brute_count_avoiders, build_avoider_automaton,
                                count_avoiders, fragments, hilbert_closed_form)
from combassoc.congruence import ResourceCapExceeded
from combassoc.series import CoefficientSeries, poly_mul, series_div
from combassoc.trees import LEAF, catalan, enumerate_trees, iter_trees, left_comb

import oracles

CAS3 = [1, 1, 2, 4, 8, 14, 20, 19, 16, 14, 14, 15, 16, 17]


def pattern_sets(max_degree=4, max_size=3):
    pat = st.integers(1, max_degree).flatmap(lambda d: st.sampled_from(enumerate_trees(d)))
    return st.lists(pat, min_size=1, max_size=max_size, unique=True)


def test_left_comb_2_leaves_right_combs():
    auto = build_avoider_automaton([left_comb(2)])
    assert count_avoiders(auto, 10) == [1] * 10
    assert brute_count_avoiders([left_comb(2)], 8) == [1] * 8


def test_left_comb_3_counts():
    # oracle: direct scan of the 14 trees of arity 5
    arity5 = [oracles.from_word(t) for t in enumerate_trees(4)]
    lc3 = oracles.from_word(left_comb(3))
    assert sum(oracles.avoids(t, [lc3]) for t in arity5) == 9
    assert count_avoiders(build_avoider_automaton([left_comb(3)]), 5) == [1, 1, 2, 4, 9]


def test_no_patterns_gives_catalan():
    assert count_avoiders(build_avoider_automaton([]), 12) == [catalan(n) for n in range(12)]
    assert brute_count_avoiders([], 7) == [catalan(n) for n in range(7)]


def test_eleven_rule_automaton(cas3_rules):
    auto = build_avoider_automaton(cas3_rules.lhs)
    assert count_avoiders(auto, 14) == CAS3
    assert count_avoiders(auto, 20)[20] == 23
    assert build_avoider_automaton(cas3_rules.lhs).explore() == 422
    assert len(auto.closure) == 31


def test_automaton_rebuild_is_identical(cas3_rules):
    a = build_avoider_automaton(cas3_rules.lhs)
    b = build_avoider_automaton(list(reversed(cas3_rules.lhs)))
    a.explore(), b.explore()
    assert a.table() == b.table()


def test_automaton_accepts_exactly_avoiders(cas3_rules):
    auto = build_avoider_automaton(cas3_rules.lhs)
    pats = [oracles.from_word(p) for p in cas3_rules.lhs]
    for t in iter_trees(7):
        assert auto.accepts(t) == oracles.avoids(oracles.from_word(t), pats)
        assert auto.accepts(t) == cas3_rules.is_normal(t)


def test_brute_matches_automaton_for_eleven_rules(cas3_rules):
    assert brute_count_avoiders(cas3_rules.lhs, 11) == count_avoiders(build_avoider_automaton(cas3_rules.lhs), 11)


@settings(max_examples=25, deadline=None)
@given(pattern_sets())
def test_oracle_equivalence_random_patterns(patterns):
    assert count_avoiders(build_avoider_automaton(patterns), 9) == brute_count_avoiders(patterns, 9)


def test_fragments():
    assert fragments([left_comb(2)]) == {LEAF, "200", "22000"}
    with pytest.raises(ValueError):
        build_avoider_automaton([LEAF])


def test_brute_cap():
    with pytest.raises(ResourceCapExceeded):
        brute_count_avoiders([left_comb(3)], 15)


def test_hilbert_closed_form_examples():
    assert hilbert_closed_form(8) == [1, 1, 2, 4, 8, 14, 20, 19]
    # hand convolution: coefficient of t^n is sum over k of (n - k) * p_k
    for n in (7, 8):
        assert hilbert_closed_form(n)[n] == sum((n - k) * p for k, p in enumerate(CAS3_NUMERATOR) if k < n)
    assert hilbert_closed_form(11)[11] == 14
    assert hilbert_closed_form(50)[50] == 53
    assert hilbert_closed_form(14) == CAS3


def test_hilbert_tail_is_linear():
    h = hilbert_closed_form(50)
    assert all(h[n] == n + 3 for n in range(11, 51))


def test_series_helpers():
    # (1 - t)^-2 = 1 + 2t + 3t^2 + ...
    assert series_div([1], [1, -2, 1], 6) == [1, 2, 3, 4, 5, 6]
    assert poly_mul([1, -1], [1, 1, 1, 1], 4) == [1, 0, 0, 0]
    assert poly_mul(series_div(CAS3_NUMERATOR, [1, -2, 1], 20), [1, -2, 1], 20)[:12] == list(CAS3_NUMERATOR)
    with pytest.raises(ValueError):
        series_div([1], [2, 1], 3)


def test_coefficient_series():
    s = CoefficientSeries([1, 1, 2])
    assert s[3] == 2 and len(s) == 3 and s == [1, 1, 2]
    with pytest.raises(IndexError):
        s[0]
    with pytest.raises(TypeError):
        CoefficientSeries([1.0])
