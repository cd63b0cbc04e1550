import itertools

import pytest
from hypothesis import given, strategies as st

from combassoc.trees import (LEAF, MalformedEncoding, arity, catalan, children, compare_lex, compose,
                             compose_at, degree, enumerate_trees, is_valid_word, iter_trees, left_comb,
                             node, offset_of, parse_prefix_word, path_of, prefix_word, right_comb,
                             subtree_end, subtree_ends)

import oracles


def trees(max_degree=6):
    return st.integers(0, max_degree).flatmap(lambda d: st.sampled_from(enumerate_trees(d)))


def test_degree_examples():
    assert degree(LEAF) == 0
    assert degree(node(LEAF, LEAF)) == 1
    assert degree(left_comb(3)) == 3


def test_prefix_word_examples():
    assert prefix_word(LEAF) == "0"
    assert prefix_word(left_comb(2)) == "22000"
    assert prefix_word(right_comb(3)) == "2020200"
    assert prefix_word(left_comb(3)) == "2220000"


def test_parse_examples():
    assert parse_prefix_word("0") == LEAF
    assert parse_prefix_word("20200") == right_comb(2)


@pytest.mark.parametrize("bad", ["2200", "", "00", "020", "2002", "2x0", "22000 "])
def test_parse_rejects(bad):
    with pytest.raises(MalformedEncoding):
        parse_prefix_word(bad)


def test_compare_lex_examples():
    assert compare_lex("22000", "20200") == 1
    assert compare_lex("2020200", "2020200") == 0
    assert compare_lex("0", "20200") == -1


def test_compose_examples():
    c1 = node(LEAF, LEAF)
    assert compose_at(c1, 1, c1) == left_comb(2)
    assert compose_at(c1, 2, c1) == right_comb(2)
    for t in enumerate_trees(3):
        assert compose_at(LEAF, 1, t) == t
    with pytest.raises(IndexError):
        compose_at(c1, 3, c1)
    with pytest.raises(IndexError):
        compose_at(c1, 0, c1)


def test_combs():
    assert left_comb(1) == right_comb(1) == node(LEAF, LEAF)
    for d in range(2, 12):
        assert compare_lex(left_comb(d), right_comb(d)) == 1
        assert degree(left_comb(d)) == degree(right_comb(d)) == d
        # iterated grafting in first / last position
        lc, rc = node(LEAF, LEAF), node(LEAF, LEAF)
        for _ in range(d - 1):
            lc = compose_at(lc, 1, node(LEAF, LEAF))
            rc = compose_at(rc, arity(rc), node(LEAF, LEAF))
        assert (lc, rc) == (left_comb(d), right_comb(d))
    with pytest.raises(ValueError):
        left_comb(0)
    with pytest.raises(ValueError):
        right_comb(0)


def test_enumerate_small():
    assert enumerate_trees(0) == (LEAF,)
    assert len(enumerate_trees(3)) == 5
    assert enumerate_trees(2) == ("20200", "22000")


@pytest.mark.parametrize("d", range(0, 14))
def test_enumeration_counts_follow_catalan_recurrence(d):
    # oracle: the recurrence over independently enumerated smaller degrees
    expected = 1 if d == 0 else sum(len(enumerate_trees(k)) * len(enumerate_trees(d - 1 - k)) for k in range(d))
    assert len(enumerate_trees(d)) == expected == catalan(d) == oracles.catalan_closed(d)


def test_enumerate_13_has_742900_trees():
    assert len(enumerate_trees(13)) == 742900


@pytest.mark.parametrize("d", range(0, 9))
def test_enumeration_sorted_unique_and_matches_oracle(d):
    ts = enumerate_trees(d)
    assert all(compare_lex(a, b) == -1 for a, b in zip(ts, ts[1:]))
    assert set(ts) == {oracles.to_word(t) for t in oracles.trees_of_arity(d + 1)}


def test_round_trip_and_invariants_up_to_degree_10():
    for t in iter_trees(10):
        assert parse_prefix_word(prefix_word(t)) == t
        assert len(prefix_word(t)) == 2 * degree(t) + 1
        assert arity(t) == degree(t) + 1


def test_round_trip_against_tuple_oracle():
    for t in iter_trees(7):
        assert oracles.to_word(oracles.from_word(t)) == t


def test_order_laws_on_degree_8():
    ts = list(enumerate_trees(8))
    for a, b in itertools.product(ts[:120], ts[-120:]):
        assert compare_lex(a, b) == -compare_lex(b, a)
        assert (compare_lex(a, b) == 0) == (a == b)


@given(trees(8), trees(8), trees(8))
def test_compare_lex_transitive(a, b, c):
    if compare_lex(a, b) <= 0 and compare_lex(b, c) <= 0:
        assert compare_lex(a, c) <= 0


@given(st.lists(st.sampled_from("02"), max_size=12))
def test_compare_lex_matches_symbolwise_definition(symbols):
    w = "".join(symbols)
    for v in ("", "0", "2", "20", "0202", "2220000"):
        # first differing symbol decides; a proper prefix is smaller
        for x, y in zip(w, v):
            if x != y:
                expect = -1 if x == "0" else 1
                break
        else:
            expect = (len(w) > len(v)) - (len(w) < len(v))
        assert compare_lex(w, v) == expect


@given(st.text(alphabet="02", max_size=15))
def test_validity_predicate(w):
    # oracle: the counting characterization
    zeros, twos, ok = 0, 0, True
    for k, ch in enumerate(w):
        if k < len(w) and zeros > twos:
            ok = False
        zeros += ch == "0"
        twos += ch == "2"
    ok = ok and zeros == twos + 1
    assert is_valid_word(w) == ok


def test_grafting_associativity_exhaustive():
    small = list(iter_trees(2))
    for t in small:
        for s in small:
            for r in small:
                for i in range(1, arity(t) + 1):
                    ts = compose_at(t, i, s)
                    # nested: graft r into a leaf of s after it sits in t
                    for j in range(1, arity(s) + 1):
                        assert compose_at(ts, i + j - 1, r) == compose_at(t, i, compose_at(s, j, r))
                    # parallel: graft into a different leaf of t
                    for j in range(1, arity(t) + 1):
                        if j < i:
                            assert compose_at(ts, j, r) == compose_at(compose_at(t, j, r), i + arity(r) - 1, s)
                        elif j > i:
                            assert compose_at(ts, j + arity(s) - 1, r) == compose_at(compose_at(t, j, r), i, s)


@given(trees(5), trees(3))
def test_compose_arity(t, s):
    for i in range(1, arity(t) + 1):
        assert arity(compose_at(t, i, s)) == arity(t) + arity(s) - 1


def test_full_composition():
    t = node(LEAF, LEAF)
    assert compose(t, [left_comb(1), LEAF]) == left_comb(2)
    with pytest.raises(ValueError):
        compose(t, [LEAF])


@given(trees(7))
def test_children_and_ends(t):
    ends = subtree_ends(t)
    assert all(ends[i] == subtree_end(t, i) for i in range(len(t)))
    if t != LEAF:
        left, right = children(t)
        assert node(left, right) == t


@given(trees(7), st.data())
def test_paths_and_offsets(t, data):
    offs = [i for i, ch in enumerate(t) if ch == "2"]
    paths = oracles.positions(oracles.from_word(t))
    assert [path_of(t, o) for o in offs] == paths
    assert [offset_of(t, p) for p in paths] == offs
