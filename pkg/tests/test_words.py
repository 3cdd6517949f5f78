"""Reduced words, ball enumeration, and the five-class decomposition."""

import pytest
from hypothesis import given, strategies as st

from paradoxlab.errors import ResourceLimitError
from paradoxlab.words import (
    IDENTITY,
    Letter,
    PrefixClass,
    ReducedWord,
    ball,
    ball_size,
    brute_force_ball,
    check_split,
    concat,
    invert,
    prefix_class,
    reduce,
    verify_f2_paradox,
)

letter_lists = st.lists(st.sampled_from(list(Letter)), max_size=12)


# -- structure and reduction -------------------------------------------------


def test_letter_inverses_pair_up():
    assert Letter.A.inverse() is Letter.A_INV
    assert Letter.B.inverse() is Letter.B_INV
    for letter in Letter:
        assert letter.inverse().inverse() is letter


def test_unreduced_construction_rejected():
    with pytest.raises(ValueError):
        ReducedWord((Letter.A, Letter.A_INV))


def test_string_roundtrip():
    w = ReducedWord.from_string("abAB")
    assert str(w) == "abAB"
    assert ReducedWord.from_string("aA") is not None  # reduces, does not raise
    assert ReducedWord.from_string("aA").is_identity


@given(letter_lists)
def test_reduce_output_is_reduced(letters):
    w = reduce(letters)
    for x, y in zip(w.letters, w.letters[1:]):
        assert x != y.inverse()


@given(letter_lists, letter_lists)
def test_concat_agrees_with_full_reduction(s, t):
    # Seam-only cancellation must match re-reducing the whole string.
    assert concat(reduce(s), reduce(t)) == reduce(list(s) + list(t))


@given(letter_lists)
def test_inverse_laws(letters):
    w = reduce(letters)
    assert invert(invert(w)) == w
    assert concat(w, invert(w)) == IDENTITY
    assert concat(invert(w), w) == IDENTITY


def test_pow_matches_repeated_concat():
    w = ReducedWord.from_string("ab")
    assert w**0 == IDENTITY
    assert w**2 == concat(w, w)
    assert w**-1 == invert(w)
    assert w**-2 == invert(concat(w, w))


# -- ball enumeration --------------------------------------------------------


def test_ball_sizes_match_closed_form():
    for n in range(7):
        assert len(ball(n)) == ball_size(n)
    assert [ball_size(n) for n in range(1, 7)] == [5, 17, 53, 161, 485, 1457]


def test_ball_matches_brute_force_oracle():
    for n in range(5):
        assert frozenset(ball(n)) == brute_force_ball(n)


def test_ball_is_length_lex_ordered():
    words = ball(4)
    lengths = [len(w) for w in words]
    assert lengths == sorted(lengths)
    assert len(set(words)) == len(words)


def test_ball_cap_enforced():
    with pytest.raises(ResourceLimitError):
        ball(15)
    with pytest.raises(ValueError):
        ball(-1)


@given(letter_lists)
def test_short_reductions_land_in_the_ball(letters):
    w = reduce(letters)
    if len(w) <= 4:
        assert w in frozenset(ball(4))


# -- prefix classes and the decomposition ------------------------------------


def test_prefix_class_census_depth_4():
    counts = {c: 0 for c in PrefixClass}
    for w in ball(4):
        counts[prefix_class(w)] += 1
    assert counts[PrefixClass.IDENTITY] == 1
    assert all(counts[c] == 40 for c in PrefixClass if c is not PrefixClass.IDENTITY)


def test_verify_f2_paradox_depth_3():
    report = verify_f2_paradox(3)
    assert report.passed
    assert not report.partition_violations
    assert report.split_a.checked == 53
    assert report.split_b.checked == 53


def test_verify_f2_paradox_rejects_bad_depth():
    with pytest.raises(ValueError):
        verify_f2_paradox(0)


def test_check_split_rejects_identity_class():
    with pytest.raises(ValueError):
        check_split(3, PrefixClass.IDENTITY, PrefixClass.W_A, ReducedWord.from_string("a"))


def test_corrupted_split_wrong_mover():
    bad = check_split(4, PrefixClass.W_A, PrefixClass.W_A_INV, ReducedWord.from_string("b"))
    assert not bad.passed
    assert bad.violations


def test_corrupted_split_wrong_piece():
    bad = check_split(4, PrefixClass.W_A, PrefixClass.W_B, ReducedWord.from_string("a"))
    assert not bad.passed


def test_corrupted_split_wrong_cover():
    bad = check_split(4, PrefixClass.W_B, PrefixClass.W_A_INV, ReducedWord.from_string("a"))
    assert not bad.passed
