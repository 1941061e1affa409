import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lineorders.words import (
    NotMixedSign,
    PureBPower,
    ReducedWord,
    WordError,
    ball_size,
    decompose_for_construction,
    engel,
    enumerate_ball,
    law_to_two_letters,
    reduce,
    syllable_normal_form,
    word,
)
from oracles import engel_letters, naive_reduce, parse_letters

A, B = word("a"), word("b")
raw_letters = st.lists(st.sampled_from([1, -1, 2, -2]), max_size=40)

# frozen from the naive stack reduction in oracles.py
ENGEL_LENGTHS = {1: 4, 2: 8, 3: 16, 4: 32}


def test_reduce_cancels_adjacent_pair():
    assert reduce([1, 2, -2, 1]) == word("a^2")


def test_parse_and_print_round_trip():
    w = word("a^-1  b a^2")
    assert str(w) == "a^-1 b a^2"
    assert word(str(w)) == w
    assert word("e").is_identity()
    assert str(ReducedWord.identity()) == "e"


@pytest.mark.parametrize("bad", ["a^", "A^2", "a^1.5", "ab^-", "a+b"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(WordError):
        word(bad)


def test_letter_e_is_identity_inside_words():
    assert word("a e a^-1").is_identity()


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_engel_matches_naive_expansion(n):
    w = engel(A, B, n)
    assert w.letters() == naive_reduce(engel_letters(n))
    assert len(w) == ENGEL_LENGTHS[n]


def test_engel_examples():
    assert engel(A, B, 1) == word("a b a^-1 b^-1")
    assert engel(A, A, 1).is_identity()
    assert engel(A, B, 2) == word("a b a^-1 b a b^-1 a^-1 b^-1")


def test_law_to_two_letters_examples():
    x = {i: ReducedWord.generator(i, 3) for i in range(3)}
    assert law_to_two_letters(x[0]) == B
    comm = x[0] * x[1] * ~x[0] * ~x[1]
    assert law_to_two_letters(comm) == word("b a^-1 b a b^-1 a^-1 b^-1 a")
    assert law_to_two_letters(x[1] ** 3) == word("a^-1 b^3 a")
    with pytest.raises(WordError):
        law_to_two_letters(ReducedWord.identity(3))


def test_syllable_form_examples():
    f = syllable_normal_form(word("a b a^-1 b^-1"))
    assert f.conjugator_power == 1
    assert f.conjugated == word("a^2 b a^-1 b^-1 a^-1")
    assert f.k == 3
    g = syllable_normal_form(word("a^5"))
    assert (g.k, g.a_exponents, g.conjugator_power) == (1, (5,), 0)
    with pytest.raises(PureBPower):
        syllable_normal_form(word("b^2"))


def test_syllable_form_round_trips_on_ball_8():
    a = ReducedWord.generator(0)
    for w in enumerate_ball(8):
        if w.is_identity():
            continue
        try:
            f = syllable_normal_form(w)
        except PureBPower:
            assert all(g == 1 for g, _ in w.syllables)
            continue
        p = f.conjugator_power
        assert a ** (-p) * f.conjugated * a ** p == w
        assert f.reassemble() == w
        assert f.conjugated.syllables[0][0] == 0 and f.conjugated.syllables[-1][0] == 0


def test_decompose_examples():
    d = decompose_for_construction(word("a^-1 b a^2"))
    assert (d.prefix.is_identity(), d.n, d.suffix, d.swapped) == (True, 1, word("b a^2"), False)
    d = decompose_for_construction(word("a b a^-1 b^-1"))
    assert d.swapped and d.n == 1 and d.suffix.is_identity()
    assert d.prefix == word("b a b^-1")
    assert d.reassemble() == word("a b a^-1 b^-1")
    with pytest.raises(NotMixedSign):
        decompose_for_construction(word("a b"))


def test_decompose_round_trips_on_random_words():
    rng = random.Random(11)
    seen = 0
    while seen < 500:
        letters = naive_reduce([rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(2, 16))])
        w = reduce(letters)
        if not w.is_mixed_sign():
            continue
        seen += 1
        d = decompose_for_construction(w)
        assert d.reassemble() == w
        assert d.suffix.is_identity() or d.suffix.is_positive()
        if not d.suffix.is_identity():
            assert d.suffix.syllables[0][0] == 1


@pytest.mark.parametrize("m", [1, 2, 3])
def test_ball_sizes(m):
    for R in range(7 if m < 3 else 5):
        expected = 1 + sum(2 * m * (2 * m - 1) ** (l - 1) for l in range(1, R + 1))
        ball = enumerate_ball(R, m)
        assert len(ball) == expected == ball_size(R, m)
        assert len(set(ball)) == len(ball)


def test_ball_examples_and_order():
    assert enumerate_ball(0) == [ReducedWord.identity()]
    assert [str(w) for w in enumerate_ball(1)] == ["e", "a", "a^-1", "b", "b^-1"]
    assert len(enumerate_ball(3)) == 53
    keys = [w.shortlex_key() for w in enumerate_ball(4)]
    assert keys == sorted(keys)


@given(raw_letters)
def test_reduce_agrees_with_stack_reduction(letters):
    assert reduce(letters).letters() == naive_reduce(letters)


@given(raw_letters)
def test_reduce_is_idempotent(letters):
    w = reduce(letters)
    assert reduce(w.letters()) == w


@settings(max_examples=1000)
@given(raw_letters)
def test_word_times_inverse_is_identity(letters):
    w = reduce(letters)
    assert (w * ~w).is_identity()
    assert (~w * w).is_identity()


@given(raw_letters, raw_letters)
def test_product_is_concatenation_then_reduction(u, v):
    assert (reduce(u) * reduce(v)).letters() == naive_reduce(u + v)


@given(raw_letters)
def test_text_round_trip(letters):
    w = reduce(letters)
    assert word(str(w)) == w
    assert naive_reduce(parse_letters(str(w))) == w.letters()
