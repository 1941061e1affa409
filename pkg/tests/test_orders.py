import random
from fractions import Fraction as F
from itertools import islice

import pytest

from lineorders.actions import NAMED_ACTIONS, abelian_pair, thompson_pair, translations
from lineorders.exact import rationals_by_height
from lineorders.orders import (
    ConjugatedOrder,
    DynOrder,
    agreement_radius,
    construct_violation,
    find_resilient_pair,
    is_W_order_on_ball,
    order_distance,
    resilient_chain,
)
from lineorders.plhomeo import PLHomeo
from lineorders.witnesses import certified_free_pair
from lineorders.words import NotMixedSign, enumerate_ball, random_word, word
from oracles import apply_letters, from_plhomeo, parse_letters

REFS = list(islice(rationals_by_height(), 60))


def oracle_compare(maps, u, v):
    """Lexicographic comparison of u(x), v(x) over the height-ordered rationals."""
    nm = [from_plhomeo(h) for h in maps]
    lu, lv = parse_letters(str(u)), parse_letters(str(v))
    for x in REFS:
        a, b = apply_letters(lu, nm, x), apply_letters(lv, nm, x)
        if a != b:
            return -1 if a < b else 1
    return 0


@pytest.fixture(scope="module")
def free_order():
    return DynOrder(certified_free_pair())


def test_compare_decided_at_first_refpoint():
    o = DynOrder(translations(1, 2))
    assert o.compare(word("a"), word("b")) == -1
    assert o.compare(word("b"), word("a")) == 1
    assert o.tiebreak_calls == 0
    # same map, different elements: only the tiebreak separates them
    assert o.compare_maps(word("a b"), word("b a")) == 0
    assert o.compare(word("a b"), word("b a")) != 0 and o.tiebreak_calls == 1


def test_compare_decided_at_later_refpoint():
    bump = PLHomeo.supported_on([0, 1, 3], [0, 2, 3])
    o = DynOrder((bump, PLHomeo.identity()), refpoints=[0])
    assert o.value(word("a"), 0) == 0
    assert o.compare(word("e"), word("a")) == -1
    assert o.is_positive(word("a"))


def test_equal_maps_go_to_tiebreak():
    t = PLHomeo.translation(1)
    o = DynOrder((t, t))
    s = o.compare(word("a"), word("b"))
    assert s in (-1, 1) and o.tiebreak_calls == 1 and o.uncertified_ties == 0
    assert s == o.tiebreak.compare(word("a"), word("b"))
    bare = DynOrder((t, t), tiebreak=None)
    assert bare.compare(word("a"), word("b")) == -1          # shortlex
    assert bare.uncertified_ties == 1


def test_order_matches_oracle_on_free_action(free_order):
    ball = enumerate_ball(2)
    for u in ball:
        for v in ball:
            assert free_order.compare(u, v) == oracle_compare(free_order.action, u, v) or u == v


def test_left_invariance_random_triples(free_order):
    rng = random.Random(8)
    for _ in range(200):
        u, v, w = (random_word(rng, rng.randint(0, 5)) for _ in range(3))
        assert free_order.compare(w * u, w * v) == free_order.compare(u, v)
    assert free_order.tiebreak_calls == 0


def test_ranks_agree_with_compare(free_order):
    ball = enumerate_ball(3)
    r = free_order.ranks(ball)
    for u in ball[:20]:
        for v in ball:
            assert (r[u] > r[v]) - (r[u] < r[v]) == free_order.compare(u, v)


@pytest.mark.parametrize("text", ["a^-1 b a", "a^-1 b a^2", "a b a^-1 b^-1", "b^-2 a b^3 a^-1", "a^-3 b^2 a^-1 b"])
def test_violation_holds_under_independent_evaluation(text):
    w = word(text)
    wit = construct_violation(w)
    f, g = from_plhomeo(wit.f), from_plhomeo(wit.g)
    assert f(F(0)) > 0 and g(F(0)) > 0
    assert apply_letters(parse_letters(text), [f, g], F(0)) < 0


def test_violation_examples():
    wit = construct_violation(word("a^-1 b a"))
    assert (wit.f0, wit.g0, wit.w0) == (3, F(1, 2), F(-31, 13))
    neg = construct_violation(word("a^-1 b^-1"))
    assert wit.holds() and neg.holds()
    assert neg.f == neg.g == PLHomeo.translation(1)
    with pytest.raises(NotMixedSign):
        construct_violation(word("a b"))


def test_violation_random_words():
    rng = random.Random(21)
    done = 0
    while done < 60:
        w = random_word(rng, rng.randint(2, 12))
        if not w.is_mixed_sign():
            continue
        wit = construct_violation(w)
        f, g = from_plhomeo(wit.f), from_plhomeo(wit.g)
        assert apply_letters(w.letters(), [f, g], F(0)) < 0 < min(f(F(0)), g(F(0)))
        done += 1


def test_check_w_examples():
    ab = DynOrder(abelian_pair())
    assert is_W_order_on_ball(ab, word("a^-1 b a"), 4) is None
    assert is_W_order_on_ball(ab, word("a b"), 5) is None
    w = word("a^-1 b a")
    o = construct_violation(w).order()
    assert is_W_order_on_ball(o, w, 1) == (word("a"), word("b"))
    with pytest.raises(ValueError):
        is_W_order_on_ball(ab, w, 0)


def test_conjugated_order(free_order):
    h = word("a b^-1")
    c = ConjugatedOrder(free_order, h)
    ball = enumerate_ball(2)
    for u in ball:
        for v in ball:
            assert c.compare(u, v) == free_order.compare(u * h, v * h)
    for w in ball:
        assert c.is_positive(w) == (free_order.compare(w * h, h) > 0)
    g = word("b a")
    assert all(c.compare(g * u, g * v) == c.compare(u, v) for u in ball for v in ball)


def test_distance_examples(free_order):
    assert order_distance(free_order, free_order, 4) == F(1, 5)
    flipped = ConjugatedOrder(DynOrder(translations(1, 2)), word("e"))
    other = DynOrder((PLHomeo.translation(-1), PLHomeo.translation(2)))
    assert order_distance(flipped, other, 4) == 1
    # x+1, x+7/5 against x+1, x+5/2: signs of p + s q first differ at a^2 b^-1
    near = DynOrder((PLHomeo.translation(1), PLHomeo.translation(F(5, 2))))
    assert agreement_radius(DynOrder(abelian_pair()), near, 5) == 2
    assert order_distance(DynOrder(abelian_pair()), near, 5) == F(1, 3)


def test_distance_is_ultrametric(free_order):
    hs = [word(t) for t in ["e", "a", "b", "a b", "b^-1 a^2", "a^-1 b a"]]
    orders = [ConjugatedOrder(free_order, h) for h in hs]
    d = {(i, j): order_distance(orders[i], orders[j], 3) for i in range(len(hs)) for j in range(len(hs))}
    for (i, j), dij in d.items():
        assert dij == d[j, i]
        for k in range(len(hs)):
            assert d[i, k] <= max(dij, d[j, k])


def test_resilient_examples():
    assert find_resilient_pair(DynOrder(abelian_pair()), 2) is None
    th = DynOrder(thompson_pair())
    assert find_resilient_pair(th, 2) is None
    wit = find_resilient_pair(th, 3, n_max=5)
    assert wit is not None and wit.failures() == []
    maps = thompson_pair()
    for n in (1, 5):
        fn, gn = wit.f ** n, wit.g ** n
        chain = [wit.h1, fn * wit.h1, fn * wit.h2, gn * wit.h1, gn * wit.h2, wit.h2]
        assert all(oracle_compare(maps, x, y) == -1 for x, y in zip(chain, chain[1:]))
    assert resilient_chain(th, wit.f, wit.g, wit.h1, wit.h2, 2)


def test_named_actions_build_orders():
    for name, make in NAMED_ACTIONS.items():
        o = DynOrder(make())
        assert o.compare(word("a"), word("a")) == 0


def test_ranks_with_equal_maps_match_compare():
    # commuting translations: every commutator shares the identity map
    o = DynOrder(translations(1, F(3, 2)), probe_depth=4)
    ball = enumerate_ball(4)
    r = o.ranks(ball)
    assert sorted(r.values()) == list(range(len(ball)))
    for u in ball[::7]:
        for v in ball:
            assert (r[u] > r[v]) - (r[u] < r[v]) == o.compare(u, v)
    assert o.tiebreak_calls > 0 and o.uncertified_ties == 0
