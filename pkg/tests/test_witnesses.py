import random
from fractions import Fraction as F

import pytest

from lineorders.pingpong import from_interleaved_points, verify_certificate
from lineorders.plhomeo import PLHomeo
from lineorders.witnesses import (
    IntertwinedPair,
    SearchExhausted,
    build_certificate,
    certificate_for,
    gen_intertwined_pair,
    neighbourhood_radius,
    no_law_witness,
    zigzag,
)
from lineorders.words import ReducedWord, engel, random_word, syllable_normal_form, word
from oracles import apply_letters, from_plhomeo, parse_letters


def all_up(fixed, slope=2):
    """Supported on [0, 1], fixing exactly 0, ``fixed`` and 1, pushing up on every gap."""
    pts = [F(0)] + list(fixed) + [F(1)]
    nodes = [(F(0), F(0))]
    for u, v in zip(pts, pts[1:]):
        L = v - u
        nodes += [(u + L / (slope + 1), u + slope * L / (slope + 1)), (v, v)]
    return PLHomeo.supported_on([x for x, _ in nodes], [y for _, y in nodes])


def test_zigzag_fixes_listed_points_only():
    z = zigzag([F(1, 3), F(2, 3)])
    fs = z.fixed_sets()
    assert [p.point for p in fs.isolated] == [F(1, 3), F(2, 3)]
    assert [p.kind for p in fs.isolated] == ["attracting", "repelling"]
    assert z(F(-5)) == -5 and z(F(7)) == 7


def test_pair_k1():
    pair = gen_intertwined_pair(1)
    assert pair.p == (F(1, 4), F(1, 2), F(3, 4))
    assert [x for x in (p.point for p in pair.g.fixed_sets().isolated) if 0 < x < 1] == list(pair.p)
    assert pair.problems() == []


def test_pair_k2_intertwined():
    pair = gen_intertwined_pair(2)
    assert len(pair.p) == len(pair.q) == 5
    merged = [v for pq in zip(pair.p, pair.q) for v in pq]
    assert merged == sorted(merged)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_pairs_satisfy_invariants(k):
    pair = gen_intertwined_pair(k)
    assert pair.problems() == []
    for h in (pair.f, pair.g):
        assert h(F(-1)) == -1 and h(F(2)) == 2
    assert not set(pair.p) & {p.point for p in pair.f.fixed_sets().isolated}


def test_radius_is_quarter_of_minimal_gap():
    for k in (1, 3):
        assert neighbourhood_radius(gen_intertwined_pair(k)) == F(1, 16 * (k + 1))


@pytest.mark.parametrize("k", [1, 3])
def test_certificate_power_is_minimal(k):
    pair = gen_intertwined_pair(k)
    c = build_certificate(pair)
    assert 1 <= c.power <= 64
    assert verify_certificate(c).ok
    if c.power > 1:
        r = neighbourhood_radius(pair)
        prev = from_interleaved_points(pair.f ** (c.power - 1), pair.g ** (c.power - 1), pair.p, pair.q, r)
        assert not verify_certificate(prev).ok


def test_tampered_pair_never_certifies():
    # f also fixes the middle p point, so no power of f can move A_1 into B_1
    pair = gen_intertwined_pair(1)
    bad = IntertwinedPair(all_up(sorted(pair.q + pair.p[1:2])), pair.g, pair.p, pair.q, 1)
    probs = bad.problems()
    assert any("not transversal" in msg for msg in probs)
    assert "f and g share a fixed point" in probs
    with pytest.raises(SearchExhausted):
        build_certificate(bad, max_power=8)


def test_no_law_examples():
    wit = no_law_witness(word("a b a^-1 b^-1"))
    assert wit.k == 3
    assert wit.moved_to != wit.x
    e4 = no_law_witness(engel(word("a"), word("b"), 4))
    assert e4.moved_to != e4.x
    power = no_law_witness(word("a^10"))
    assert power.k == 1 and power.moved_to != power.x
    bpow = no_law_witness(word("b^3"))
    assert bpow.moved_to != bpow.x


def test_no_law_report_fields():
    r = no_law_witness(word("a^-1 b a^2")).report()
    assert set(r) == {"word", "two_letter_word", "k", "N", "x", "W(x)"}


def test_no_law_for_three_letter_word():
    x = [ReducedWord.generator(i, 3) for i in range(3)]
    w = x[0] * x[1] * x[2] * ~x[0]
    wit = no_law_witness(w)
    f, g = from_plhomeo(wit.certificate.f), from_plhomeo(wit.certificate.g)
    two = parse_letters(str(wit.two_letter))
    assert apply_letters(two, [f, g], wit.x) == wit.moved_to != wit.x


def test_no_law_random_words_small_k():
    rng = random.Random(3)
    for k in (1, 2):
        c = certificate_for(k)
        f, g = from_plhomeo(c.f), from_plhomeo(c.g)
        done = 0
        while done < 20:
            w = random_word(rng, rng.randint(1, 9))
            if w.syllable_count(0) == 0 or syllable_normal_form(w).k != k:
                continue
            wit = no_law_witness(w)
            assert apply_letters(w.letters(), [f, g], wit.x) == wit.moved_to != wit.x
            done += 1
