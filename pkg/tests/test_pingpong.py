import json
import random
from fractions import Fraction as F

import pytest

from lineorders.exact import INF
from lineorders.pingpong import (
    CertificateError,
    IntervalSet,
    NotIntertwined,
    OverlappingNeighborhoods,
    PingPongCertificate,
    SyllableOverflow,
    from_interleaved_points,
    verify_certificate,
    word_image,
)
from lineorders.plhomeo import PLHomeo
from lineorders.witnesses import certificate_for
from lineorders.words import engel, random_word, syllable_normal_form, word
from oracles import apply_letters, from_plhomeo

T = PLHomeo.translation(1)


def translation_cert(B1=None, A1=None):
    A1 = A1 or IntervalSet([(F(-1, 4), F(1, 4))])
    B1 = B1 or IntervalSet([(-INF, F(-3, 4)), (F(3, 4), INF)])
    return PingPongCertificate(T, T, (A1,), (B1,))


def scaled_translation_cert(t):
    t = F(t)
    return PingPongCertificate(
        PLHomeo.translation(t), PLHomeo.translation(t),
        (IntervalSet([(-t / 4, t / 4)]),), (IntervalSet([(-INF, -3 * t / 4), (3 * t / 4, INF)]),),
    )


def doubling_cert():
    d = PLHomeo.affine(2)
    return PingPongCertificate(d, d, (IntervalSet([(1, F(3, 2))]),), (IntervalSet([(0, F(3, 4)), (2, INF)]),))


def fixture_certificates():
    certs = [translation_cert(), scaled_translation_cert(2), scaled_translation_cert(F(1, 2)), doubling_cert()]
    certs += [certificate_for(k) for k in range(1, 7)]
    return certs


def interval_inside(lo, hi, S):
    return any(a <= lo and hi <= b for a, b in S.components)


def brute_force_holds(c, n_max=50):
    """f^n(A_i) in B_i and g^n(B_i) in A_{i+1} for 1 <= |n| <= n_max, by direct interpolation."""
    f, g = from_plhomeo(c.f), from_plhomeo(c.g)
    pairs = [(f, c.A[i], c.B[i]) for i in range(c.k)] + [(g, c.B[i], c.A[i + 1]) for i in range(c.k - 1)]
    for h, src, dst in pairs:
        for lo, hi in src.components:
            if lo == -INF or hi == INF:
                return None     # unbounded sources are not brute-forced
            for step in (h, h.inverse()):
                x, y = lo, hi
                for _ in range(n_max):
                    x, y = step(x), step(y)
                    if not interval_inside(x, y, dst):
                        return False
    return c.A[0].isdisjoint(c.B[-1])


def test_interval_set_normalizes():
    s = IntervalSet([(2, 3), (0, 1), (1, F(3, 2))])
    assert s.components == ((0, F(3, 2)), (2, 3))
    assert IntervalSet.from_json([["-inf", "0"], ["1", "inf"]]).components == ((-INF, 0), (1, INF))
    with pytest.raises(CertificateError):
        IntervalSet([(1, 0)])


def test_translation_certificate_examples():
    assert verify_certificate(translation_cert()).ok
    bad = verify_certificate(translation_cert(B1=IntervalSet([(F(3, 4), 10)])))
    assert not bad.ok
    assert (bad.failure.map, bad.failure.index, bad.failure.component) == ("f", 1, 0)


def test_witness_certificate_k2_verifies():
    assert verify_certificate(certificate_for(2)).ok


@pytest.mark.parametrize("c", fixture_certificates(), ids=lambda c: f"k{c.k}")
def test_verifier_is_sound_against_brute_force(c):
    assert verify_certificate(c).ok
    assert brute_force_holds(c) is not False


def test_broken_certificates_are_localized():
    c2 = certificate_for(2)
    # B_2 shrunk to B_1: f^n(A_2) escapes
    shrunk_b = PingPongCertificate(c2.f, c2.g, c2.A, (c2.B[0], c2.B[0]))
    fail = verify_certificate(shrunk_b).failure
    assert (fail.map, fail.index) == ("f", 2)
    # A_2 shrunk to A_1: g^n(B_1) escapes
    shrunk_a = PingPongCertificate(c2.f, c2.g, (c2.A[0], c2.A[0]), c2.B)
    fail = verify_certificate(shrunk_a).failure
    assert (fail.map, fail.index) == ("g", 1)
    # hull checks pass, but A_1 meets B_1
    overlap = translation_cert(B1=IntervalSet([(-INF, F(-3, 4)), (F(-1, 4), INF)]))
    fail = verify_certificate(overlap).failure
    assert fail.map == "disjoint"
    # second component of B_1 in the k = 1 witness is removed
    c1 = certificate_for(1)
    half = PingPongCertificate(c1.f, c1.g, c1.A, (IntervalSet(c1.B[0].components[:1]),))
    fail = verify_certificate(half).failure
    assert (fail.map, fail.index, fail.component) == ("f", 1, 0)
    assert brute_force_holds(half) is False


def test_enlarging_final_target_keeps_ok():
    for c in fixture_certificates():
        grown = IntervalSet((lo - F(1, 10**4), hi + F(1, 10**4)) for lo, hi in c.B[-1])
        bigger = PingPongCertificate(c.f, c.g, c.A, c.B[:-1] + (grown,), c.power)
        assert verify_certificate(bigger).ok


def test_certificate_json_round_trip():
    c = certificate_for(2)
    text = json.dumps(c.to_json())
    back = PingPongCertificate.from_json(json.loads(text))
    assert back == c
    assert json.dumps(back.to_json()) == text
    with pytest.raises(CertificateError):
        PingPongCertificate.from_json({"f": c.f.to_json()})


def test_word_image_examples():
    img = word_image(translation_cert(), word("a^3"))
    assert (img.x, img.image) == (0, 3)
    assert img.image in translation_cert().B[0]
    with pytest.raises(SyllableOverflow):
        word_image(translation_cert(), word("a b a^-1 b^-1"))


def test_word_image_engel2_with_k5():
    c = certificate_for(5)
    w = engel(word("a"), word("b"), 2)
    assert syllable_normal_form(w).k == 5
    img = word_image(c, w)
    assert all(s.ok for s in img.chain)
    assert img.image in c.B[4]
    f, g = from_plhomeo(c.f), from_plhomeo(c.g)
    assert apply_letters(w.letters(), [f, g], img.x_original) == img.image_original != img.x_original


def test_word_image_rejects_broken_certificate():
    with pytest.raises(CertificateError):
        word_image(translation_cert(B1=IntervalSet([(F(3, 4), 10)])), word("a"))


def test_word_image_agrees_with_direct_evaluation():
    c = certificate_for(2)
    f, g = from_plhomeo(c.f), from_plhomeo(c.g)
    rng = random.Random(5)
    done = 0
    while done < 100:
        w = random_word(rng, rng.randint(1, 10))
        if w.syllable_count(0) == 0 or syllable_normal_form(w).k > 2:
            continue
        img = word_image(c, w, check=False)
        y = apply_letters(w.letters(), [f, g], img.x_original)
        assert y == img.image_original != img.x_original
        done += 1


def test_interleaved_points_example():
    p = (0, F(1, 2), 1)
    q = (F(1, 4), F(3, 4), F(9, 8))
    c = from_interleaved_points(T, T, p, q, F(1, 16))
    assert c.A[0].components == ((F(7, 16), F(9, 16)),)
    assert c.B[0].components == ((F(3, 16), F(5, 16)), (F(11, 16), F(13, 16)))


def test_interleaved_points_errors():
    with pytest.raises(NotIntertwined):
        from_interleaved_points(T, T, (0, F(1, 2), 1), (F(1, 4), F(1, 8), F(9, 8)), F(1, 100))
    with pytest.raises(NotIntertwined):
        from_interleaved_points(T, T, (0, 1), (F(1, 2), 2), F(1, 100))
    with pytest.raises(OverlappingNeighborhoods):
        from_interleaved_points(T, T, (0, F(1, 2), 1), (F(1, 4), F(3, 4), F(9, 8)), F(1, 8))
