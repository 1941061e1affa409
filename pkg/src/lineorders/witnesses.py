"""PL pairs with intertwined transversal fixed points, and no-law witnesses built from them."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .pingpong import (
    CertificateError,
    PingPongCertificate,
    WordImage,
    from_interleaved_points,
    verify_certificate,
    word_image,
)
from .plhomeo import PLHomeo
from .words import PureBPower, ReducedWord, WordError, law_to_two_letters, syllable_normal_form

DEFAULT_MAX_POWER = 64


class SearchExhausted(RuntimeError):
    pass


def zigzag(fixed: Sequence[Fraction], first_sign: int = 1, slope: int = 2) -> PLHomeo:
    """PL map supported on [0, 1] fixing exactly 0, ``fixed`` and 1.

    The displacement sign alternates from gap to gap, starting with
    ``first_sign`` on ``(0, fixed[0])``.  On each gap the map has slope
    ``slope`` (or its inverse) at the left end and the inverse at the right end.
    """
    s = Fraction(slope)
    pts = [Fraction(0)] + [Fraction(x) for x in fixed] + [Fraction(1)]
    xs, ys = [pts[0]], [pts[0]]
    sgn = first_sign
    for u, v in zip(pts, pts[1:]):
        L = v - u
        if sgn > 0:
            xs.append(u + L / (s + 1))
            ys.append(u + s * L / (s + 1))
        else:
            xs.append(u + s * L / (s + 1))
            ys.append(u + L / (s + 1))
        xs.append(v)
        ys.append(v)
        sgn = -sgn
    return PLHomeo.supported_on(xs, ys)


@dataclass(frozen=True)
class IntertwinedPair:
    """``g`` fixes ``p``, ``f`` fixes ``q``, and p_1 < q_1 < p_2 < ... < q_{2k+1}."""

    f: PLHomeo
    g: PLHomeo
    p: tuple[Fraction, ...]
    q: tuple[Fraction, ...]
    k: int

    def problems(self) -> list[str]:
        """Violated invariants (empty when the pair is valid)."""
        out = []
        merged = [v for pair in zip(self.p, self.q) for v in pair]
        if len(self.p) != 2 * self.k + 1 or len(self.q) != 2 * self.k + 1:
            out.append("wrong number of points")
        if any(not (a < b) for a, b in zip(merged, merged[1:])):
            out.append("points not intertwined")
        for name, h, pts in (("g", self.g, self.p), ("f", self.f, self.q)):
            iso = {fp.point: fp for fp in h.fixed_sets().isolated}
            for x in pts:
                if x not in iso:
                    out.append(f"{x} is not an isolated fixed point of {name}")
                elif not iso[x].transversal:
                    out.append(f"fixed point {x} of {name} is not transversal")
        lo, hi = merged[0], merged[-1]
        fg = self.f.fixed_sets().within(lo, hi)
        gg = self.g.fixed_sets().within(lo, hi)
        if any(a <= d and c <= b for a, b in fg for c, d in gg):
            out.append("f and g share a fixed point")
        return out


def gen_intertwined_pair(k: int) -> IntertwinedPair:
    if k < 1:
        raise ValueError("k must be at least 1")
    p = tuple(Fraction(j, 2 * k + 2) for j in range(1, 2 * k + 2))
    q = tuple(x + Fraction(1, 4 * k + 4) for x in p)
    pair = IntertwinedPair(zigzag(q), zigzag(p), p, q, k)
    bad = pair.problems()
    if bad:
        raise AssertionError(f"generated pair is invalid: {bad}")
    return pair


def neighbourhood_radius(pair: IntertwinedPair) -> Fraction:
    merged = sorted(pair.p + pair.q)
    return min(b - a for a, b in zip(merged, merged[1:])) / 4


def build_certificate(pair: IntertwinedPair, max_power: int = DEFAULT_MAX_POWER) -> PingPongCertificate:
    """Smallest N such that the nested sets work for ``(f^N, g^N)``."""
    r = neighbourhood_radius(pair)
    fN, gN = pair.f, pair.g
    for N in range(1, max_power + 1):
        if N > 1:
            fN, gN = fN * pair.f, gN * pair.g
        cand = from_interleaved_points(fN, gN, pair.p, pair.q, r)
        if verify_certificate(cand).ok:
            return PingPongCertificate(fN, gN, cand.A, cand.B, N)
    raise SearchExhausted(f"no power N <= {max_power} gives a valid certificate for k = {pair.k}")


@lru_cache(maxsize=None)
def certificate_for(k: int) -> PingPongCertificate:
    return build_certificate(gen_intertwined_pair(k))


def certified_free_pair(k: int = 5) -> tuple[PLHomeo, PLHomeo]:
    """``(f^N, g^N)`` from the k-certificate: no nontrivial word whose conjugated
    syllable form has at most k syllables on ``a`` acts trivially."""
    c = certificate_for(k)
    return c.f, c.g


@dataclass(frozen=True)
class NoLawWitness:
    word: ReducedWord
    two_letter: ReducedWord
    k: int
    certificate: PingPongCertificate
    image: WordImage

    @property
    def N(self) -> int:
        return self.certificate.power

    @property
    def x(self) -> Fraction:
        return self.image.x_original

    @property
    def moved_to(self) -> Fraction:
        return self.image.image_original

    def report(self) -> dict:
        return {
            "word": str(self.word),
            "two_letter_word": str(self.two_letter),
            "k": self.k,
            "N": self.N,
            "x": str(self.x),
            "W(x)": str(self.moved_to),
        }


def no_law_witness(w: ReducedWord) -> NoLawWitness:
    if w.is_identity():
        raise WordError("the empty word is not a law candidate")
    two = w if all(g < 2 for g, _ in w.syllables) else law_to_two_letters(w)
    two = ReducedWord(two.syllables, 2)
    try:
        k = syllable_normal_form(two).k
    except PureBPower:
        k = 1
    cert = certificate_for(k)
    img = word_image(cert, two, check=False)
    if not img.moved:
        raise CertificateError(f"witness for {w} did not move")  # would contradict the certificate
    return NoLawWitness(w, two, k, cert, img)
