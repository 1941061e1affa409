"""Finite ping-pong certificates and their exact verifier.

A certificate ``(f, g, A_1..A_k, B_1..B_k)`` asserts that for every nonzero n

    f^n(A_i) is inside B_i         (i = 1..k)
    g^n(B_i) is inside A_{i+1}     (i = 1..k-1)

and that A_1 and B_k are disjoint.  Then any word with at most k syllables on
``a`` (after conjugating by a power of ``a``) moves a point of A_1 into B_k, so
it is not a law of the group generated by f and g.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import INF, Number, endpoint, fmt, q
from .plhomeo import LineMap, evaluate_word_at, forward_orbit_hull, homeo_from_json
from .words import PureBPower, ReducedWord, WordError, syllable_normal_form


class CertificateError(ValueError):
    pass


class NotIntertwined(CertificateError):
    pass


class OverlappingNeighborhoods(CertificateError):
    pass


class SyllableOverflow(CertificateError):
    pass


class IntervalSet:
    """Finite union of disjoint closed intervals; endpoints may be +-inf."""

    __slots__ = ("components",)

    def __init__(self, components: Iterable[tuple] = ()):
        comps = []
        for lo, hi in components:
            lo, hi = endpoint(lo), endpoint(hi)
            if lo > hi:
                raise CertificateError(f"empty interval [{lo}, {hi}]")
            comps.append((lo, hi))
        comps.sort(key=lambda c: c[0])
        merged: list[list] = []
        for lo, hi in comps:
            if merged and lo <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        self.components: tuple[tuple[Number, Number], ...] = tuple((a, b) for a, b in merged)

    @classmethod
    def around(cls, centers: Iterable, radius) -> IntervalSet:
        r = q(radius)
        return cls((c - r, c + r) for c in centers)

    def __bool__(self) -> bool:
        return bool(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntervalSet) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __or__(self, other: IntervalSet) -> IntervalSet:
        return IntervalSet(self.components + other.components)

    def contains_interval(self, lo, hi) -> bool:
        return any(a <= lo and hi <= b for a, b in self.components)

    def contains_point(self, x) -> bool:
        return self.contains_interval(x, x)

    def __contains__(self, x) -> bool:
        return self.contains_point(x)

    def issubset(self, other: IntervalSet) -> bool:
        return all(other.contains_interval(lo, hi) for lo, hi in self.components)

    def isdisjoint(self, other: IntervalSet) -> bool:
        return not any(
            a <= d and c <= b for a, b in self.components for c, d in other.components
        )

    def image(self, f: LineMap, power: int = 1) -> IntervalSet:
        return IntervalSet((f.iterate(lo, power), f.iterate(hi, power)) for lo, hi in self.components)

    def witness_point(self) -> Fraction:
        """Midpoint of the first component (a finite endpoint for rays)."""
        lo, hi = self.components[0]
        if lo == -INF and hi == INF:
            return Fraction(0)
        if lo == -INF:
            return hi
        if hi == INF:
            return lo
        return (lo + hi) / 2

    def to_json(self) -> list:
        return [[fmt(lo), fmt(hi)] for lo, hi in self.components]

    @classmethod
    def from_json(cls, obj) -> IntervalSet:
        try:
            return cls((lo, hi) for lo, hi in obj)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise CertificateError(f"bad interval set {obj!r}: {exc}") from None

    def __repr__(self) -> str:
        return "IntervalSet(" + " U ".join(f"[{fmt(a)}, {fmt(b)}]" for a, b in self.components) + ")"


@dataclass(frozen=True)
class PingPongCertificate:
    f: LineMap
    g: LineMap
    A: tuple[IntervalSet, ...]
    B: tuple[IntervalSet, ...]
    power: int = 1  # the N with f = f0^N, g = g0^N, informational only

    def __post_init__(self):
        if len(self.A) != len(self.B) or not self.A:
            raise CertificateError("need k >= 1 sets A and the same number of sets B")

    @property
    def k(self) -> int:
        return len(self.A)

    def to_json(self) -> dict:
        out = {
            "f": self.f.to_json(),
            "g": self.g.to_json(),
            "k": self.k,
            "A": [s.to_json() for s in self.A],
            "B": [s.to_json() for s in self.B],
        }
        if self.power != 1:
            out["N"] = self.power
        return out

    @classmethod
    def from_json(cls, obj) -> PingPongCertificate:
        try:
            A = tuple(IntervalSet.from_json(s) for s in obj["A"])
            B = tuple(IntervalSet.from_json(s) for s in obj["B"])
            if "k" in obj and int(obj["k"]) != len(A):
                raise CertificateError(f"field k = {obj['k']} but {len(A)} sets A given")
            return cls(homeo_from_json(obj["f"]), homeo_from_json(obj["g"]), A, B, int(obj.get("N", 1)))
        except KeyError as exc:
            raise CertificateError(f"certificate is missing field {exc.args[0]!r}") from None


@dataclass(frozen=True)
class Failure:
    """First failing hypothesis: ``map`` is "f", "g" or "disjoint"."""

    map: str
    index: int          # 1-based i of A_i (for f) or B_i (for g)
    component: int      # 0-based component of that set
    direction: str      # "positive", "negative" or ""
    hull: tuple = ()

    def __str__(self) -> str:
        if self.map == "disjoint":
            return "A_1 and B_k intersect"
        src, dst = ("A", "B") if self.map == "f" else ("B", "A")
        tgt = self.index if self.map == "f" else self.index + 1
        lo, hi = self.hull
        return (
            f"{self.map}^n({src}_{self.index}[{self.component}]) for {self.direction} n "
            f"reaches [{fmt(lo)}, {fmt(hi)}], not inside {dst}_{tgt}"
        )


@dataclass(frozen=True)
class CertificateCheck:
    failure: Failure | None = None

    @property
    def ok(self) -> bool:
        return self.failure is None

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return "ok" if self.ok else f"violation: {self.failure}"


def _orbit_failure(h: LineMap, name: str, index: int, source: IntervalSet, target: IntervalSet):
    for c, (lo, hi) in enumerate(source):
        for positive in (True, False):
            hull = forward_orbit_hull(h, lo, hi, positive)
            if not target.contains_interval(*hull):
                return Failure(name, index, c, "positive" if positive else "negative", hull)
    return None


def verify_certificate(c: PingPongCertificate) -> CertificateCheck:
    """Sound check of the hypotheses via closed orbit hulls (lowest index fails first)."""
    for i in range(c.k):
        if not c.A[i] or not c.B[i]:
            raise CertificateError("all sets must be nonempty")
    for i in range(c.k):
        bad = _orbit_failure(c.f, "f", i + 1, c.A[i], c.B[i])
        if bad:
            return CertificateCheck(bad)
        if i + 1 < c.k:
            bad = _orbit_failure(c.g, "g", i + 1, c.B[i], c.A[i + 1])
            if bad:
                return CertificateCheck(bad)
    if not c.A[0].isdisjoint(c.B[-1]):
        return CertificateCheck(Failure("disjoint", c.k, 0, ""))
    return CertificateCheck()


@dataclass(frozen=True)
class ChainStep:
    label: str            # e.g. "f^2" or "g^-1"
    image: IntervalSet
    target: str           # e.g. "B_1"
    ok: bool


@dataclass(frozen=True)
class WordImage:
    """Replay of the containment chain for one word.

    ``x`` is moved by the conjugated word to ``image``; ``x_original`` is moved by
    the input word itself to ``image_original``.
    """

    word: ReducedWord
    conjugated: ReducedWord
    conjugator_power: int
    chain: tuple[ChainStep, ...]
    x: Fraction
    image: Fraction
    x_original: Fraction
    image_original: Fraction

    @property
    def moved(self) -> bool:
        return self.image != self.x and self.image_original != self.x_original


def _pure_b_witness(c: PingPongCertificate, w: ReducedWord) -> WordImage:
    m = w.syllables[0][1]
    candidates = [s.witness_point() for s in c.B] + [lo for s in c.B for lo, _ in s if lo != -INF]
    for x in candidates:
        y = c.g.iterate(x, m)
        if y != x:
            return WordImage(w, w, 0, (), x, y, x, y)
    raise CertificateError("g fixes every probe point; no witness for a power of b")


def word_image(c: PingPongCertificate, w: ReducedWord, check: bool = True) -> WordImage:
    """Push A_1 through the syllables of the conjugated word, checking each inclusion."""
    if check:
        verdict = verify_certificate(c)
        if not verdict.ok:
            raise CertificateError(f"certificate does not verify: {verdict}")
    if w.is_identity():
        raise WordError("the empty word is trivially a law")
    try:
        form = syllable_normal_form(w)
    except PureBPower:
        return _pure_b_witness(c, w)
    if form.k > c.k:
        raise SyllableOverflow(f"{w} needs k = {form.k} but the certificate has k = {c.k}")
    steps = []
    S = c.A[0]
    for i in range(form.k):
        S = S.image(c.f, form.a_exponents[i])
        ok = S.issubset(c.B[i])
        steps.append(ChainStep(f"f^{form.a_exponents[i]}", S, f"B_{i + 1}", ok))
        if i + 1 < form.k:
            S = S.image(c.g, form.b_exponents[i])
            steps.append(ChainStep(f"g^{form.b_exponents[i]}", S, f"A_{i + 2}", S.issubset(c.A[i + 1])))
    if not all(s.ok for s in steps):
        raise CertificateError(f"containment chain broke for {w}")
    if not c.A[0].isdisjoint(c.B[form.k - 1]):
        raise CertificateError(f"A_1 meets B_{form.k}; the chain proves nothing")
    assign = (c.f, c.g)
    x = c.A[0].witness_point()
    y = evaluate_word_at(form.conjugated, assign, x)
    # w = a^-p w' a^p, so w moves f^-p(x) to f^-p(w'(x))
    p = form.conjugator_power
    x0 = c.f.iterate(x, -p)
    y0 = c.f.iterate(y, -p)
    return WordImage(w, form.conjugated, p, tuple(steps), x, y, x0, y0)


def _check_intertwined(p: Sequence, q_: Sequence) -> list:
    if len(p) != len(q_) or len(p) % 2 == 0:
        raise NotIntertwined("need 2k+1 points of each kind")
    merged = [v for pair in zip(p, q_) for v in pair]
    if any(not (merged[i] < merged[i + 1]) for i in range(len(merged) - 1)):
        raise NotIntertwined("points must satisfy p_1 < q_1 < p_2 < ... < q_{2k+1}")
    return merged


def from_interleaved_points(f: LineMap, g: LineMap, p: Sequence, q_: Sequence, radius) -> PingPongCertificate:
    """Nested neighbourhood sets for ``2k+1`` intertwined fixed points.

    ``p`` are fixed by g, ``q_`` by f.  A_i collects the points ``p_{k+1+j}`` for
    ``|j| < i``; B_i collects ``q_{k+1+j}`` for ``-i <= j < i``.
    """
    p = [q(x) for x in p]
    q_ = [q(x) for x in q_]
    r = q(radius)
    _check_intertwined(p, q_)
    # only p_2..p_2k and q_1..q_2k enter the sets
    used = sorted(p[1:-1] + q_[:-1])
    gap = min((used[i + 1] - used[i] for i in range(len(used) - 1)), default=INF)
    if r <= 0 or 2 * r >= gap:
        raise OverlappingNeighborhoods(f"radius {r} must be below half the minimal gap {gap / 2}")
    k = (len(p) - 1) // 2
    # 0-based: p_{k+1+j} is p[k + j]
    A = tuple(IntervalSet.around((p[k + j] for j in range(-(i - 1), i)), r) for i in range(1, k + 1))
    B = tuple(IntervalSet.around((q_[k + j] for j in range(-i, i)), r) for i in range(1, k + 1))
    return PingPongCertificate(f, g, A, B)
