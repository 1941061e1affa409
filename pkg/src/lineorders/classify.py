"""Bounded classification of finitely generated PL actions on the line into types I, II, III.

Every positive verdict carries exact data that is re-checked before it is returned.
Type II is detected only through exact equivariance under a rational translation,
and type III through expansion witnesses for a fixed escalating family of targets,
so ``Inconclusive`` is a legitimate answer.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import fmt
from .plhomeo import LineMap, PeriodicPLHomeo, PLHomeo, TranslationMarker, evaluate_word_at
from .words import GENERATOR_NAMES, ReducedWord, enumerate_ball

TYPE_I, TYPE_II, TYPE_III = "TypeI", "TypeII", "TypeIII"
GLOBAL_FIXED_POINT, INCONCLUSIVE = "GlobalFixedPoint", "Inconclusive"
MAX_LATTICE_POINTS = 20_000


@dataclass(frozen=True)
class MarkedAction:
    generators: tuple
    depth: int = 8

    def __post_init__(self):
        if not self.generators:
            raise ValueError("need at least one generator")
        if self.depth < 1:
            raise ValueError("search depth must be positive")
        object.__setattr__(self, "generators", tuple(self.generators))

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def names(self) -> str:
        return GENERATOR_NAMES[: self.rank]


@dataclass
class Classification:
    verdict: str
    witness: dict = field(default_factory=dict)
    trace: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "witness": self.witness}


def _frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    return Fraction(math.gcd(a.numerator * b.denominator, b.numerator * a.denominator),
                    a.denominator * b.denominator)


def _frac_lcm(a: Fraction, b: Fraction) -> Fraction:
    return a * b / _frac_gcd(a, b)


def _periods(gens) -> list[Fraction]:
    return [h.period for h in gens if isinstance(h, PeriodicPLHomeo)]


def _window(gens) -> tuple[Fraction, Fraction]:
    """A bounded window containing every breakpoint, finite fixed-set endpoint and one full common period."""
    pts = [Fraction(0)]
    for h in gens:
        pts.extend(h.breakpoints)
        if isinstance(h, PLHomeo):
            pts.extend(v for comp in h.fixed_sets().components for v in comp if not isinstance(v, float))
    P = Fraction(1)
    for p in _periods(gens):
        P = _frac_lcm(P, p)
    return min(pts) - P - 1, max(pts) + P + 1


def common_fixed_point(gens) -> Fraction | None:
    lo, hi = _window(gens)
    common = [(lo, hi)]
    for h in gens:
        comps = h.fixed_sets().within(lo, hi)
        common = [(max(a, c), min(b, d)) for a, b in common for c, d in comps if max(a, c) <= min(b, d)]
        if not common:
            return None
    return common[0][0]


# type I ------------------------------------------------------------------------

def _orbit(gens, x0: Fraction, depth: int) -> set:
    seen, frontier = {x0}, [x0]
    moves = [h for h in gens] + [h.preimage for h in gens]
    for _ in range(depth):
        nxt = []
        for x in frontier:
            for m in moves:
                y = m(x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def _preserves_lattice(h: LineMap, x0: Fraction, d: Fraction) -> bool:
    """Exact check that h and its inverse map x0 + dZ into itself.

    Outside the breakpoint range the map is a translation, so one lattice point
    per tail settles the whole tail; periodic maps need one common period.
    """
    def on(x):
        return ((x - x0) / d).denominator == 1

    for f in (h, ~h):
        if isinstance(f, PeriodicPLHomeo):
            lo, count = x0, _frac_lcm(f.period, d) / d
        else:
            if f.left_slope != 1 or f.right_slope != 1:
                return False
            bps = f.breakpoints or (x0,)
            lo = x0 + d * math.floor((bps[0] - x0) / d)
            hi = x0 + d * math.ceil((bps[-1] - x0) / d)
            count = (hi - lo) / d + 1
        if count > MAX_LATTICE_POINTS:
            return False
        if not all(on(f(lo + i * d)) for i in range(int(count))):
            return False
    return True


def invariant_lattice(act: MarkedAction, x0: Fraction = Fraction(0)):
    """``(x0, d)`` when the orbit of x0 spans a lattice ``x0 + dZ`` preserved by every generator."""
    d = Fraction(0)
    for y in _orbit(act.generators, x0, act.depth):
        if y != x0:
            d = abs(y - x0) if d == 0 else _frac_gcd(d, abs(y - x0))
    if d == 0:
        return None
    if all(_preserves_lattice(h, x0, d) for h in act.generators):
        return x0, d
    return None


def translation_table(act: MarkedAction):
    """Translation numbers of generators when all are defined and additive on products of length 2."""
    gens = act.generators
    letters = list(gens) + [~h for h in gens]
    taus = []
    for h in letters:
        if not h.fixed_sets().is_empty():
            return None
        t = h.translation_number()
        if not isinstance(t, Fraction):
            return None
        taus.append(t)
    for i, f in enumerate(letters):
        for j, g in enumerate(letters):
            if isinstance(f, PeriodicPLHomeo) != isinstance(g, PeriodicPLHomeo):
                return None
            t = (f * g).translation_number()
            if t is TranslationMarker.FIXED_POINT:
                t = Fraction(0)      # a fixed point forces translation number 0
            if t != taus[i] + taus[j]:
                return None
    return {act.names[i]: taus[i] for i in range(len(gens))}


# type II -----------------------------------------------------------------------

def commutes_with_shift(h: LineMap, period: Fraction) -> bool:
    """``h(x + period) == h(x) + period`` at every breakpoint of either side and one point per piece."""
    if isinstance(h, PeriodicPLHomeo):
        base = [x for x in h.breakpoints] + [(x - period) % h.period for x in h.breakpoints]
        base += [Fraction(0), h.period]
    else:
        base = list(h.breakpoints) + [x - period for x in h.breakpoints]
        if not base:
            base = [Fraction(0)]
        base += [min(base) - 1, max(base) + 1]
    pts = sorted(set(base))
    pts += [(a + b) / 2 for a, b in zip(pts, pts[1:])]
    return all(h(x + period) == h(x) + period for x in pts)


def common_period(act: MarkedAction) -> Fraction | None:
    periods = _periods(act.generators)
    if not periods:
        return None
    P = periods[0]
    for p in periods[1:]:
        P = _frac_lcm(P, p)
    return P if all(commutes_with_shift(h, P) for h in act.generators) else None


# type III ----------------------------------------------------------------------

def _drop_first(w: ReducedWord) -> ReducedWord:
    (gen, e), rest = w.syllables[0], w.syllables[1:]
    step = 1 if e > 0 else -1
    head = ((gen, e - step),) if e != step else ()
    return ReducedWord(head + rest, w.rank)


def find_expansion_witness(act: MarkedAction, c, c2, a, b, a2, b2) -> ReducedWord | None:
    """Shortlex-first word of length <= depth sending a below a2 and b above b2."""
    c, c2, a, b, a2, b2 = map(Fraction, (c, c2, a, b, a2, b2))
    if not (a < c < c2 < b) or not (a2 < b2):
        raise ValueError("need a < c < c' < b and a' < b'")
    gens = act.generators
    inverses = [~h for h in gens]
    images: dict[ReducedWord, tuple] = {}
    for w in enumerate_ball(act.depth, act.rank):
        if w.is_identity():
            images[w] = (a, b)
            continue
        gen, e = w.syllables[0]
        m = gens[gen] if e > 0 else inverses[gen]
        xa, xb = images[_drop_first(w)]
        ya, yb = m(xa), m(xb)
        images[w] = (ya, yb)
        if ya < a2 and yb > b2:
            return w
    return None


def probe_points(act: MarkedAction) -> tuple[Fraction, Fraction]:
    bps = sorted({x for h in act.generators for x in h.breakpoints})
    return (bps[0], bps[1]) if len(bps) >= 2 else (Fraction(0), Fraction(1))


def expansion_witnesses(act: MarkedAction):
    """Witnesses for the targets c - 2^j, c' + 2^j, j = 1..max(1, depth // 2); None if one is missing."""
    c, c2 = probe_points(act)
    delta = (c2 - c) / 2
    a, b = c - delta, c2 + delta
    found = []
    for j in range(1, max(1, act.depth // 2) + 1):
        a2, b2 = c - 2 ** j, c2 + 2 ** j
        w = find_expansion_witness(act, c, c2, a, b, a2, b2)
        if w is None:
            return None
        found.append((j, a2, b2, w))
    return (c, c2, a, b), found


# pipeline ----------------------------------------------------------------------

def classify(act: MarkedAction) -> Classification:
    gens = act.generators
    out = Classification(INCONCLUSIVE)
    log = out.trace.append

    x = common_fixed_point(gens)
    if x is not None:
        assert all(h(x) == x for h in gens)
        log(f"common fixed point at {x}")
        out.verdict, out.witness = GLOBAL_FIXED_POINT, {"point": fmt(x)}
        return out
    log("no common fixed point")

    lat = invariant_lattice(act)
    if lat is not None:
        x0, d = lat
        log(f"orbit of {x0} lies in the invariant discrete set {x0} + ({d})Z")
        out.verdict, out.witness = TYPE_I, {"kind": "invariant-lattice", "base": fmt(x0), "step": fmt(d)}
        return out
    log("no invariant lattice through 0")
    table = translation_table(act)
    if table is not None:
        log("translation numbers are defined and additive on products of two letters")
        out.verdict = TYPE_I
        out.witness = {"kind": "translation-numbers", "table": {k: fmt(v) for k, v in table.items()}}
        return out
    log("translation numbers are not a homomorphism")

    period = common_period(act)
    if period is not None:
        log(f"every generator commutes with x -> x + {period}")
        out.verdict, out.witness = TYPE_II, {"period": fmt(period)}
        return out
    log("no common rational period")

    exp = expansion_witnesses(act)
    if exp is not None:
        (c, c2, a, b), found = exp
        for _, a2, b2, w in found:
            ya = evaluate_word_at(w, gens, a)
            yb = evaluate_word_at(w, gens, b)
            assert ya < a2 and yb > b2
        j, a2, b2, w = found[-1]
        log(f"expansion witnesses found for j = 1..{j}")
        out.verdict = TYPE_III
        out.witness = {
            "c": fmt(c), "c'": fmt(c2), "a": fmt(a), "b": fmt(b),
            "a'": fmt(a2), "b'": fmt(b2), "word": str(w),
            "image_a": fmt(evaluate_word_at(w, gens, a)), "image_b": fmt(evaluate_word_at(w, gens, b)),
            "ladder": [{"j": j_, "word": str(w_)} for j_, _, _, w_ in found],
        }
        return out
    log(f"no expansion witness up to depth {act.depth}")
    return out
