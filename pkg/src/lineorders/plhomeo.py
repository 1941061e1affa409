"""Exact piecewise-linear homeomorphisms of the real line.

Two representations share one duck-typed surface (``__call__``, ``preimage``,
``*`` for composition, ``~`` for inversion, ``**``, ``fixed_sets``):

* :class:`PLHomeo` -- finitely many rational breakpoints and affine tails.
* :class:`PeriodicPLHomeo` -- a lift of a PL circle map, ``f(x + P) = f(x) + P``.

Composition ``f * g`` means "apply g, then f".
"""
from __future__ import annotations

import bisect
import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce as _fold
from typing import Mapping, Sequence, Union

from .exact import INF, Number, endpoint, fmt, q, sign
from .words import ReducedWord, WordError


class PLError(ValueError):
    pass


class MissingGenerator(WordError, KeyError):
    pass


def _segment_slopes(xs, ys):
    return [(ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]) for i in range(len(xs) - 1)]


class PLHomeo:
    """Orientation-preserving, eventually affine PL map with rational data."""

    __slots__ = ("xs", "ys", "left_slope", "right_slope", "_hash")

    def __init__(self, xs: Sequence, ys: Sequence, left_slope=1, right_slope=1):
        xs = [q(x) for x in xs]
        ys = [q(y) for y in ys]
        left, right = q(left_slope), q(right_slope)
        if not xs or len(xs) != len(ys):
            raise PLError("need the same positive number of breakpoints and values")
        if left <= 0 or right <= 0:
            raise PLError("tail slopes must be positive")
        for i in range(len(xs) - 1):
            if not (xs[i] < xs[i + 1] and ys[i] < ys[i + 1]):
                raise PLError("breakpoints and values must be strictly increasing")
        slopes = [left] + _segment_slopes(xs, ys) + [right]
        keep = [i for i in range(len(xs)) if slopes[i] != slopes[i + 1]]
        if keep:
            xs = [xs[i] for i in keep]
            ys = [ys[i] for i in keep]
        else:
            ys = [ys[0] - left * xs[0]]
            xs = [Fraction(0)]
        self.xs: tuple[Fraction, ...] = tuple(xs)
        self.ys: tuple[Fraction, ...] = tuple(ys)
        self.left_slope: Fraction = left
        self.right_slope: Fraction = right
        self._hash = None

    # constructors ---------------------------------------------------------
    @classmethod
    def identity(cls) -> PLHomeo:
        return cls([0], [0])

    @classmethod
    def affine(cls, slope, shift=0) -> PLHomeo:
        """``x -> slope * x + shift``."""
        slope = q(slope)
        return cls([0], [q(shift)], slope, slope)

    @classmethod
    def translation(cls, t) -> PLHomeo:
        return cls.affine(1, t)

    @classmethod
    def supported_on(cls, xs: Sequence, ys: Sequence) -> PLHomeo:
        """Identity outside ``[xs[0], xs[-1]]``; ends must be fixed."""
        if q(xs[0]) != q(ys[0]) or q(xs[-1]) != q(ys[-1]):
            raise PLError("support endpoints must be fixed")
        return cls(xs, ys, 1, 1)

    def identity_like(self) -> PLHomeo:
        return PLHomeo.identity()

    # evaluation -----------------------------------------------------------
    def __call__(self, x: Number) -> Number:
        if isinstance(x, float):
            return x
        xs, ys = self.xs, self.ys
        if x <= xs[0]:
            return ys[0] + self.left_slope * (x - xs[0])
        if x >= xs[-1]:
            return ys[-1] + self.right_slope * (x - xs[-1])
        i = bisect.bisect_right(xs, x) - 1
        return ys[i] + (ys[i + 1] - ys[i]) * (x - xs[i]) / (xs[i + 1] - xs[i])

    def preimage(self, y: Number) -> Number:
        if isinstance(y, float):
            return y
        xs, ys = self.xs, self.ys
        if y <= ys[0]:
            return xs[0] + (y - ys[0]) / self.left_slope
        if y >= ys[-1]:
            return xs[-1] + (y - ys[-1]) / self.right_slope
        i = bisect.bisect_right(ys, y) - 1
        return xs[i] + (xs[i + 1] - xs[i]) * (y - ys[i]) / (ys[i + 1] - ys[i])

    def iterate(self, x: Number, n: int) -> Number:
        step = self if n >= 0 else self.preimage
        for _ in range(abs(n)):
            x = step(x)
        return x

    # group structure -------------------------------------------------------
    def __mul__(self, other: PLHomeo) -> PLHomeo:
        if not isinstance(other, PLHomeo):
            return NotImplemented
        pts = set(other.xs)
        pts.update(other.preimage(x) for x in self.xs)
        xs = sorted(pts)
        return PLHomeo(
            xs,
            [self(other(x)) for x in xs],
            self.left_slope * other.left_slope,
            self.right_slope * other.right_slope,
        )

    def __invert__(self) -> PLHomeo:
        return PLHomeo(self.ys, self.xs, 1 / self.left_slope, 1 / self.right_slope)

    def inverse(self) -> PLHomeo:
        return ~self

    def __pow__(self, n: int) -> PLHomeo:
        base = self if n >= 0 else ~self
        out, n = PLHomeo.identity(), abs(n)
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PLHomeo)
            and self.xs == other.xs
            and self.ys == other.ys
            and self.left_slope == other.left_slope
            and self.right_slope == other.right_slope
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.xs, self.ys, self.left_slope, self.right_slope))
        return self._hash

    def is_identity(self) -> bool:
        return self == _IDENTITY

    def is_translation(self) -> bool:
        return len(self.xs) == 1 and self.left_slope == 1 == self.right_slope

    @property
    def breakpoints(self) -> tuple[Fraction, ...]:
        """Genuine slope changes (empty for an affine map)."""
        if len(self.xs) == 1 and self.left_slope == self.right_slope:
            return ()
        return self.xs

    def pieces(self) -> list[tuple[Number, Number, Fraction, Fraction]]:
        """``(lo, hi, slope, intercept)`` with ``f(x) = slope * x + intercept``."""
        xs, ys = self.xs, self.ys
        out = [(-INF, xs[0], self.left_slope, ys[0] - self.left_slope * xs[0])]
        for i, s in enumerate(_segment_slopes(xs, ys)):
            out.append((xs[i], xs[i + 1], s, ys[i] - s * xs[i]))
        out.append((xs[-1], INF, self.right_slope, ys[-1] - self.right_slope * xs[-1]))
        return out

    def fixed_sets(self) -> FixedSet:
        return _fixed_set(self.pieces(), self, None)

    def translation_number(self) -> Fraction | TranslationMarker:
        if not self.fixed_sets().is_empty():
            return TranslationMarker.FIXED_POINT
        if self.left_slope != 1 or self.right_slope != 1:
            return TranslationMarker.UNDEFINED
        left_shift = self.ys[0] - self.xs[0]
        right_shift = self.ys[-1] - self.xs[-1]
        return left_shift if left_shift == right_shift else TranslationMarker.UNDEFINED

    # serialization -----------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "breakpoints": [fmt(x) for x in self.xs],
            "values": [fmt(y) for y in self.ys],
            "left_slope": fmt(self.left_slope),
            "right_slope": fmt(self.right_slope),
        }

    def __repr__(self) -> str:
        pts = ", ".join(f"({x}, {y})" for x, y in zip(self.xs, self.ys))
        return f"PLHomeo([{pts}], left={self.left_slope}, right={self.right_slope})"


_IDENTITY = PLHomeo.identity()


class PeriodicPLHomeo:
    """Lift of a PL circle homeomorphism: ``f(x + period) = f(x) + period``.

    Stored by its nodes in ``[0, period)``; node 0 is always present.
    """

    __slots__ = ("period", "xs", "ys", "_hash")

    def __init__(self, period, xs: Sequence, ys: Sequence):
        P = q(period)
        if P <= 0:
            raise PLError("period must be positive")
        if not xs or len(xs) != len(ys):
            raise PLError("need the same positive number of nodes and values")
        if len({q(x) % P for x in xs}) != len(xs):
            raise PLError("nodes must be distinct modulo the period")
        order = sorted(range(len(xs)), key=lambda i: q(xs[i]) % P)
        raw = []
        for i in order:
            x, y = q(xs[i]), q(ys[i])
            k = (x - x % P) / P
            raw.append((x - k * P, y - k * P))
        nx = [x for x, _ in raw] + [raw[0][0] + P]
        ny = [y for _, y in raw] + [raw[0][1] + P]
        if any(not (ny[i] < ny[i + 1]) for i in range(len(ny) - 1)):
            raise PLError("values must increase over one period")
        self.period = P
        if nx[0] != 0:
            nx, ny = self._rebase(nx, ny)
        slopes = _segment_slopes(nx, ny)
        keep = [i for i in range(len(nx) - 1) if i == 0 or slopes[i - 1] != slopes[i]]
        self.xs = tuple(nx[i] for i in keep)
        self.ys = tuple(ny[i] for i in keep)
        self._hash = None

    def _rebase(self, nx, ny):
        # re-anchor so that 0 is a node
        P = self.period
        ext_x = [x - P for x in nx[:-1]] + nx
        ext_y = [y - P for y in ny[:-1]] + ny
        i = bisect.bisect_right(ext_x, 0) - 1
        y0 = ext_y[i] + (ext_y[i + 1] - ext_y[i]) * (0 - ext_x[i]) / (ext_x[i + 1] - ext_x[i])
        pts = [(Fraction(0), y0)] + [(x, y) for x, y in zip(ext_x, ext_y) if 0 < x < P]
        return [x for x, _ in pts] + [P], [y for _, y in pts] + [y0 + P]

    @classmethod
    def translation(cls, t, period=1) -> PeriodicPLHomeo:
        return cls(period, [0], [q(t)])

    def identity_like(self) -> PeriodicPLHomeo:
        return PeriodicPLHomeo(self.period, [0], [0])

    def _nodes(self):
        return list(self.xs) + [self.period], list(self.ys) + [self.ys[0] + self.period]

    def __call__(self, x: Number) -> Number:
        if isinstance(x, float):
            return x
        P = self.period
        k = math.floor(x / P)
        r = x - k * P
        nx, ny = self._nodes()
        i = bisect.bisect_right(nx, r) - 1
        i = min(i, len(nx) - 2)
        return ny[i] + (ny[i + 1] - ny[i]) * (r - nx[i]) / (nx[i + 1] - nx[i]) + k * P

    def preimage(self, y: Number) -> Number:
        if isinstance(y, float):
            return y
        P = self.period
        y0 = self.ys[0]
        k = math.floor((y - y0) / P)
        r = y - k * P
        nx, ny = self._nodes()
        i = bisect.bisect_right(ny, r) - 1
        i = min(i, len(ny) - 2)
        return nx[i] + (nx[i + 1] - nx[i]) * (r - ny[i]) / (ny[i + 1] - ny[i]) + k * P

    def iterate(self, x: Number, n: int) -> Number:
        step = self if n >= 0 else self.preimage
        for _ in range(abs(n)):
            x = step(x)
        return x

    def _check_period(self, other):
        if not isinstance(other, PeriodicPLHomeo) or other.period != self.period:
            raise PLError("periodic maps can only be combined with the same period")

    def __mul__(self, other: PeriodicPLHomeo) -> PeriodicPLHomeo:
        self._check_period(other)
        P = self.period
        pts = {Fraction(0)} | set(other.xs)
        pts.update(other.preimage(x) % P for x in self.xs)
        xs = sorted(pts)
        return PeriodicPLHomeo(P, xs, [self(other(x)) for x in xs])

    def __invert__(self) -> PeriodicPLHomeo:
        return PeriodicPLHomeo(self.period, self.ys, self.xs)

    def inverse(self) -> PeriodicPLHomeo:
        return ~self

    def __pow__(self, n: int) -> PeriodicPLHomeo:
        base = self if n >= 0 else ~self
        out, n = self.identity_like(), abs(n)
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PeriodicPLHomeo)
            and self.period == other.period
            and self.xs == other.xs
            and self.ys == other.ys
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.period, self.xs, self.ys))
        return self._hash

    def is_identity(self) -> bool:
        return len(self.xs) == 1 and self.ys[0] == 0

    def is_translation(self) -> bool:
        return len(self.xs) == 1

    @property
    def breakpoints(self) -> tuple[Fraction, ...]:
        return () if len(self.xs) == 1 else self.xs

    def pieces(self):
        nx, ny = self._nodes()
        return [
            (nx[i], nx[i + 1], s, ny[i] - s * nx[i])
            for i, s in enumerate(_segment_slopes(nx, ny))
        ]

    def fixed_sets(self) -> FixedSet:
        return _fixed_set(self.pieces(), self, self.period)

    def translation_number(self) -> Fraction | TranslationMarker:
        if not self.fixed_sets().is_empty():
            return TranslationMarker.FIXED_POINT
        if self.is_translation():
            return self.ys[0]
        return TranslationMarker.UNDEFINED

    def to_json(self) -> dict:
        return {
            "period": fmt(self.period),
            "breakpoints": [fmt(x) for x in self.xs],
            "values": [fmt(y) for y in self.ys],
        }

    def __repr__(self) -> str:
        pts = ", ".join(f"({x}, {y})" for x, y in zip(self.xs, self.ys))
        return f"PeriodicPLHomeo(period={self.period}, [{pts}])"


LineMap = Union[PLHomeo, PeriodicPLHomeo]


def homeo_from_json(obj: Mapping) -> LineMap:
    try:
        xs = obj["breakpoints"]
        ys = obj["values"]
        if "period" in obj:
            return PeriodicPLHomeo(obj["period"], xs, ys)
        return PLHomeo(xs, ys, obj.get("left_slope", "1"), obj.get("right_slope", "1"))
    except KeyError as exc:
        raise PLError(f"missing field {exc.args[0]!r} in homeomorphism") from None
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise PLError(f"bad homeomorphism data: {exc}") from None


# fixed points --------------------------------------------------------------

class TranslationMarker(enum.Enum):
    FIXED_POINT = "fixed-point"
    UNDEFINED = "undefined"


@dataclass(frozen=True)
class FixedPoint:
    point: Fraction
    left_sign: int   # sign of f(x) - x just left of the point
    right_sign: int

    @property
    def transversal(self) -> bool:
        return self.left_sign == -self.right_sign != 0

    @property
    def kind(self) -> str:
        if self.left_sign > 0 > self.right_sign:
            return "attracting"
        if self.left_sign < 0 < self.right_sign:
            return "repelling"
        return "tangent-positive" if self.left_sign > 0 else "tangent-negative"


@dataclass(frozen=True)
class FixedSet:
    """Fixed components (points as degenerate intervals) and the sign of the
    displacement on each complementary gap.  For periodic maps everything is
    listed inside one period ``[0, period)``."""

    components: tuple[tuple[Number, Number], ...]
    gaps: tuple[tuple[Number, Number, int], ...]
    period: Fraction | None = None

    def is_empty(self) -> bool:
        return not self.components

    @property
    def isolated(self) -> list[FixedPoint]:
        out = []
        for lo, hi in self.components:
            if lo == hi:
                out.append(FixedPoint(lo, self._sign_left_of(lo), self._sign_right_of(lo)))
        return out

    @property
    def intervals(self) -> list[tuple[Number, Number]]:
        return [(lo, hi) for lo, hi in self.components if lo != hi]

    def _gap_signs(self):
        if self.period is None:
            return list(self.gaps)
        P = self.period
        return [(lo + k * P, hi + k * P, s) for k in (-1, 0, 1) for lo, hi, s in self.gaps]

    def _sign_left_of(self, x) -> int:
        for lo, hi, s in self._gap_signs():
            if lo < x <= hi:
                return s
        return 0

    def _sign_right_of(self, x) -> int:
        for lo, hi, s in self._gap_signs():
            if lo <= x < hi:
                return s
        return 0

    def contains(self, x) -> bool:
        if self.period is not None:
            x = x % self.period
        return any(lo <= x <= hi for lo, hi in self.components)

    def _shifted(self, x):
        if self.period is None:
            return 0, x
        k = math.floor(x / self.period)
        return k * self.period, x - k * self.period

    def next_above(self, x) -> Number:
        """Smallest fixed point strictly greater than ``x`` (or +inf)."""
        if not self.components:
            return INF
        off, r = self._shifted(x)
        for lo, hi in self.components:
            if hi > r:
                return off + (lo if lo > r else r)  # r inside an interval is impossible here
        if self.period is None:
            return INF
        return off + self.period + self.components[0][0]

    def next_below(self, x) -> Number:
        if not self.components:
            return -INF
        off, r = self._shifted(x)
        for lo, hi in reversed(self.components):
            if lo < r:
                return off + (hi if hi < r else r)
        if self.period is None:
            return -INF
        return off - self.period + self.components[-1][1]

    def within(self, lo, hi) -> list[tuple[Number, Number]]:
        """Fixed components meeting ``[lo, hi]``, tiled across periods and clipped."""
        if self.period is None:
            comps = self.components
        else:
            P = self.period
            k0, k1 = math.floor(lo / P) - 1, math.floor(hi / P) + 1
            comps = [(a + k * P, b + k * P) for k in range(k0, k1 + 1) for a, b in self.components]
        return [(max(a, lo), min(b, hi)) for a, b in comps if a <= hi and b >= lo]


def _fixed_set(pieces, f, period) -> FixedSet:
    comps: list[tuple[Number, Number]] = []
    for lo, hi, s, c in pieces:
        if s == 1:
            if c == 0:
                comps.append((lo, hi))
            continue
        x = -c / (s - 1)
        if lo <= x <= hi:
            comps.append((x, x))
    comps.sort(key=lambda t: (t[0], t[1]))
    merged: list[list] = []
    for lo, hi in comps:
        if merged and lo <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    if period is not None:
        # the node at `period` duplicates 0
        merged = [m for m in merged if m[0] < period]
        if merged and merged[-1][1] >= period:
            hi = merged[-1][1] - period
            merged.pop()
            if merged and merged[0][0] == 0:
                merged[0][0] = 0
                merged[0][1] = max(merged[0][1], hi)
            elif hi >= 0:
                merged.insert(0, [Fraction(0), hi])
    components = tuple((m[0], m[1]) for m in merged)

    def disp_sign(lo, hi):
        if lo == -INF and hi == INF:
            x = Fraction(0)
        elif lo == -INF:
            x = hi - 1
        elif hi == INF:
            x = lo + 1
        else:
            x = (lo + hi) / 2
        return sign(f(x) - x)

    gaps = []
    if period is None:
        edges = [-INF] + [v for comp in components for v in comp] + [INF]
        for i in range(0, len(edges), 2):
            lo, hi = edges[i], edges[i + 1]
            if lo < hi:
                gaps.append((lo, hi, disp_sign(lo, hi)))
    elif components:
        for i, (_, hi) in enumerate(components):
            nlo = components[i + 1][0] if i + 1 < len(components) else components[0][0] + period
            if hi < nlo:
                gaps.append((hi, nlo, disp_sign(hi, nlo)))
    else:
        gaps.append((Fraction(0), period, sign(f(Fraction(0)))))
    return FixedSet(components, tuple(gaps), period)


def fixed_sets(f: LineMap) -> FixedSet:
    return f.fixed_sets()


def translation_number(f: LineMap) -> Fraction | TranslationMarker:
    return f.translation_number()


# orbits ----------------------------------------------------------------------

def forward_orbit_hull(f: LineMap, lo: Number, hi: Number, positive: bool = True) -> tuple[Number, Number]:
    """Closed convex hull of the union of ``f^n([lo, hi])`` over n >= 1 (or n <= -1).

    Each endpoint orbit is monotone, so the hull end is either the first iterate
    or the limit fixed point (possibly infinite) in the direction of motion.
    """
    if lo > hi:
        raise PLError("empty interval")
    step = f if positive else f.preimage
    fs = f.fixed_sets()

    def lowest(x):
        if isinstance(x, float):
            return x
        y = step(x)
        return fs.next_below(x) if y < x else y

    def highest(x):
        if isinstance(x, float):
            return x
        y = step(x)
        return fs.next_above(x) if y > x else y

    return lowest(lo), highest(hi)


# words ------------------------------------------------------------------------

def _lookup(assignment, gen):
    try:
        return assignment[gen]
    except (KeyError, IndexError):
        raise MissingGenerator(f"no map assigned to generator {gen}") from None


def evaluate_word(w: ReducedWord, assignment: Sequence[LineMap] | Mapping[int, LineMap]) -> LineMap:
    """The map of ``w``; the rightmost letter acts first."""
    maps = [_lookup(assignment, g) ** e for g, e in w.syllables]
    if not maps:
        first = assignment[0] if isinstance(assignment, Sequence) and assignment else None
        if first is None and isinstance(assignment, Mapping) and assignment:
            first = next(iter(assignment.values()))
        return first.identity_like() if first is not None else PLHomeo.identity()
    return _fold(lambda u, v: u * v, maps)


def evaluate_word_at(w: ReducedWord, assignment, x: Number) -> Number:
    """Pointwise evaluation, without building the composite map."""
    for g, e in reversed(w.syllables):
        x = _lookup(assignment, g).iterate(x, e)
    return x


__all__ = [
    "PLHomeo", "PeriodicPLHomeo", "FixedSet", "FixedPoint", "TranslationMarker",
    "PLError", "MissingGenerator", "homeo_from_json", "fixed_sets", "translation_number",
    "forward_orbit_hull", "evaluate_word", "evaluate_word_at", "endpoint",
]
