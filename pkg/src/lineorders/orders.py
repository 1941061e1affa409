"""Left orders on free groups induced by PL actions on the line.

``u < v`` is decided at the first reference point where the maps of u and v
differ.  Words with identical maps are compared with a tiebreak order (by
default the order induced by a ping-pong certified pair), which is the convex
extension of the partial dynamical order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .exact import rationals_by_height, sign
from .plhomeo import LineMap, PLHomeo, evaluate_word, evaluate_word_at
from .words import (
    NotMixedSign,
    ReducedWord,
    decompose_for_construction,
    enumerate_ball,
)

DEFAULT = object()
MAX_REFPOINTS = 100_000


class LeftOrder:
    """Shared helpers; subclasses provide ``compare``."""

    rank = 2

    def compare(self, u: ReducedWord, v: ReducedWord) -> int:
        raise NotImplementedError

    def sign(self, w: ReducedWord) -> int:
        return self.compare(w, ReducedWord.identity(self.rank))

    def is_positive(self, w: ReducedWord) -> bool:
        return self.sign(w) > 0

    def sorted(self, words: Iterable[ReducedWord]) -> list[ReducedWord]:
        return sorted(words, key=cmp_to_key(self.compare))

    def ranks(self, words: Sequence[ReducedWord]) -> dict[ReducedWord, int]:
        out: dict[ReducedWord, int] = {}
        prev, r = None, -1
        for w in self.sorted(words):
            if prev is None or self.compare(prev, w) != 0:
                r += 1
            out[w] = r
            prev = w
        return out


class DynOrder(LeftOrder):
    """Order induced by ``action[i]`` (the map of generator i) and reference points.

    ``refpoints`` come first, then the rationals by height.  ``tiebreak`` is the
    order used when two words have the same map; ``None`` falls back to
    shortlex (counted in ``uncertified_ties``; never left-invariant).
    """

    def __init__(self, action: Sequence[LineMap], refpoints: Sequence = (), tiebreak=DEFAULT,
                 probe_depth: int = 32):
        self.action = tuple(action)
        self.rank = max(2, len(self.action))
        given = [Fraction(x) for x in refpoints]
        self._ref_iter = itertools.chain(given, rationals_by_height())
        self._refs: list[Fraction] = []
        self._seen: set[Fraction] = set()
        self.user_refpoints = tuple(given)
        self._tiebreak = tiebreak
        self.probe_depth = probe_depth
        self._values: dict[tuple, Fraction] = {}
        self._maps: dict[ReducedWord, LineMap] = {}
        self.tiebreak_calls = 0
        self.uncertified_ties = 0

    @property
    def tiebreak(self) -> LeftOrder | None:
        if self._tiebreak is DEFAULT:
            self._tiebreak = auxiliary_order()
        return self._tiebreak

    def refpoint(self, i: int) -> Fraction:
        while len(self._refs) <= i:
            x = next(self._ref_iter)
            if x not in self._seen:
                self._seen.add(x)
                self._refs.append(x)
        return self._refs[i]

    def value(self, w: ReducedWord, i: int) -> Fraction:
        """``w(refpoint(i))``, built from the cached value of w minus its first letter."""
        key = (w, i)
        v = self._values.get(key)
        if v is None:
            if len(w) > 200:
                v = evaluate_word_at(w, self.action, self.refpoint(i))
            elif not w.syllables:
                v = self.refpoint(i)
            else:
                gen, e = w.syllables[0]
                x = self.value(_drop_first(w), i)
                v = self.action[gen](x) if e > 0 else self.action[gen].preimage(x)
            self._values[key] = v
        return v

    def map(self, w: ReducedWord) -> LineMap:
        m = self._maps.get(w)
        if m is None:
            if len(w) <= 1:
                m = evaluate_word(w, self.action)
            else:
                gen, e = w.syllables[-1]
                step = 1 if e > 0 else -1
                head = w.syllables[:-1] + (((gen, e - step),) if e != step else ())
                letter = self.action[gen] if step > 0 else ~self.action[gen]
                m = self.map(ReducedWord(head, w.rank)) * letter
            self._maps[w] = m
        return m

    def compare_maps(self, u: ReducedWord, v: ReducedWord) -> int:
        """Dynamical comparison only; 0 when the maps coincide."""
        for i in range(self.probe_depth):
            a, b = self.value(u, i), self.value(v, i)
            if a != b:
                return sign(a - b)
        mu, mv = self.map(u), self.map(v)
        if mu == mv:
            return 0
        for i in range(self.probe_depth, MAX_REFPOINTS):
            x = self.refpoint(i)
            a, b = mu(x), mv(x)
            if a != b:
                return sign(a - b)
        raise RuntimeError("distinct maps agreed on too many reference points")

    def compare(self, u: ReducedWord, v: ReducedWord) -> int:
        if u == v:
            return 0
        c = self.compare_maps(u, v)
        if c:
            return c
        return self._compare_tied(u, v)

    def _compare_tied(self, u: ReducedWord, v: ReducedWord) -> int:
        self.tiebreak_calls += 1
        tb = self.tiebreak
        if tb is not None:
            c = tb.compare(u, v)
            if c:
                return c
        self.uncertified_ties += 1
        ku, kv = u.shortlex_key(), v.shortlex_key()
        return (ku > kv) - (ku < kv)

    def ranks(self, words: Sequence[ReducedWord]) -> dict[ReducedWord, int]:
        """Same result as sorting with ``compare``, by splitting blocks refpoint by refpoint.

        Blocks are split on pointwise values first; a block still unsplit after
        ``probe_depth`` refpoints is regrouped by map, so only equal maps reach
        the tiebreak.
        """
        out: dict[ReducedWord, int] = {}
        stack = [(list(dict.fromkeys(words)), 0, False)]
        r = 0
        while stack:
            block, i, by_map = stack.pop()
            if len(block) == 1 and not by_map:
                out[block[0]] = r
                r += 1
                continue
            if by_map and len(block) == 1:
                for w in sorted(block[0], key=cmp_to_key(self._compare_tied)):
                    out[w] = r
                    r += 1
                continue
            if i >= MAX_REFPOINTS:
                raise RuntimeError("distinct maps agreed on too many reference points")
            if not by_map and i >= self.probe_depth:
                groups: dict = {}
                for w in block:
                    groups.setdefault(self.map(w), []).append(w)
                block, by_map = list(groups.values()), True
                if len(block) == 1:
                    stack.append((block, i, True))
                    continue
            split: dict = {}
            if by_map:
                x = self.refpoint(i)
                for g in block:
                    split.setdefault(self.map(g[0])(x), []).append(g)
            else:
                for w in block:
                    split.setdefault(self.value(w, i), []).append(w)
            for key in sorted(split, reverse=True):
                stack.append((split[key], i + 1, by_map))
        return out


def _drop_first(w: ReducedWord) -> ReducedWord:
    (gen, e), rest = w.syllables[0], w.syllables[1:]
    step = 1 if e > 0 else -1
    head = ((gen, e - step),) if e != step else ()
    return ReducedWord(head + rest, w.rank)


class ConjugatedOrder(LeftOrder):
    """``u <_h v`` iff ``u h < v h``."""

    def __init__(self, base: LeftOrder, h: ReducedWord):
        self.base = base
        self.h = h
        self.rank = base.rank

    def compare(self, u: ReducedWord, v: ReducedWord) -> int:
        return self.base.compare(u * self.h, v * self.h)


def conjugate_order(o: LeftOrder, h: ReducedWord) -> ConjugatedOrder:
    return ConjugatedOrder(o, h)


@lru_cache(maxsize=None)
def auxiliary_order(k: int = 5) -> DynOrder:
    """Order of the ping-pong certified pair, used to break ties."""
    from .witnesses import certified_free_pair

    return DynOrder(certified_free_pair(k), tiebreak=None)


# violating a verbal property -------------------------------------------------

@dataclass(frozen=True)
class OrderViolationWitness:
    word: ReducedWord
    f: PLHomeo
    g: PLHomeo

    @property
    def f0(self) -> Fraction:
        return self.f(Fraction(0))

    @property
    def g0(self) -> Fraction:
        return self.g(Fraction(0))

    @property
    def w0(self) -> Fraction:
        return evaluate_word_at(self.word, (self.f, self.g), Fraction(0))

    def holds(self) -> bool:
        return self.f0 > 0 and self.g0 > 0 and self.w0 < 0

    def order(self, **kwargs) -> DynOrder:
        return DynOrder((self.f, self.g), **kwargs)


def _build(nodes: dict) -> PLHomeo:
    xs = sorted(nodes)
    return PLHomeo(xs, [nodes[x] for x in xs], 1, 1)


def construct_violation(w: ReducedWord) -> OrderViolationWitness:
    """Maps f, g moving 0 to the right while ``w(f, g)`` moves 0 to the left."""
    if w.syllables and w.is_negative():
        t = PLHomeo.translation(1)
        return OrderViolationWitness(w, t, t)
    dec = decompose_for_construction(w)
    L = len(w)
    M = Fraction(max(2, L))
    X = (L + 1) * M + 1
    half = Fraction(1, 2)
    margin = Fraction(1, 4)

    # right half-line: f is translation by M, g squeezes [0, X] into [1/2, 1]
    g_nodes = {Fraction(0): half, X: Fraction(1)}
    f_right = PLHomeo.translation(M)
    g_right = PLHomeo(list(g_nodes), list(g_nodes.values()), 1, 1)
    z = evaluate_word_at(dec.suffix, (f_right, g_right), Fraction(0))
    p = z - dec.n * M
    fixed = [p - 1]                      # fixed[j] belongs to f for even j, g for odd j
    f_nodes = {p: p + M, fixed[0]: fixed[0]}
    nodes = (f_nodes, g_nodes)
    z = p
    for gen, e in reversed(dec.prefix.syllables):
        phi = fixed[-1] - 1
        target = fixed[-1] - margin
        d = z - phi
        t = 1
        while d / Fraction(2) ** (t * abs(e)) > target - phi:
            t += 1
        c = Fraction(2) ** t
        if e > 0:
            nodes[gen][z] = phi + d / c
        else:
            nodes[gen][phi + d / c] = z
        nodes[gen][phi] = phi
        z = phi + d / c ** abs(e)
        fixed.append(phi)
    f, g = _build(f_nodes), _build(g_nodes)
    if dec.swapped:
        f, g = g, f
    out = OrderViolationWitness(w, f, g)
    if not out.holds():
        raise AssertionError(f"construction failed for {w}")  # exact re-check
    return out


# checks on balls ----------------------------------------------------------------

def is_W_order_on_ball(o: LeftOrder, w: ReducedWord, radius: int):
    """First (shortlex) pair of positive u, v with ``w(u, v)`` negative, else None."""
    if radius < 1:
        raise ValueError("radius must be at least 1")
    positives = [u for u in enumerate_ball(radius, o.rank) if o.sign(u) > 0]
    for u in positives:
        for v in positives:
            if o.sign(w.substitute([u, v])) < 0:
                return u, v
    return None


def agreement_radius(o1: LeftOrder, o2: LeftOrder, max_radius: int) -> int:
    """Largest R <= max_radius such that o1, o2 have the same positive elements in ball R."""
    words = enumerate_ball(max_radius, max(o1.rank, o2.rank))
    for w in words:
        if o1.sign(w) != o2.sign(w):
            return len(w) - 1
    return max_radius


def order_distance(o1: LeftOrder, o2: LeftOrder, max_radius: int) -> Fraction:
    """``1 / (1 + R)``; at R = max_radius this is only an upper bound."""
    return Fraction(1, 1 + agreement_radius(o1, o2, max_radius))


@dataclass(frozen=True)
class ResilientWitness:
    f: ReducedWord
    g: ReducedWord
    h1: ReducedWord
    h2: ReducedWord
    higher: dict = field(default_factory=dict)  # n -> chain holds for f^n, g^n

    def failures(self) -> list[int]:
        return [n for n, ok in sorted(self.higher.items()) if not ok]


def resilient_chain(o: LeftOrder, f, g, h1, h2, n: int = 1) -> bool:
    fn, gn = f ** n, g ** n
    chain = [h1, fn * h1, fn * h2, gn * h1, gn * h2, h2]
    return all(o.compare(a, b) < 0 for a, b in zip(chain, chain[1:]))


def find_resilient_pair(o: LeftOrder, radius: int, n_max: int = 1) -> ResilientWitness | None:
    """Exhaustive search over the ball for ``h1 < f h1 < f h2 < g h1 < g h2 < h2``.

    The first quadruple in lexicographic order of shortlex positions
    ``(f, g, h1, h2)`` is returned; its chain is re-checked for n = 2..n_max.
    """
    if radius < 1 or n_max < 1:
        raise ValueError("radius and n_max must be positive")
    ball = enumerate_ball(radius, o.rank)
    big = enumerate_ball(2 * radius, o.rank)
    where = {w: i for i, w in enumerate(big)}
    prod = np.array([[where[x * y] for y in ball] for x in ball], dtype=np.int64)
    r = o.ranks(big)
    rank = np.array([r[w] for w in big], dtype=np.int64)
    rb = rank[: len(ball)]   # ball words are the first entries of `big`
    best = None
    for h1 in range(len(ball)):
        for h2 in range(len(ball)):
            if rb[h1] >= rb[h2]:
                continue
            a = rank[prod[:, h1]]       # rank of x h1 for every x
            b = rank[prod[:, h2]]
            F = np.nonzero((rb[h1] < a) & (a < b))[0]
            G = np.nonzero((a < b) & (b < rb[h2]))[0]
            if not len(F) or not len(G):
                continue
            ok = b[F][:, None] < a[G][None, :]
            hits = np.argwhere(ok)
            if not len(hits):
                continue
            cand = (int(F[hits[0][0]]), int(G[hits[0][1]]), h1, h2)
            if best is None or cand < best:
                best = cand
        if best is not None and best[0] == 0:
            break
    if best is None:
        return None
    f, g, h1, h2 = (ball[i] for i in best)
    if not resilient_chain(o, f, g, h1, h2, 1):
        raise AssertionError("rank table and direct comparison disagree")
    higher = {n: resilient_chain(o, f, g, h1, h2, n) for n in range(2, n_max + 1)}
    return ResilientWitness(f, g, h1, h2, higher)
