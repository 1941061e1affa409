"""Reduced words in free groups, stored as syllables.

A word is a tuple of ``(generator, exponent)`` pairs with nonzero exponents
and no two neighbours on the same generator.  Generators are numbered from 0
and printed as ``a, b, c, d, f, g, ...`` (``e`` is reserved for the identity).
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

GENERATOR_NAMES = "abcdfghijklmnopqrstuvwxyz"

_TOKEN = re.compile(r"\s*(?:(e)|([a-df-z])\s*(?:\^\s*([+-]?\s*\d+))?)\s*")


class WordError(ValueError):
    pass


class PureBPower(WordError):
    """The word has no syllable on the first generator."""


class NotMixedSign(WordError):
    """The word has exponents of one sign only."""


def _merge(syllables: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    out: list[tuple[int, int]] = []
    for gen, exp in syllables:
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            total = out[-1][1] + exp
            out.pop()
            if total:
                out.append((gen, total))
        else:
            out.append((gen, exp))
    return tuple(out)


@dataclass(frozen=True)
class ReducedWord:
    syllables: tuple[tuple[int, int], ...] = ()
    rank: int = field(default=2, compare=False)

    def __post_init__(self):
        if self.rank < 1:
            raise WordError("alphabet size must be positive")
        prev = None
        for gen, exp in self.syllables:
            if exp == 0 or gen == prev or not 0 <= gen < self.rank:
                raise WordError(f"not a reduced syllable sequence: {self.syllables}")
            prev = gen

    # construction -------------------------------------------------------
    @classmethod
    def identity(cls, rank: int = 2) -> ReducedWord:
        return cls((), rank)

    @classmethod
    def generator(cls, index: int, rank: int = 2) -> ReducedWord:
        return cls(((index, 1),), rank)

    @classmethod
    def from_syllables(cls, syllables: Iterable[tuple[int, int]], rank: int = 2) -> ReducedWord:
        return cls(_merge(syllables), rank)

    @classmethod
    def parse(cls, text: str, rank: int | None = None) -> ReducedWord:
        """Parse ``"a^-1 b a^2"``; juxtaposition is multiplication."""
        pos, raw = 0, []
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise WordError(f"cannot parse word {text!r} at position {pos}")
            pos = m.end()
            if m.group(1):
                continue
            gen = GENERATOR_NAMES.index(m.group(2))
            exp = int(m.group(3).replace(" ", "")) if m.group(3) else 1
            raw.append((gen, exp))
        needed = max((g for g, _ in raw), default=-1) + 1
        if rank is None:
            rank = max(2, needed)
        elif needed > rank:
            raise WordError(f"word {text!r} uses more than {rank} generators")
        return cls(_merge(raw), rank)

    # structure ----------------------------------------------------------
    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def letters(self) -> list[int]:
        """Signed letters: generator ``i`` is ``i + 1``, its inverse ``-(i + 1)``."""
        out = []
        for gen, exp in self.syllables:
            letter = gen + 1 if exp > 0 else -(gen + 1)
            out.extend([letter] * abs(exp))
        return out

    def is_identity(self) -> bool:
        return not self.syllables

    def is_positive(self) -> bool:
        return all(e > 0 for _, e in self.syllables)

    def is_negative(self) -> bool:
        return all(e < 0 for _, e in self.syllables)

    def is_mixed_sign(self) -> bool:
        return any(e > 0 for _, e in self.syllables) and any(e < 0 for _, e in self.syllables)

    def syllable_count(self, gen: int) -> int:
        return sum(1 for g, _ in self.syllables if g == gen)

    def shortlex_key(self) -> tuple:
        return len(self), tuple(2 * (abs(x) - 1) + (x < 0) for x in self.letters())

    # group operations ---------------------------------------------------
    def __mul__(self, other: ReducedWord) -> ReducedWord:
        return ReducedWord(_merge(self.syllables + other.syllables), max(self.rank, other.rank))

    def __invert__(self) -> ReducedWord:
        return ReducedWord(tuple((g, -e) for g, e in reversed(self.syllables)), self.rank)

    inverse = __invert__

    def __pow__(self, n: int) -> ReducedWord:
        base = self if n >= 0 else ~self
        out = ReducedWord.identity(self.rank)
        for _ in range(abs(n)):
            out = out * base
        return out

    def conjugate(self, h: ReducedWord) -> ReducedWord:
        """``h * self * h^-1``."""
        return h * self * ~h

    def swap_ab(self) -> ReducedWord:
        swap = {0: 1, 1: 0}
        return ReducedWord(tuple((swap.get(g, g), e) for g, e in self.syllables), self.rank)

    def substitute(self, images: Sequence[ReducedWord]) -> ReducedWord:
        """Apply the homomorphism sending generator ``i`` to ``images[i]``."""
        rank = max((w.rank for w in images), default=self.rank)
        out = ReducedWord.identity(rank)
        for gen, exp in self.syllables:
            out = out * images[gen] ** exp
        return out

    def __str__(self) -> str:
        if not self.syllables:
            return "e"
        parts = []
        for gen, exp in self.syllables:
            name = GENERATOR_NAMES[gen]
            parts.append(name if exp == 1 else f"{name}^{exp}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"ReducedWord({str(self)!r})"


def word(text: str, rank: int | None = None) -> ReducedWord:
    return ReducedWord.parse(text, rank)


def reduce(raw: Iterable[int], rank: int = 2) -> ReducedWord:
    """Freely reduce a sequence of signed letters (``±(i+1)``)."""
    syl = []
    for letter in raw:
        if letter == 0 or abs(letter) > rank:
            raise WordError(f"bad letter {letter} for alphabet of size {rank}")
        syl.append((abs(letter) - 1, 1 if letter > 0 else -1))
    return ReducedWord(_merge(syl), rank)


def engel(u: ReducedWord, v: ReducedWord, n: int) -> ReducedWord:
    """Iterated commutator ``[u, v]_n`` with ``[u, v]_1 = u v u^-1 v^-1``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    c = u
    for _ in range(n):
        c = c * v * ~c * ~v
    return c


def law_to_two_letters(w: ReducedWord) -> ReducedWord:
    """Substitute ``x_i -> a^-i b a^i``; injective on the free group."""
    if w.is_identity():
        raise WordError("empty word")
    a, b = ReducedWord.generator(0), ReducedWord.generator(1)
    images = [a ** (-i) * b * a ** i for i in range(w.rank)]
    return w.substitute(images)


@dataclass(frozen=True)
class SyllableForm:
    """``a^{n_k} b^{m_{k-1}} ... b^{m_1} a^{n_1} = a^p w a^-p``.

    ``a_exponents`` lists ``n_1..n_k`` and ``b_exponents`` lists ``m_1..m_{k-1}``,
    both read from the right end of the word.
    """

    word: ReducedWord
    conjugated: ReducedWord
    conjugator_power: int
    a_exponents: tuple[int, ...]
    b_exponents: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.a_exponents)

    def reassemble(self) -> ReducedWord:
        syl = []
        for i in reversed(range(self.k)):
            syl.append((0, self.a_exponents[i]))
            if i:
                syl.append((1, self.b_exponents[i - 1]))
        w = ReducedWord.from_syllables(syl, self.word.rank)
        a = ReducedWord.generator(0, self.word.rank)
        return a ** (-self.conjugator_power) * w * a ** self.conjugator_power


def _a_bracketed(w: ReducedWord) -> bool:
    return bool(w.syllables) and w.syllables[0][0] == 0 and w.syllables[-1][0] == 0


def syllable_normal_form(w: ReducedWord) -> SyllableForm:
    """Conjugate by the smallest power of ``a`` so the word starts and ends in ``a``."""
    if w.rank > 2 or any(g > 1 for g, _ in w.syllables):
        raise WordError("syllable form needs a two-letter word")
    if w.syllable_count(0) == 0:
        raise PureBPower(f"{w} is a power of b")
    a = ReducedWord.generator(0, w.rank)
    bound = len(w)
    for p in sorted(range(-bound, bound + 1), key=lambda t: (abs(t), t < 0)):
        c = a ** p * w * a ** (-p)
        if _a_bracketed(c):
            a_exp = tuple(e for g, e in reversed(c.syllables) if g == 0)
            b_exp = tuple(e for g, e in reversed(c.syllables) if g == 1)
            return SyllableForm(w, c, p, a_exp, b_exp)
    raise AssertionError(f"no conjugate of {w} begins and ends with a")  # unreachable


@dataclass(frozen=True)
class Decomposition:
    """``w = W1 a^-n W2`` after an optional swap of ``a`` and ``b``."""

    prefix: ReducedWord
    n: int
    suffix: ReducedWord
    swapped: bool

    def reassemble(self) -> ReducedWord:
        a = ReducedWord.generator(0, self.prefix.rank)
        w = self.prefix * a ** (-self.n) * self.suffix
        return w.swap_ab() if self.swapped else w


def decompose_for_construction(w: ReducedWord) -> Decomposition:
    if any(g > 1 for g, _ in w.syllables):
        raise WordError("decomposition needs a two-letter word")
    if not w.is_mixed_sign():
        raise NotMixedSign(
            f"{w} is not mixed-sign: positive words are positive in every left order, "
            "negative words negative"
        )
    syl = w.syllables
    j = len(syl)
    while syl[j - 1][1] > 0:
        j -= 1
    gen, exp = syl[j - 1]
    swapped = gen == 1
    if swapped:
        w = w.swap_ab()
        syl = w.syllables
    prefix = ReducedWord(syl[: j - 1], w.rank)
    suffix = ReducedWord(syl[j:], w.rank)
    return Decomposition(prefix, -exp, suffix, swapped)


def enumerate_ball(radius: int, rank: int = 2) -> list[ReducedWord]:
    """All reduced words of length at most ``radius``, in shortlex order."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    letters = [s * (i + 1) for i in range(rank) for s in (1, -1)]
    level: list[list[int]] = [[]]
    out = [ReducedWord.identity(rank)]
    for _ in range(radius):
        nxt = []
        for lw in level:
            for x in letters:
                if lw and lw[-1] == -x:
                    continue
                nxt.append(lw + [x])
        out.extend(reduce(lw, rank) for lw in nxt)
        level = nxt
    return out


def ball_size(radius: int, rank: int = 2) -> int:
    return 1 + sum(2 * rank * (2 * rank - 1) ** (l - 1) for l in range(1, radius + 1))


def random_word(rng: random.Random, length: int, rank: int = 2) -> ReducedWord:
    """A uniformly random reduced word of exactly ``length`` letters."""
    letters: list[int] = []
    choices = [s * (i + 1) for i in range(rank) for s in (1, -1)]
    while len(letters) < length:
        x = rng.choice(choices)
        if letters and letters[-1] == -x:
            continue
        letters.append(x)
    return reduce(letters, rank)


def iter_mixed_sign(rng: random.Random, max_length: int, rank: int = 2) -> Iterator[ReducedWord]:
    while True:
        w = random_word(rng, rng.randint(2, max_length), rank)
        if w.is_mixed_sign():
            yield w
