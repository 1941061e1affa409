"""Rational parsing/printing and the +-infinity sentinels used for rays."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator, Union

INF = math.inf
Number = Union[Fraction, float]  # float only ever as +-INF


def q(value) -> Fraction:
    """Exact rational from int, Fraction or a ``"p/q"`` string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"refusing inexact value {value!r}")


def endpoint(value) -> Number:
    if isinstance(value, str) and value.strip() in ("inf", "+inf", "-inf"):
        return -INF if value.strip().startswith("-") else INF
    if isinstance(value, float) and math.isinf(value):
        return value
    return q(value)


def fmt(x: Number) -> str:
    if isinstance(x, float):
        if x == INF:
            return "inf"
        if x == -INF:
            return "-inf"
        raise TypeError("finite floats are not allowed")
    return str(x)


def sign(x) -> int:
    return (x > 0) - (x < 0)


def rationals_by_height() -> Iterator[Fraction]:
    """0, 1, -1, 1/2, -1/2, 2, -2, 1/3, -1/3, 2/3, -2/3, 3/2, ...

    Height of p/q in lowest terms is max(|p|, q); within a height the positive
    values come in increasing order, each followed by its negative.
    """
    yield Fraction(0)
    h = 1
    while True:
        vals = set()
        for d in range(1, h + 1):
            for n in (h,) if d < h else range(1, h + 1):
                f = Fraction(n, d)
                if max(f.numerator, f.denominator) == h:
                    vals.add(f)
        for f in sorted(vals):
            yield f
            yield -f
        h += 1
