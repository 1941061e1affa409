"""Named PL actions used by the walkthroughs, tests and CLI, plus JSON io for actions and orders."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .exact import q
from .plhomeo import LineMap, PeriodicPLHomeo, PLHomeo, homeo_from_json
from .words import GENERATOR_NAMES, WordError


class FixtureError(ValueError):
    """Malformed action or order file."""


def translations(*shifts) -> tuple[PLHomeo, ...]:
    return tuple(PLHomeo.translation(q(s)) for s in shifts)


def abelian_pair() -> tuple[PLHomeo, PLHomeo]:
    """``x+1`` and ``x+7/5``: commuting, and no short word other than a commutator acts trivially."""
    return translations(1, Fraction(7, 5))


def baumslag_solitar() -> tuple[PLHomeo, PLHomeo]:
    """``a: x+1``, ``b: 2x``."""
    return PLHomeo.translation(1), PLHomeo.affine(2)


def thompson_pair() -> tuple[PLHomeo, PLHomeo]:
    """The usual generators x0, x1 of Thompson's group F, identity off [0, 1]."""
    h = Fraction(1, 2)
    x0 = PLHomeo.supported_on([0, h, Fraction(3, 4), 1], [0, Fraction(1, 4), h, 1])
    x1 = PLHomeo.supported_on([0, h, Fraction(3, 4), Fraction(7, 8), 1],
                              [0, h, Fraction(5, 8), Fraction(3, 4), 1])
    return x0, x1


def circle_zigzag(slope=8, period=1) -> PeriodicPLHomeo:
    """Degree-one lift fixing 0 and period/2, pushing up on the first half-period
    and down on the second, with slope ``slope`` at the repelling points."""
    s, P = q(slope), q(period)
    L = P / 2
    t = L / (s + 1)
    xs = [0, t, L, L + s * t]
    ys = [0, s * t, L, L + t]
    return PeriodicPLHomeo(P, xs, ys)


def circle_schottky_pair(slope=8) -> tuple[PeriodicPLHomeo, PeriodicPLHomeo]:
    """Two lifts of a Schottky-type pair of circle maps; b is a rotated by a quarter turn."""
    a = circle_zigzag(slope)
    r = PeriodicPLHomeo.translation(Fraction(1, 4))
    return a, r * a * ~r


NAMED_ACTIONS = {
    "translations": lambda: translations(1, Fraction(1, 3)),
    "abelian": abelian_pair,
    "bs12": baumslag_solitar,
    "thompson": thompson_pair,
    "circle-schottky": circle_schottky_pair,
}


def action_to_json(action, refpoints=None) -> dict:
    out = {"action": {GENERATOR_NAMES[i]: h.to_json() for i, h in enumerate(action)}}
    if refpoints:
        out["refpoints"] = [str(q(x)) for x in refpoints]
    return out


def action_from_json(obj: Mapping) -> tuple[tuple[LineMap, ...], tuple[Fraction, ...]]:
    """Generators in alphabet order, and the optional reference points."""
    if not isinstance(obj, Mapping) or "action" not in obj:
        raise FixtureError("expected an object with an 'action' field")
    raw = obj["action"]
    if not isinstance(raw, Mapping) or not raw:
        raise FixtureError("'action' must be a nonempty object of generator name -> map")
    names = list(raw)
    for name in names:
        if name not in GENERATOR_NAMES:
            raise FixtureError(f"unknown generator name {name!r}")
    expected = list(GENERATOR_NAMES[: len(names)])
    if sorted(names, key=GENERATOR_NAMES.index) != expected:
        raise FixtureError(f"generators must be {', '.join(expected)}")
    gens = []
    for name in expected:
        try:
            gens.append(homeo_from_json(raw[name]))
        except (KeyError, TypeError, ValueError) as exc:
            raise FixtureError(f"action.{name}: {exc}") from exc
    try:
        refs = tuple(q(x) for x in obj.get("refpoints", ()))
    except (TypeError, ValueError) as exc:
        raise FixtureError(f"refpoints: {exc}") from exc
    return tuple(gens), refs


def load_json(path) -> dict:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FixtureError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def load_action(path):
    try:
        return action_from_json(load_json(path))
    except WordError as exc:
        raise FixtureError(str(exc)) from exc
