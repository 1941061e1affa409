"""Command-line entry point.

Exit status: 0 when the command ran and the answer is positive (or purely
informational), 1 for a mathematical negative (certificate rejected, order
property violated, no violation possible), 2 for usage or fixture errors.

Action files may be given as ``@name`` for one of the built-in actions.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import actions as fixtures
from .classify import MarkedAction, classify
from .exact import fmt
from .orders import (
    DynOrder,
    agreement_radius,
    construct_violation,
    find_resilient_pair,
    is_W_order_on_ball,
)
from .pingpong import CertificateError, PingPongCertificate, verify_certificate, word_image
from .plhomeo import PLError
from .words import NotMixedSign, PureBPower, WordError, iter_mixed_sign, random_word, syllable_normal_form, word
from .witnesses import certificate_for, no_law_witness

OK, NEGATIVE, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, payload, lines=()):
    """Human-readable lines on stdout; the JSON payload to --out or, failing that, stdout."""
    for line in lines:
        print(line)
    if payload is None:
        return
    text = json.dumps(payload, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)


def _need_word(args):
    if not args.word:
        raise UsageError("--word is required")
    return word(args.word)


def _load_action(source: str):
    if source.startswith("@"):
        name = source[1:]
        if name not in fixtures.NAMED_ACTIONS:
            raise UsageError(f"unknown built-in action {name!r}; choose from {', '.join(fixtures.NAMED_ACTIONS)}")
        return fixtures.NAMED_ACTIONS[name](), ()
    return fixtures.load_action(source)


def _load_order(source: str) -> DynOrder:
    gens, refs = _load_action(source)
    return DynOrder(gens, refs)


def _load_certificate(path) -> PingPongCertificate:
    return PingPongCertificate.from_json(fixtures.load_json(path))


# subcommands -------------------------------------------------------------------

def cmd_reduce(args):
    w = _need_word(args)
    print(w)
    return OK


def _violation_report(v):
    return {
        "word": str(v.word),
        "f": v.f.to_json(),
        "g": v.g.to_json(),
        "f(0)": fmt(v.f0),
        "g(0)": fmt(v.g0),
        "W(f,g)(0)": fmt(v.w0),
    }


def cmd_violate(args):
    if args.word:
        try:
            v = construct_violation(word(args.word))
        except NotMixedSign as exc:
            print(f"no violation: {exc}")
            return NEGATIVE
        _emit(args, _violation_report(v), [
            f"f(0) = {fmt(v.f0)} > 0",
            f"g(0) = {fmt(v.g0)} > 0",
            f"W(f,g)(0) = {fmt(v.w0)} < 0",
        ])
        return OK
    rng = random.Random(args.seed)
    words = iter_mixed_sign(rng, args.max_length)
    rows = []
    for _ in range(args.count):
        v = construct_violation(next(words))
        rows.append({"word": str(v.word), "W(f,g)(0)": fmt(v.w0)})
    _emit(args, rows, [f"{len(rows)} seeded words violated (seed {args.seed})"])
    return OK


def cmd_verify_cert(args):
    verdict = verify_certificate(_load_certificate(args.file))
    print(verdict)
    return OK if verdict.ok else NEGATIVE


def _image_report(img):
    return {
        "word": str(img.word),
        "conjugated": str(img.conjugated),
        "conjugator_power": img.conjugator_power,
        "chain": [{"step": s.label, "image": s.image.to_json(), "inside": s.target, "ok": s.ok} for s in img.chain],
        "x": fmt(img.x_original),
        "W(x)": fmt(img.image_original),
    }


def cmd_word_image(args):
    c = _load_certificate(args.file)
    try:
        img = word_image(c, _need_word(args))
    except CertificateError as exc:
        print(f"rejected: {exc}")
        return NEGATIVE
    lines = [f"{s.label} -> {s.target}: {'ok' if s.ok else 'fails'}" for s in img.chain]
    lines.append(f"W moves {fmt(img.x_original)} to {fmt(img.image_original)}")
    _emit(args, _image_report(img), lines)
    return OK


def cmd_gen_witness(args):
    if args.k is None or args.k < 1:
        raise UsageError("--k must be a positive integer")
    c = certificate_for(args.k)
    verdict = verify_certificate(c)
    _emit(args, c.to_json(), [f"k = {c.k}, N = {c.power}: {verdict}"])
    return OK if verdict.ok else NEGATIVE


def cmd_no_law(args):
    if args.word:
        words = [word(args.word)]
    else:
        if args.k is None:
            raise UsageError("give --word, or --k with --count and --seed for a random corpus")
        rng = random.Random(args.seed)
        words = []
        while len(words) < args.count:
            w = random_word(rng, rng.randint(1, args.max_length))
            try:
                if syllable_normal_form(w).k <= args.k:
                    words.append(w)
            except PureBPower:
                words.append(w)
    witnesses = [no_law_witness(w) for w in words]
    if args.word:
        wit = witnesses[0]
        r = wit.report()
        payload = {"certificate": wit.certificate.to_json(), "witness": r}
        _emit(args, payload, [f"{r['two_letter_word']} with k = {r['k']}, N = {r['N']} moves {r['x']} to {r['W(x)']}"])
    else:
        reports = [wit.report() for wit in witnesses]
        _emit(args, reports, [f"{len(reports)} seeded words are not laws (seed {args.seed})"])
    return OK


def cmd_classify(args):
    gens, _ = _load_action(args.file)
    result = classify(MarkedAction(gens, args.depth))
    _emit(args, result.to_json(), [f"stage: {t}" for t in result.trace] + [result.verdict])
    return OK


def cmd_order_compare(args):
    o = _load_order(args.file)
    u, v = word(args.u, o.rank), word(args.v, o.rank)
    c = o.compare(u, v)
    rel = {-1: "<", 0: "=", 1: ">"}[c]
    note = " (decided by tiebreak)" if o.tiebreak_calls else ""
    print(f"{u} {rel} {v}{note}")
    return OK


def cmd_order_check_w(args):
    o = _load_order(args.file)
    w = _need_word(args)
    bad = is_W_order_on_ball(o, w, args.radius)
    if bad is None:
        print(f"pass: {w} is positive on positive pairs in the ball of radius {args.radius}")
        return OK
    u, v = bad
    print(f"counterexample: u = {u}, v = {v}, {w}(u, v) = {w.substitute([u, v])} is negative")
    return NEGATIVE


def cmd_order_dist(args):
    o1, o2 = _load_order(args.file), _load_order(args.other)
    R = agreement_radius(o1, o2, args.radius)
    bound = "<= " if R == args.radius else ""
    print(f"agreement radius {R}, distance {bound}1/{1 + R}")
    return OK


def cmd_order_resilient(args):
    o = _load_order(args.file)
    wit = find_resilient_pair(o, args.radius, args.n_max)
    if wit is None:
        print(f"no resilient pair in the ball of radius {args.radius}")
        return OK
    print(f"resilient pair: f = {wit.f}, g = {wit.g}, h1 = {wit.h1}, h2 = {wit.h2}")
    for n, ok in sorted(wit.higher.items()):
        print(f"  n = {n}: {'holds' if ok else 'FAILS'}")
    return NEGATIVE


# parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lineorders", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON result to this file")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("reduce", parents=[common], help="print the reduced form of a word")
    s.add_argument("--word")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("violate", parents=[common], help="maps f, g > id with W(f, g) < id")
    s.add_argument("--word")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=200)
    s.add_argument("--max-length", type=int, default=16)
    s.set_defaults(func=cmd_violate)

    s = sub.add_parser("verify-cert", parents=[common], help="check a ping-pong certificate")
    s.add_argument("file")
    s.set_defaults(func=cmd_verify_cert)

    s = sub.add_parser("word-image", parents=[common], help="replay a word through a certificate")
    s.add_argument("file")
    s.add_argument("--word")
    s.set_defaults(func=cmd_word_image)

    s = sub.add_parser("gen-witness", parents=[common], help="certificate for the k-th intertwined pair")
    s.add_argument("--k", type=int)
    s.set_defaults(func=cmd_gen_witness)

    s = sub.add_parser("no-law", parents=[common], help="show that a word is not a law")
    s.add_argument("--word")
    s.add_argument("--k", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=100)
    s.add_argument("--max-length", type=int, default=12)
    s.set_defaults(func=cmd_no_law)

    s = sub.add_parser("classify", parents=[common], help="type I / II / III verdict for an action")
    s.add_argument("file")
    s.add_argument("--depth", type=int, default=8)
    s.set_defaults(func=cmd_classify)

    o = sub.add_parser("order", help="left orders from actions")
    osub = o.add_subparsers(dest="order_command", required=True)
    s = osub.add_parser("compare", parents=[common])
    s.add_argument("file")
    s.add_argument("u")
    s.add_argument("v")
    s.set_defaults(func=cmd_order_compare)
    s = osub.add_parser("check-w", parents=[common])
    s.add_argument("file")
    s.add_argument("--word")
    s.add_argument("--radius", type=int, default=3)
    s.set_defaults(func=cmd_order_check_w)
    s = osub.add_parser("dist", parents=[common])
    s.add_argument("file")
    s.add_argument("other")
    s.add_argument("--radius", type=int, default=5)
    s.set_defaults(func=cmd_order_dist)
    s = osub.add_parser("resilient", parents=[common])
    s.add_argument("file")
    s.add_argument("--radius", type=int, default=3)
    s.add_argument("--n-max", type=int, default=5)
    s.set_defaults(func=cmd_order_resilient)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("radius", "depth", "n_max", "count"):
        if getattr(args, name, 1) is not None and getattr(args, name, 1) < 1:
            parser.error(f"--{name.replace('_', '-')} must be positive")
    try:
        return args.func(args)
    except (UsageError, WordError, PLError, fixtures.FixtureError, CertificateError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
