"""Command-line entry point: ``slstar <command> ...``.

Every command builds a Report, prints it and writes it under ``--out``.
Exit codes: 0 pass, 1 mathematical refusal, 2 verification failure,
3 usage or parse error.
"""
from __future__ import annotations

import argparse
import sys

from . import euclid
from .adelic import (
    adelic_involute,
    adelic_is_symmetric,
    adelic_model,
    divide_adelic,
    parse_adele,
    support_split,
)
from .errors import (
    AlgebraError,
    DescriptorMismatch,
    HypothesesNotMet,
    InfiniteRing,
    InvalidParameter,
    NotCoprime,
    NotSLStar,
    NotStarEuclidean,
    ParseError,
    SymmetryViolation,
    Unsupported,
    UsageError,
)
from .experiments import DEFAULT_SEED, experiment_names, run_experiment
from .group import closure_bfs, enumerate_sl_star, factor, factor_path, m2, sl_star_violation
from .local import classify_star_local
from .report import EXIT_USAGE, FAIL, REFUSAL, Report
from .rings import ring as as_ring
from .selftest import ring_selftest

REFUSALS = (NotStarEuclidean, NotCoprime, SymmetryViolation, HypothesesNotMet, NotSLStar)
USAGE_ERRORS = (ParseError, InvalidParameter, Unsupported, DescriptorMismatch, InfiniteRing, UsageError)

ANCHORS = {
    "ring": "ring axioms and the anti-automorphism law",
    "classify": "a *-local ring has maximal spectrum {p, p*}",
    "divide": "one division step a = s c + r with s symmetric and r a unit",
    "slstar": "SL_*(2,A) is generated by the Bruhat elements",
    "adelic": "adelic division assembled from local and integral solutions",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="slstar", description="Constructive *-Euclidean division and SL_* groups.")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized searches")
    p.add_argument("--out", default="./reports", help="directory for report files")
    p.add_argument("--quiet", action="store_true", help="do not print the report")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("ring", help="ring invariant suite")
    r.add_argument("action", choices=["selftest"])
    r.add_argument("descriptor")
    r.add_argument("--samples", type=int, default=10_000)

    c = sub.add_parser("classify", help="*-local classification")
    c.add_argument("descriptor")

    d = sub.add_parser("divide", help="one division step a = s c + r")
    d.add_argument("descriptor")
    d.add_argument("a")
    d.add_argument("c")

    s = sub.add_parser("slstar", help="SL_*(2, A) membership, factorisation and enumeration")
    s.add_argument("action", choices=["check", "factor", "closure", "enumerate"])
    s.add_argument("descriptor")
    s.add_argument("element", nargs="?")
    s.add_argument("--cap", type=int, default=10 ** 7)

    a = sub.add_parser("adelic", help="finite-support adelic matrices")
    a.add_argument("action", choices=["divide", "split", "involute"])
    a.add_argument("base")
    a.add_argument("literals", nargs="+")
    a.add_argument("--n", type=int, default=2, help="matrix size")
    a.add_argument("--places", default="", help="comma-separated place set for split")

    e = sub.add_parser("experiment", help="canned acceptance experiments")
    e.add_argument("name", help=", ".join(experiment_names()))
    return p


# ---------------------------------------------------------------------------
# commands

def cmd_ring(args, rep: Report):
    res = ring_selftest(args.descriptor, args.samples, args.seed)
    rep.descriptor = res.descriptor
    rep.params["samples"] = args.samples
    rep.extend(res.records())
    if not res.passed:
        rep.verdict = FAIL


def cmd_classify(args, rep: Report):
    cls = classify_star_local(args.descriptor)
    rep.descriptor = cls.descriptor
    rep.extend(cls.records())


def cmd_divide(args, rep: Report):
    A = as_ring(args.descriptor)
    rep.descriptor = A.descriptor()
    a, c = A.parse(args.a), A.parse(args.c)
    rep.add("a", A.format(a))
    rep.add("c", A.format(c))
    try:
        chain = euclid.divide(A, a, c, args.seed)
    except NotStarEuclidean as exc:
        rep.verdict = REFUSAL
        rep.add("refusal", str(exc))
        if exc.certificate is not None:
            rep.extend(exc.certificate.records(), prefix="certificate.")
        return
    rep.extend(chain.records())
    rep.add("verified", chain.verify())
    if not chain.verify():
        rep.verdict = FAIL


def _group_element(A, text):
    if text is None:
        raise UsageError("this action needs a group element literal")
    return m2(A).parse(text)


def cmd_slstar(args, rep: Report):
    A = as_ring(args.descriptor)
    rep.descriptor = A.descriptor()
    rep.params["action"] = args.action
    if args.action == "check":
        g = _group_element(A, args.element)
        bad = sl_star_violation(A, g)
        rep.add("element", m2(A).format(g))
        rep.add("member", bad is None)
        if bad is not None:
            rep.add("violated", bad)
            rep.verdict = REFUSAL
    elif args.action == "factor":
        g = _group_element(A, args.element)
        word = factor(A, g, args.seed)
        rep.add("element", m2(A).format(g))
        rep.add("path", factor_path(A, g))
        rep.add("word", word.serialize(A))
        rep.add("length", len(word))
        ok = word.evaluate(A) == g
        rep.add("verified", ok)
        if not ok:
            rep.verdict = FAIL
    elif args.action == "closure":
        res = closure_bfs(A, args.cap)
        rep.add("generators", res.generators)
        rep.add("closure_size", res.size)
    else:
        rep.add("group_size", len(enumerate_sl_star(A, args.cap)))


def _need(literals, k, action):
    if len(literals) != k:
        raise UsageError(f"adelic {action} takes {k} literal(s), got {len(literals)}")


def cmd_adelic(args, rep: Report):
    M = adelic_model(args.base, args.n)
    rep.descriptor = M.descriptor()
    rep.params["action"] = args.action
    lits = [parse_adele(M, t) for t in args.literals]
    if args.action == "divide":
        _need(lits, 2, "divide")
        a, c = lits
        rep.add("a", a.format())
        rep.add("c", c.format())
        try:
            res = divide_adelic(a, c, args.seed)
        except NotStarEuclidean as exc:
            rep.verdict = REFUSAL
            rep.add("refusal", str(exc))
            if exc.witness is not None:
                rep.add("witness.a", exc.witness[0].format())
                rep.add("witness.c", exc.witness[1].format())
            if exc.certificate is not None:
                rep.extend(exc.certificate.records(), prefix="certificate.")
            return
        rep.extend(res.records())
        ok = res.verify()
        rep.add("verified", ok)
        if not ok:
            rep.verdict = FAIL
    elif args.action == "split":
        _need(lits, 1, "split")
        places = [p for p in args.places.split(",") if p.strip()]
        rep.params["places"] = ",".join(places)
        a_S, a_rest = support_split(lits[0], [p.strip() for p in places])
        rep.add("a_S", a_S.format())
        rep.add("a_rest", a_rest.format())
    else:
        _need(lits, 1, "involute")
        x = adelic_involute(lits[0])
        rep.add("involute", x.format())
        rep.add("symmetric", adelic_is_symmetric(lits[0]))


COMMANDS = {
    "ring": ("ring-selftest", cmd_ring),
    "classify": ("classify", cmd_classify),
    "divide": ("divide", cmd_divide),
    "slstar": ("slstar", cmd_slstar),
    "adelic": ("adelic", cmd_adelic),
}


def _replay_argv(argv) -> str:
    """The command line without flags that do not affect the records."""
    out, skip = [], False
    for a in argv:
        if skip:
            skip = False
        elif a == "--out":
            skip = True
        elif not (a == "--quiet" or a.startswith("--out=")):
            out.append(a)
    return " ".join(out)


def _descriptor_arg(args) -> str:
    return getattr(args, "descriptor", None) or getattr(args, "base", "")


def run(argv) -> tuple[Report | None, int]:
    """Execute one command line; returns the report (if any) and the exit code."""
    argv = list(argv)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return None, EXIT_USAGE
    try:
        if args.command == "experiment":
            rep = run_experiment(args.name, args.seed)
            stem = args.name
        else:
            name, fn = COMMANDS[args.command]
            rep = Report(name, _descriptor_arg(args), ANCHORS[args.command], args.seed)
            rep.params["argv"] = _replay_argv(argv)
            fn(args, rep)
            stem = f"{name}-{rep.digest()[:12]}"
    except USAGE_ERRORS as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return None, EXIT_USAGE
    except REFUSALS as exc:
        rep.verdict = REFUSAL
        rep.add("refusal", f"{type(exc).__name__}: {exc}")
        stem = f"{rep.experiment}-{rep.digest()[:12]}"
    except AlgebraError as exc:
        rep.verdict = FAIL
        rep.add("error", f"{type(exc).__name__}: {exc}")
        stem = f"{rep.experiment}-{rep.digest()[:12]}"
    if not args.quiet:
        sys.stdout.write(rep.render())
    path = rep.write(args.out, stem)
    print(f"report written to {path}", file=sys.stderr)
    return rep, rep.exit_code


def main(argv=None) -> int:
    _rep, code = run(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
