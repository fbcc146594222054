"""Command-line front end.

Exit codes: 0 on success (or a passing verdict), 1 when a law suite,
example or verification fails, 2 on usage or input errors.  Every error
is reported as a single line on stderr.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, TextIO

from .. import polarity, powercone, prevcore, shadow, transforms
from ..exactgeo import DimensionError, fmt_point, fmt_rat, parse_point
from ..lawlab import MUTANTS, REGISTRY, inject, reproduce_example, run_law_suite, suite_passed
from ..lawlab.examples import UnknownExample
from ..prevcore import Incomparable, PostconditionFailure, Prevision, describe
from ..transforms import Flavor, FlavorError
from . import documents as docs
from .documents import DocumentError

PROG = "prevlab"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # one-line diagnostics instead of the usage dump
        raise UsageError(message)


# -- argument helpers --------------------------------------------------------------------


def _read(path: str, option: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"{option} {path}: cannot read ({exc.strerror})") from None


def _with_source(option: str, path: str, fn: Callable[[str], object]):
    try:
        return fn(_read(path, option))
    except DocumentError as exc:
        raise UsageError(f"{option} {path}: {exc}") from None
    except (ValueError, DimensionError) as exc:
        raise UsageError(f"{option} {path}: {exc}") from None


def _prevision(path: str, option: str):
    return _with_source(option, path, docs.load_prevision)


def _point(text: str, option: str = "--at"):
    try:
        return parse_point(text)
    except (ValueError, ZeroDivisionError, DimensionError) as exc:
        raise UsageError(f"{option}: malformed point {text!r} ({exc})") from None


def _rational(text: str, option: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{option}: not a rational: {text!r}") from None


def _at(args, P: Prevision):
    if args.at is not None:
        h = _point(args.at)
    else:
        pts = _with_source("--at-file", args.at_file, docs.load_points)
        if len(pts) != 1:
            raise UsageError(f"--at-file {args.at_file}: points: expected exactly one point")
        h = pts[0]
    if len(h) != P.n:
        raise UsageError(f"--at: expected {P.n} coordinates, got {len(h)}")
    return h


def _flavor(args, declared: Flavor) -> Flavor:
    return Flavor(args.flavor) if getattr(args, "flavor", None) else declared


# -- commands ---------------------------------------------------------------------------------


def cmd_eval(args, out: TextIO) -> int:
    P, _ = _prevision(args.P, "-P")
    out.write(fmt_rat(prevcore.eval_prevision(P, _at(args, P))) + "\n")
    return 0


def cmd_check(args, out: TextIO) -> int:
    P, _ = _prevision(args.P, "-P")
    flags = prevcore.classify(P)
    names = ("sublinear", "superlinear", "subnormalized", "normalized")
    if args.json:
        out.write(docs.dumps({name: getattr(flags, name) for name in names}))
    else:
        for name in names:
            out.write(f"{name}: {'true' if getattr(flags, name) else 'false'}\n")
    return 0


def cmd_compare(args, out: TextIO) -> int:
    A, _ = _prevision(args.A, "A")
    B, _ = _prevision(args.B, "B")
    if A.n != B.n:
        raise UsageError(f"B {args.B}: n: expected {A.n}, got {B.n}")
    res = prevcore.compare(A, B)
    if isinstance(res, Incomparable):
        out.write(f"incomparable A>B at {fmt_point(res.p_above)} B>A at {fmt_point(res.q_above)}\n")
    else:
        out.write(res.value + "\n")
    return 0


def cmd_transform(args, out: TextIO) -> int:
    if args.op in ("min", "sup"):
        if args.S is None or args.P is not None:
            raise UsageError(f"transform {args.op}: needs -S FILE (and no -P)")
        x = _with_source("-S", args.S, docs.load_hyper)
        if args.op == "min":
            if not isinstance(x, powercone.SmythGen):
                raise UsageError(f"-S {args.S}: kind: transform min needs a smyth element")
            out.write(docs.dump_prevision(transforms.minP(x)))
        else:
            if not isinstance(x, powercone.HoareGen):
                raise UsageError(f"-S {args.S}: kind: transform sup needs a hoare element")
            out.write(docs.dump_prevision(transforms.supP(x)))
        return 0
    if args.P is None or args.S is not None:
        raise UsageError(f"transform {args.op}: needs -P FILE (and no -S)")
    P, declared = _prevision(args.P, "-P")
    fl = _flavor(args, declared)
    w = transforms.nimP(P, fl) if args.op == "nim" else transforms.qusP(P, fl)
    out.write(docs.dumps(docs.wrapper_to_json(w)))
    return 0


def cmd_member(args, out: TextIO) -> int:
    P, declared = _prevision(args.P, "-P")
    F, _ = _prevision(args.F, "-F")
    if F.n != P.n:
        raise UsageError(f"-F {args.F}: n: expected {P.n}, got {F.n}")
    fl = _flavor(args, declared)
    if args.op == "nim":
        ok = transforms.member_nim(transforms.nimP(P, fl), F)
    else:
        ok = transforms.member_qus(transforms.qusP(P, fl), F)
    out.write(("true" if ok else "false") + "\n")
    return 0


def _single_branch(P: Prevision, option: str, path: str, kind: str):
    f = P.form
    if isinstance(f, prevcore.LinearPrev):
        return (prevcore.UpGen if kind == "up" else prevcore.DownGen)((f.weights,))
    want = prevcore.MaxOfSuper if kind == "up" else prevcore.MinOfSub
    if not isinstance(f, want) or len(f.branches) != 1:
        form = "max_of_super" if kind == "up" else "min_of_sub"
        raise UsageError(f"{option} {path}: form: expected linear or a single-branch {form}")
    return f.branches[0]


def cmd_sandwich(args, out: TextIO) -> int:
    Q, _ = _prevision(args.q, "-q")
    P, _ = _prevision(args.p, "-p")
    if Q.n != P.n:
        raise UsageError(f"-p {args.p}: n: expected {Q.n}, got {P.n}")
    q = _single_branch(Q, "-q", args.q, "up")
    p = _single_branch(P, "-p", args.p, "down")
    res = transforms.sandwich(q, p, args.flavor or Flavor.PLAIN)
    if isinstance(res, transforms.DominationFailure):
        out.write(f"not dominated at {fmt_point(res.witness)}\n")
    else:
        out.write(docs.dump_prevision(Prevision(P.n, res)))
    return 0


def cmd_witness(args, out: TextIO) -> int:
    P, declared = _prevision(args.P, "-P")
    h = _at(args, P)
    fl = _flavor(args, declared)
    if args.kind == "tight-sub":
        if args.below is not None:
            raise UsageError("--below: only used by corner-super")
        F = transforms.tight_sublinear_witness(P, h, fl)
    else:
        if args.below is None:
            raise UsageError("--below: corner-super needs the level r")
        F = transforms.corner_superlinear_witness(P, h, _rational(args.below, "--below"), fl)
    out.write(docs.dump_prevision(F, fl if fl is not Flavor.PLAIN else None))
    return 0


def cmd_criterion(args, out: TextIO) -> int:
    P, _ = _prevision(args.P, "-P")
    hs = _with_source("--hs", args.hs, docs.load_points)
    if len(hs[0]) != P.n:
        raise UsageError(f"--hs {args.hs}: n: expected {P.n}")
    fn = transforms.box_union_criterion if args.kind == "box" else transforms.dia_intersection_criterion
    res = fn(P, hs)
    ext = "max" if args.kind == "box" else "min"
    verdict = "holds" if isinstance(res, transforms.Holds) else "fails"
    detail = fmt_point(res.value) if isinstance(res.value, tuple) else describe(res.value)
    label = "at" if isinstance(res.value, tuple) else "witness"
    out.write(f"{verdict} {ext}={fmt_rat(res.extremum)} {label}={detail}\n")
    return 0


def cmd_mixrange(args, out: TextIO) -> int:
    T, _ = _prevision(args.T, "-T")
    A, _ = _prevision(args.A, "-A")
    B, _ = _prevision(args.B, "-B")
    for opt, path, X in (("-A", args.A, A), ("-B", args.B, B)):
        if X.n != T.n:
            raise UsageError(f"{opt} {path}: n: expected {T.n}, got {X.n}")
    res = transforms.mix_dominance_range(T, A, B)
    out.write(("empty" if res is None else str(res)) + "\n")
    return 0


def cmd_shadow(args, out: TextIO) -> int:
    P, _ = _prevision(args.P, "-P")
    if args.op in ("stable", "gauge") and args.F is not None:
        raise UsageError(f"-F: not used by shadow {args.op}")
    if args.op != "stable" and args.alpha is not None:
        raise UsageError(f"--alpha: only used by shadow stable")
    if args.op == "stable":
        if args.alpha is None:
            ok = shadow.shadow_stable(P)
        else:
            ok = shadow.shadow_preimage_stable(P, _rational(args.alpha, "--alpha"))
        out.write(("true" if ok else "false") + "\n")
        return 0
    if args.op == "gauge":
        out.write(docs.dump_prevision(shadow.shadow_gauge(P)))
        return 0
    if args.F is None:
        raise UsageError(f"-F: shadow {args.op} needs the bound F0")
    F0, _ = _prevision(args.F, "-F")
    if F0.n != P.n:
        raise UsageError(f"-F {args.F}: n: expected {P.n}, got {F0.n}")
    if args.op == "subnorm-below":
        out.write(docs.dump_prevision(shadow.subnorm_superlinear_below(P, F0), Flavor.SUBNORM))
    else:
        out.write(docs.dump_prevision(shadow.normalized_sublinear_between(P, F0), Flavor.NORM))
    return 0


def cmd_hyper(args, out: TextIO) -> int:
    poset = _with_source("--poset", args.poset, docs.load_poset)
    if poset.size > polarity.MAX_VERIFY_SIZE:
        raise UsageError(f"--poset {args.poset}: size: verification is limited to {polarity.MAX_VERIFY_SIZE} points")
    rep = polarity.verify_polarity_images(poset)
    for name, ok in rep.checks:
        out.write(f"{'PASS' if ok else 'FAIL'} {name}\n")
    if rep.counterexample is not None:
        name, fam = rep.counterexample
        out.write(f"counterexample {name}: {sorted(sorted(s) for s in fam)}\n")
    out.write(("pass" if rep.passed else "fail") + "\n")
    return 0 if rep.passed else 1


def cmd_laws(args, out: TextIO) -> int:
    if args.n < 1:
        raise UsageError("--n: must be at least 1")
    if args.trials < 0:
        raise UsageError("--trials: must be nonnegative")
    for name in args.law or ():
        if name not in REGISTRY:
            raise UsageError(f"--law: unknown law {name!r}")
    if args.mutant is not None and args.mutant not in MUTANTS:
        raise UsageError(f"--mutant: unknown mutant {args.mutant!r}; known: {', '.join(sorted(MUTANTS))}")

    def go():
        return run_law_suite(args.seed, args.trials, args.n, laws=args.law or None)

    if args.mutant is None:
        reports = go()
    else:
        with inject(args.mutant):
            reports = go()
    if args.json:
        out.write(docs.dumps({"seed": args.seed, "trials": args.trials, "n": args.n, "reports": [r.to_json() for r in reports]}))
    else:
        for r in reports:
            out.write(f"{'PASS' if r.ok else 'FAIL'} {r.name} {r.passes}/{r.trials}\n")
            for f in r.failures:
                inputs = " ".join(f"{k}={v}" for k, v in f.inputs)
                out.write(f"  trial {f.trial}: {f.message} [{inputs}]\n")
    return 0 if suite_passed(reports) else 1


def cmd_example(args, out: TextIO) -> int:
    try:
        v = reproduce_example(args.id)
    except UnknownExample as exc:
        raise UsageError(f"ID: {exc.args[0]}") from None
    if args.json:
        out.write(docs.dumps(v.to_json()))
    else:
        width = max(len(c.description) for c in v.checks)
        for c in v.checks:
            out.write(f"{'PASS' if c.passed else 'FAIL'}  {c.description:<{width}}  expected {c.expected}  computed {c.computed}\n")
        out.write(f"{v.example}: {'pass' if v.passed else 'fail'}\n")
    return 0 if v.passed else 1


# -- parser ---------------------------------------------------------------------------------------


def _add_at(p) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--at", help='point such as "1,1/2"')
    g.add_argument("--at-file", help="points document holding exactly one point")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=PROG, description="Exact computations with previsions on finite spaces.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    flavors = [f.value for f in Flavor]

    p = sub.add_parser("eval", help="evaluate a prevision at a point")
    p.add_argument("-P", required=True, metavar="FILE")
    _add_at(p)
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("check", help="print the classification flags")
    p.add_argument("-P", required=True, metavar="FILE")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("compare", help="pointwise order between two previsions")
    p.add_argument("A")
    p.add_argument("B")
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("transform", help="minP, supP, nimP or qusP")
    p.add_argument("op", choices=["min", "sup", "nim", "qus"])
    p.add_argument("-S", metavar="FILE", help="hyperspace element (min, sup)")
    p.add_argument("-P", metavar="FILE", help="prevision (nim, qus)")
    p.add_argument("--flavor", choices=flavors)
    p.set_defaults(fn=cmd_transform)

    p = sub.add_parser("member", help="membership in nimP(P) or qusP(P)")
    p.add_argument("op", choices=["nim", "qus"])
    p.add_argument("-P", required=True, metavar="FILE")
    p.add_argument("-F", required=True, metavar="FILE")
    p.add_argument("--flavor", choices=flavors)
    p.set_defaults(fn=cmd_member)

    p = sub.add_parser("sandwich", help="linear prevision between a superlinear and a sublinear one")
    p.add_argument("-q", required=True, metavar="FILE")
    p.add_argument("-p", required=True, metavar="FILE")
    p.add_argument("--flavor", choices=flavors)
    p.set_defaults(fn=cmd_sandwich)

    p = sub.add_parser("witness", help="witnesses behind the two isomorphisms")
    p.add_argument("kind", choices=["tight-sub", "corner-super"])
    p.add_argument("-P", required=True, metavar="FILE")
    _add_at(p)
    p.add_argument("--below", metavar="R")
    p.add_argument("--flavor", choices=flavors)
    p.set_defaults(fn=cmd_witness)

    p = sub.add_parser("criterion", help="box or diamond criterion on a finite set of points")
    p.add_argument("kind", choices=["box", "dia"])
    p.add_argument("-P", required=True, metavar="FILE")
    p.add_argument("--hs", required=True, metavar="FILE")
    p.set_defaults(fn=cmd_criterion)

    p = sub.add_parser("mixrange", help="{a : T >= a A + (1-a) B}")
    p.add_argument("-T", required=True, metavar="FILE")
    p.add_argument("-A", required=True, metavar="FILE")
    p.add_argument("-B", required=True, metavar="FILE")
    p.set_defaults(fn=cmd_mixrange)

    p = sub.add_parser("shadow", help="cast-shadow checks and envelopes")
    p.add_argument("op", choices=["stable", "gauge", "subnorm-below", "norm-between"])
    p.add_argument("-P", required=True, metavar="FILE")
    p.add_argument("-F", metavar="FILE", help="the bound F0 for subnorm-below / norm-between")
    p.add_argument("--alpha", help="check a single shadow map instead (stable only)")
    p.set_defaults(fn=cmd_shadow)

    p = sub.add_parser("hyper", help="finite poset hyperspace checks")
    hsub = p.add_subparsers(dest="hyper_command", required=True, parser_class=_Parser)
    v = hsub.add_parser("verify", help="brute-force the polarity image characterizations")
    v.add_argument("--poset", required=True, metavar="FILE")
    v.set_defaults(fn=cmd_hyper)

    p = sub.add_parser("laws", help="run the randomized law suite")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--law", action="append", help="restrict to this law (repeatable)")
    p.add_argument("--mutant", help="run against a deliberately broken variant")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_laws)

    p = sub.add_parser("example", help="reproduce a worked counterexample")
    p.add_argument("id", metavar="ID")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_example)
    return parser


def run(argv: Optional[Sequence[str]] = None, stdout: TextIO = None, stderr: TextIO = None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = build_parser().parse_args(argv)
        return args.fn(args, stdout)
    except UsageError as exc:
        stderr.write(f"{PROG}: error: {exc}\n")
        return 2
    except PostconditionFailure as exc:
        stderr.write(f"{PROG}: verification failed: {_one_line(exc)}\n")
        return 1
    except (FlavorError, ValueError, TypeError, KeyError, DimensionError) as exc:
        stderr.write(f"{PROG}: error: {_one_line(exc)}\n")
        return 2


def _one_line(exc: BaseException) -> str:
    msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
    return " ".join(str(msg).split())


def main() -> None:
    sys.exit(run())
