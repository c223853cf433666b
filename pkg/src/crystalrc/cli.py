"""Command line interface: generating functions, the bijection and verification suites."""

from __future__ import annotations

import argparse
import json
import sys

from . import bijection as bj
from . import cartan
from . import crystal_base as cb
from . import harness
from . import kr_crystal as kr
from . import rigged_config as rcm


class UsageError(Exception):
    pass


def _weight(text: str):
    if text is None or text == "all":
        return None
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad weight {text!r}") from exc


def _factors(aff, text: str) -> tuple:
    if text is None:
        raise UsageError("--factors is required")
    try:
        fs = kr.parse_factors(text)
        for f in fs:
            kr.check_factor(aff, f)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return fs


def _aff(args):
    try:
        return harness.parse_type(args.type, args.rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(args, payload, text: str):
    out = json.dumps(payload, sort_keys=True) if args.json else text
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out + "\n")
    else:
        print(out)


def _poly_command(args, fn) -> int:
    aff = _aff(args)
    fs = _factors(aff, args.factors)
    lam = _weight(args.weight)
    if lam is not None:
        if len(lam) != cartan.weight_length(aff.classical):
            raise UsageError(f"weight needs {cartan.weight_length(aff.classical)} entries")
        poly = fn(aff, fs, lam)
        _emit(args, poly.to_json(), repr(poly))
        return 0
    rows = [(lam, fn(aff, fs, lam)) for lam in harness.candidate_weights(aff, fs)]
    rows = [(lam, p) for lam, p in rows if p.terms]
    payload = [{"weight": list(lam), "poly": p.to_json()} for lam, p in rows]
    _emit(args, payload, "\n".join(f"{','.join(map(str, lam))}: {p!r}" for lam, p in rows))
    return 0


def _need_simply_laced(aff):
    if not aff.simply_laced:
        raise UsageError("the bijection runs in types A and D; use vx/vm for folded types")


def cmd_bij(args) -> int:
    aff = _aff(args)
    _need_simply_laced(aff)
    if args.path is None:
        raise UsageError("--path is required")
    b = cb.parse_path(args.path)
    fs = _factors(aff, args.factors) if args.factors else tuple(kr.row(len(w)) for w in b)
    if len(fs) != len(b):
        raise UsageError("path and factor list have different lengths")
    try:
        rc = bj.phi_bar(aff, fs, b)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(args, rcm.rc_to_json(rc), str(rc))
    return 0


def cmd_bij_inv(args) -> int:
    aff = _aff(args)
    _need_simply_laced(aff)
    if args.rc is None:
        raise UsageError("--rc is required")
    text = args.rc
    if text.startswith("@"):
        with open(text[1:]) as fh:
            text = fh.read()
    try:
        rc = rcm.rc_from_json(aff.classical, json.loads(text))
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"bad rigged configuration: {exc}") from exc
    fs = _factors(aff, args.factors)
    try:
        b = bj.phi_bar_inv(aff, fs, rc)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(args, {"path": cb.format_path(b)}, cb.format_path(b))
    return 0


def cmd_trace(args) -> int:
    aff = _aff(args)
    _need_simply_laced(aff)
    if args.path is None:
        raise UsageError("--path is required")
    b = cb.parse_path(args.path)
    fs = _factors(aff, args.factors) if args.factors else tuple(kr.row(len(w)) for w in b)
    trace = bj.Trace()
    try:
        bj.phi_bar(aff, fs, b, trace)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    lines = [f"{s.name:18} {cb.format_path(s.path):20} {'' if s.letter is None else s.letter}  {s.rc}"
             for s in trace.steps]
    _emit(args, trace.to_json(), "\n".join(lines))
    return 0


def cmd_verify(args) -> int:
    if args.suite == "worked-examples":
        report = harness.worked_examples()
    else:
        aff = _aff(args)
        if args.factors:
            corpus = [_factors(aff, args.factors)]
        else:
            corpus = harness.factor_lists(aff, args.max_size, args.max_factors, columns=args.columns,
                                          duals=args.duals, max_s=args.max_s)
        if args.suite == "virtual" and aff.simply_laced:
            raise UsageError("the virtual suite needs a non-simply-laced type")
        if args.suite == "duality" and aff.family != "A1":
            raise UsageError("the duality suite is type A only")
        report = harness.verify(args.suite, aff, corpus)
    text = "\n".join(f"{'PASS' if c.passed else 'FAIL'}  {c.name}  {c.detail}" for c in report.checks)
    _emit(args, report.to_json(), text)
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="crystalrc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--type", required=True, help="A, B, C, D or a family tag (A2even, A2evenDagger, A2odd, D2)")
        p.add_argument("--rank", type=int, required=True)
        p.add_argument("--factors", help="comma list: 2 (row), 2:1 (rectangle r:s), 2v (dual row)")
        p.add_argument("--json", action="store_true")
        p.add_argument("--out")

    for name, help_text in (("x", "one-dimensional sum X"), ("m", "fermionic formula M"),
                            ("vx", "virtual one-dimensional sum VX"), ("vm", "virtual fermionic sum VM")):
        p = sub.add_parser(name, help=help_text)
        common(p)
        p.add_argument("--weight", default="all", help="comma list in epsilon coordinates, or 'all'")
    for name in ("bij", "trace"):
        p = sub.add_parser(name, help="path -> rigged configuration" if name == "bij" else "step-by-step bijection")
        common(p)
        p.add_argument("--path", help='factors separated by "|", letters by ","; e.g. "-3|2,3|1,2|1"')
    p = sub.add_parser("bij-inv", help="rigged configuration -> path")
    common(p)
    p.add_argument("--rc", help="rigged configuration JSON, or @file")
    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=harness.SUITES)
    p.add_argument("--type", default="A")
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--factors")
    p.add_argument("--max-s", type=int, default=None)
    p.add_argument("--max-factors", type=int, default=None)
    p.add_argument("--max-size", type=int, default=4)
    p.add_argument("--columns", action="store_true", help="include type A columns B^{r,1}")
    p.add_argument("--duals", action="store_true", help="include type A dual rows")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    return parser


COMMANDS = {
    "x": lambda a: _poly_command(a, harness.x_poly),
    "m": lambda a: _poly_command(a, harness.m_poly),
    "vx": lambda a: _poly_command(a, _folded(harness.vx_poly)),
    "vm": lambda a: _poly_command(a, _folded(harness.vm_poly)),
    "bij": cmd_bij,
    "bij-inv": cmd_bij_inv,
    "trace": cmd_trace,
    "verify": cmd_verify,
}


def _folded(fn):
    def run(aff, fs, lam):
        if aff.simply_laced:
            raise UsageError("vx and vm are defined for non-simply-laced types")
        return fn(aff, fs, lam)
    return run


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # values such as "-3|1" or "-1,0" start with a dash; glue them to their flag
    for k in range(len(argv) - 1):
        if argv[k] in ("--path", "--weight") and argv[k + 1].startswith("-"):
            argv[k:k + 2] = [f"{argv[k]}={argv[k + 1]}", ""]
    argv = [a for a in argv if a != ""]
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "verify" and args.max_s is not None and args.max_size < args.max_s * (args.max_factors or 1):
        args.max_size = args.max_s * (args.max_factors or 1)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
