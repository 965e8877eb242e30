"""Command line interface.

Exit codes: 0 ran, 1 input error, 2 a verification failed,
10 unstable certified, 11 not-stable certified, 20 no certificate found.
"""

import argparse
import json
import re
import sys
from fractions import Fraction

from .criterion import (
    check_pattern,
    critical_values,
    derive_subdivision,
    format_witness,
    pattern_at,
)
from .forms import LinearChange
from .halphen import EXAMPLES, build_halphen, certify, paper_tables_regression, run_catalog
from .normal_forms import (
    case_split,
    get_case,
    load_catalog,
    match_catalog,
    normal_forms,
    verify_forward,
)
from .parsing import parse_form
from .pluecker import Pencil, compute_mu, mu_minimizers

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_FAILED = 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "--a -13/42" through as a value rather than an option
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$")

    # usage errors are input errors
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


def rational(text: str) -> Fraction:
    """``p`` or ``p/q``; decimals are refused so that nothing is rounded."""
    text = text.strip()
    try:
        if _RATIONAL.match(text):
            return Fraction(text)
    except ZeroDivisionError:
        pass
    raise argparse.ArgumentTypeError(f"not a rational p/q: {text!r}")


def binding(text: str):
    name, sep, value = text.partition("=")
    if not sep or len(name.strip()) != 1 or not name.strip().isalpha():
        raise argparse.ArgumentTypeError(f"expected k=p/q, got {text!r}")
    return name.strip(), rational(value)


def read_frames(path: str):
    frames = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].split()
            if not line:
                continue
            if len(line) != 9:
                raise InputError(f"{path}:{lineno}: expected 9 rationals, got {len(line)}")
            try:
                vals = [rational(v) for v in line]
                frames.append((f"{path}:{lineno}", LinearChange([vals[0:3], vals[3:6], vals[6:9]])))
            except (ValueError, argparse.ArgumentTypeError) as e:
                raise InputError(f"{path}:{lineno}: {e}")
    if not frames:
        raise InputError(f"{path}: no frames")
    return frames


def pencil_from(args) -> Pencil:
    params = dict(getattr(args, "param", None) or [])
    f = parse_form(args.f, 6, params)
    g = parse_form(args.g, 6, params)
    return Pencil(f, g)


def emit(args, text: str, data):
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        print(text)


def pairs_text(pairs):
    return " ".join(f"{r},{s}" for r, s in sorted(pairs))


# subcommands


def cmd_intervals(args):
    sub = derive_subdivision(args.strict)
    lines = ["breakpoints: " + " ".join(str(b) for b in critical_values())]
    for n, pat in enumerate(sub.minimal_patterns, 1):
        lines.append(f"case {n}: witness {format_witness(pat.witness)} "
                     f"representative {pat.representative()} ({len(pat)} classes)")
    emit(args, "\n".join(lines), {
        "strict": args.strict,
        "breakpoints": [str(b) for b in critical_values()],
        "cases": [
            {"case": n, "witness": format_witness(p.witness),
             "representative": str(p.representative()), "size": len(p)}
            for n, p in enumerate(sub.minimal_patterns, 1)
        ],
    })
    return EXIT_OK


def cmd_patterns(args):
    pat = pattern_at(args.a, args.strict)
    op = "<" if args.strict else "<="
    emit(args, f"classes with weight {op} 0 at a = {args.a} ({len(pat)}):\n{pairs_text(pat.pairs)}",
         {"a": str(args.a), "strict": args.strict, "pairs": [list(c) for c in pat.sorted_pairs()]})
    return EXIT_OK


def cmd_plucker(args):
    p = pencil_from(args)
    nz = list(p.pluecker().nonzero())
    lines = [f"{len(nz)} nonzero minors"]
    lines += [f"m[{i},{j},{k},{l}] = {m}" for (i, j, k, l), m in nz]
    emit(args, "\n".join(lines), {"nonzero": [[list(q), str(m)] for q, m in nz]})
    return EXIT_OK


def cmd_mu(args):
    p = pencil_from(args)
    mu = compute_mu(p, args.a)
    mins = mu_minimizers(p, args.a)
    emit(args, f"mu = {mu}\nattained at: " + " ".join("{%d,%d,%d,%d}" % q for q in mins),
         {"a": str(args.a), "mu": str(mu), "minimizers": [list(q) for q in mins]})
    return EXIT_OK


def cmd_check(args):
    p = pencil_from(args)
    pat = pattern_at(args.a, args.strict)
    res = check_pattern(p, pat)
    if res:
        text = f"pattern at a = {args.a} holds"
    else:
        text = "pattern at a = {} fails: m[{},{},{},{}] != 0".format(args.a, *res.violating_minor)
    emit(args, text, {"a": str(args.a), "strict": args.strict, "satisfied": res.satisfied,
                      "violating_minor": list(res.violating_minor) if res.violating_minor else None})
    return EXIT_OK


def cmd_certify(args):
    p = pencil_from(args)
    frames = read_frames(args.frames) if args.frames else []
    report = certify(p, frames, strict=args.strict)
    emit(args, report.to_text(), report.to_dict())
    return report.exit_code


def cmd_halphen(args):
    params = dict(args.param or [])
    hp = build_halphen(parse_form(args.B, 6, params), parse_form(args.C, 3, params))
    frames = read_frames(args.frames) if args.frames else []
    report = certify(hp.pencil, frames, strict=args.strict)
    matched = match_catalog(hp.pencil)
    text = "\n".join([
        f"B = {hp.B}", f"C = {hp.C}",
        f"proper: {'yes' if hp.proper else 'no'} (common factor degree {hp.common_factor})",
        f"matched normal forms: {', '.join(matched) or 'none'}",
        report.to_text(),
    ])
    data = report.to_dict()
    data.update(proper=hp.proper, common_factor_degree=hp.common_factor, matched_cases=matched)
    emit(args, text, data)
    return report.exit_code


def _state_dict(leaf):
    return {
        "zero_f": sorted(map(list, leaf.zero_f)),
        "zero_g": sorted(map(list, leaf.zero_g)),
        "nonzero_f": sorted(map(list, leaf.nonzero_f)),
        "nonzero_g": sorted(map(list, leaf.nonzero_g)),
        "residual_minors": [list(q) for q in leaf.residual_minors],
    }


def cmd_casesplit(args):
    pat = derive_subdivision(args.strict).case(args.case)
    leaves = normal_forms(pat) if args.merge_swap else case_split(pat)
    lines = [f"{'strict' if args.strict else 'nonstrict'} case {args.case}: {len(leaves)} leaves"]
    for n, leaf in enumerate(leaves, 1):
        lines.append(f"leaf {n}")
        lines.append(f"  f = 0 at: {pairs_text(leaf.zero_f)}")
        lines.append(f"  g = 0 at: {pairs_text(leaf.zero_g)}")
        if leaf.nonzero_f:
            lines.append(f"  f != 0 at: {pairs_text(leaf.nonzero_f)}")
        if leaf.nonzero_g:
            lines.append(f"  g != 0 at: {pairs_text(leaf.nonzero_g)}")
        if leaf.residual_minors:
            lines.append("  residual: " + " ".join("{%d,%d,%d,%d}" % q for q in leaf.residual_minors))
    emit(args, "\n".join(lines), {"strict": args.strict, "case": args.case,
                                   "leaves": [_state_dict(l) for l in leaves]})
    return EXIT_OK


def cmd_catalog(args):
    if args.action == "list":
        lines = ["halphen examples:"]
        for ex in EXAMPLES.values():
            tag = "" if ex.available else " (coordinates unavailable in source paper)"
            lines.append(f"  {ex.name} [{ex.fiber_type}] {ex.expected_verdict}{tag}")
        lines.append("normal forms:")
        for c in load_catalog().values():
            extra = " (necessary only)" if c.kind != "iff" else ""
            lines.append(f"  {c.id} {c.verdict}{extra}")
        emit(args, "\n".join(lines), {
            "examples": [e.name for e in EXAMPLES.values()],
            "normal_forms": list(load_catalog()),
        })
        return EXIT_OK
    if not args.name:
        raise InputError("catalog verify needs a name")
    params = dict(args.param or [])
    if args.name == "all" or args.name in EXAMPLES:
        results = run_catalog(args.name, params)
        emit(args, "\n".join(r.to_text() for r in results), [r.to_dict() for r in results])
        return EXIT_OK if all(r.ok or r.skipped for r in results) else EXIT_FAILED
    try:
        case = get_case(args.name)
    except KeyError as e:
        raise InputError(str(e.args[0]))
    rep = verify_forward(case, args.trials, args.seed)
    text = (f"{case.id}: {rep.passed} passed, {rep.failed} failed, {rep.skipped} skipped "
            f"of {rep.trials}")
    if rep.counterexample is not None:
        text += f"\ncounterexample: f = {rep.counterexample.f}; g = {rep.counterexample.g}"
    emit(args, text, {
        "case": case.id, "passed": rep.passed, "failed": rep.failed, "skipped": rep.skipped,
        "counterexample": None if rep.counterexample is None
        else {"f": str(rep.counterexample.f), "g": str(rep.counterexample.g)},
    })
    return EXIT_OK if rep.failed == 0 else EXIT_FAILED


def cmd_paper_tables(args):
    rep = paper_tables_regression()
    emit(args, rep.to_text(), rep.to_dict())
    if args.verify and not rep.ok:
        return EXIT_FAILED
    return EXIT_OK


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = _Parser(
        prog="sextic-pencils",
        description="Exact Hilbert-Mumford certificates for pencils of plane sextics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def pencil_args(p):
        p.add_argument("f", help="first generator (degree 6)")
        p.add_argument("g", help="second generator (degree 6)")
        p.add_argument("--param", action="append", type=binding, metavar="k=p/q",
                       help="bind a parameter letter")

    p = sub.add_parser("intervals", parents=[common], help="critical values and minimal patterns")
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_intervals)

    p = sub.add_parser("patterns", parents=[common], help="vanishing classes at a weight")
    p.add_argument("--a", type=rational, required=True)
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_patterns)

    p = sub.add_parser("plucker", parents=[common], help="nonzero Pluecker coordinates")
    pencil_args(p)
    p.set_defaults(func=cmd_plucker)

    p = sub.add_parser("mu", parents=[common], help="Hilbert-Mumford weight at a")
    p.add_argument("--a", type=rational, required=True)
    pencil_args(p)
    p.set_defaults(func=cmd_mu)

    p = sub.add_parser("check", parents=[common], help="check the pattern at a")
    p.add_argument("--a", type=rational, required=True)
    p.add_argument("--strict", action="store_true")
    pencil_args(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("certify", parents=[common], help="search for destabilizing certificates")
    pencil_args(p)
    p.add_argument("--frames", metavar="FILE", help="extra frames, nine rationals per line")
    p.add_argument("--strict", action="store_true", help="look for not-stable certificates")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("halphen", parents=[common], help="certify the pencil (B, C^2)")
    p.add_argument("--B", required=True, help="sextic")
    p.add_argument("--C", required=True, help="cubic")
    p.add_argument("--param", action="append", type=binding, metavar="k=p/q")
    p.add_argument("--frames", metavar="FILE")
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_halphen)

    p = sub.add_parser("casesplit", parents=[common], help="run the case splitter on a minimal pattern")
    p.add_argument("--case", type=int, required=True, help="minimal pattern number")
    p.add_argument("--strict", action="store_true")
    p.add_argument("--merge-swap", action="store_true",
                   help="also identify leaves that differ by exchanging f and g")
    p.set_defaults(func=cmd_casesplit)

    p = sub.add_parser("catalog", parents=[common], help="list or verify catalog entries")
    p.add_argument("action", choices=["list", "verify"])
    p.add_argument("name", nargs="?", help="example name, normal form id, or 'all'")
    p.add_argument("--param", action="append", type=binding, metavar="k=p/q")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("paper-tables", parents=[common], help="diff regenerated tables against the printed ones")
    p.add_argument("--verify", action="store_true", help="exit 2 on unexpected differences")
    p.set_defaults(func=cmd_paper_tables)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ValueError, KeyError, OSError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
