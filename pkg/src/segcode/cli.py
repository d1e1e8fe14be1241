"""Command-line front end.

Subcommands: construct, table, encode, corrupt, decode, verify, lm-check,
bounds, chernoff-check. Sequences travel on stdin/stdout in their textual
form; lines starting with '#' are ignored on input so commands can be
piped. Exit codes: 0 success, 1 verification found violations, 2 usage
error, 3 resource budget exceeded, 4 channel contract violation.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import bounds as _bounds
from .channel import apply_pattern, format_pattern, parse_pattern, sample_pattern
from .construction import (ChannelKind, build_code, dumps, encode,
                           load_codebook, message_of, set_sizes)
from .decoder import decode, format_trace
from .errors import (CodebookFormatError, ContractViolationError,
                     DecodeFailureError, ParameterError, ResourceBudgetError,
                     SegcodeError)
from .seq import Seq
from .verify import lm_check, verify_exhaustive, verify_sampled

#: published per-segment count for the insertion code at b=21 that conflicts
#: with its own pigeonhole bound; the table command annotates this cell.
_DISPUTED_INSERTION_B21 = (17847, 17874)


def _read_sequence(args, q: int) -> Seq:
    if getattr(args, "input", None):
        text = args.input
    else:
        lines = [ln for ln in sys.stdin.read().splitlines()
                 if ln.strip() and not ln.lstrip().startswith("#")]
        if len(lines) != 1:
            raise ParameterError("expected exactly one sequence line on stdin")
        text = lines[0]
    return Seq.parse(text, q)


def _code_from_args(args):
    if getattr(args, "codebook", None):
        return load_codebook(args.codebook)
    if args.kind is None or args.q is None or args.b is None:
        raise ParameterError("give either --codebook or all of --kind/--q/--b")
    return build_code(ChannelKind(args.kind), args.q, args.b)


def cmd_construct(args) -> int:
    code = build_code(ChannelKind(args.kind), args.q, args.b)
    text = dumps(code)
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"# kind={code.kind} q={code.q} b={code.b} Ms={code.ms}", file=sys.stderr)
    for cs in code.sets:
        tail = f" c={cs.c}" if cs.c is not None else ""
        print(f"# set label={cs.label} a={cs.a}{tail} n={cs.size}", file=sys.stderr)
    return 0


def _table_rows(kind: ChannelKind, q: int, b_min: int, b_max: int, with_upper: bool,
                k: int):
    rows = []
    for b in range(b_min, b_max + 1):
        sizes = set_sizes(kind, q, b)
        bracket = _bounds.lower_bound_bracket(kind, q, b)
        rate_low = _bounds.rate_lower_bound(kind, q, b)
        rate_ach = math.log2(sizes.ms) / b
        row = {"b": b, "Ms": sizes.ms, "lower": bracket,
               "rate_lower": rate_low, "rate": rate_ach}
        if with_upper:
            rep = _bounds.rate_upper_bound(q, b, k)
            row["rate_upper"] = rep.rate_upper if rep.valid else None
        note = ""
        if kind is ChannelKind.INSERTION and q == 2 and b == 21:
            pub, bra = _DISPUTED_INSERTION_B21
            note = (f"computed exhaustively; a commonly cited count of {pub} "
                    f"contradicts the {bra} lower bound")
        row["note"] = note
        rows.append(row)
    return rows


def _print_rows(rows, with_upper: bool, tsv: bool):
    cols = ["b", "Ms", "lower", "rate_lower", "rate"]
    if with_upper:
        cols.append("rate_upper")
    if tsv:
        print("\t".join(cols))
        for row in rows:
            vals = []
            for c in cols:
                v = row[c]
                if isinstance(v, float):
                    vals.append(f"{v:.6f}")
                else:
                    vals.append("-" if v is None else str(v))
            print("\t".join(vals))
        return
    header = f"{'b':>4} {'Ms':>10} {'lower':>10} {'rate_lower':>11} {'rate':>8}"
    if with_upper:
        header += f" {'rate_upper':>11}"
    print(header)
    for row in rows:
        line = (f"{row['b']:>4} {row['Ms']:>10} {row['lower']:>10} "
                f"{row['rate_lower']:>11.4f} {row['rate']:>8.4f}")
        if with_upper:
            ru = row["rate_upper"]
            line += f" {'no bound':>11}" if ru is None else f" {ru:>11.4f}"
        if row["note"]:
            line += f"   # {row['note']}"
        print(line)


def cmd_table(args) -> int:
    kind = ChannelKind(args.kind)
    if args.b_min > args.b_max:
        raise ParameterError("--b-min must not exceed --b-max")
    rows = _table_rows(kind, args.q, args.b_min, args.b_max, False, 1)
    print(f"# kind={kind} q={args.q}")
    _print_rows(rows, False, args.tsv)
    return 0


def cmd_bounds(args) -> int:
    kind = ChannelKind(args.kind)
    if args.b_min > args.b_max:
        raise ParameterError("--b-min must not exceed --b-max")
    rows = _table_rows(kind, args.q, args.b_min, args.b_max, True, args.k)
    print(f"# kind={kind} q={args.q} k={args.k}")
    _print_rows(rows, True, args.tsv)
    return 0


def cmd_encode(args) -> int:
    code = _code_from_args(args)
    try:
        message = [int(tok) for tok in args.message.replace(",", " ").split()]
    except ValueError:
        raise ParameterError(f"malformed message {args.message!r}") from None
    x = encode(code, message)
    print(x.text())
    return 0


def cmd_corrupt(args) -> int:
    if args.pattern is None and not args.random:
        raise ParameterError("give --pattern or --random")
    if args.pattern is not None and args.random:
        raise ParameterError("--pattern and --random are mutually exclusive")
    x = _read_sequence(args, args.q)
    if len(x) % args.b:
        raise ParameterError(f"input length {len(x)} is not a multiple of b={args.b}")
    k = len(x) // args.b
    if args.pattern is not None:
        pattern = parse_pattern(args.pattern)
        if len(pattern) != k:
            raise ParameterError(f"pattern covers {len(pattern)} segments, input has {k}")
    else:
        pattern = sample_pattern(ChannelKind(args.kind), args.q, args.b, k,
                                 args.p_edit, args.seed)
        print(f"# pattern {format_pattern(pattern)}")
    y = apply_pattern(x, pattern, args.b)
    print(y.text())
    return 0


def cmd_decode(args) -> int:
    code = _code_from_args(args)
    y = _read_sequence(args, code.q)
    decoded, trace = decode(code, y, args.k)
    print(decoded.text())
    for line in format_trace(trace).splitlines():
        print(f"# {line}")
    indices = message_of(code, decoded)
    print(f"# message {','.join(str(i) for i in indices)}")
    return 0


def cmd_verify(args) -> int:
    code = _code_from_args(args)
    if args.exhaustive:
        report = verify_exhaustive(code, args.k, budget=args.budget,
                                   threads=args.threads)
    else:
        report = verify_sampled(code, args.k, args.messages, args.patterns,
                                args.seed, args.p_edit, threads=args.threads)
    print(report.summary())
    for v in report.violations[:20]:
        print(f"message={v.message} pattern={format_pattern(v.pattern)} -> {v.outcome}")
    if len(report.violations) > 20:
        print(f"... {len(report.violations) - 20} more")
    return 0 if report.ok else 1


def cmd_lm_check(args) -> int:
    if args.codebook:
        code = load_codebook(args.codebook)
        if code.q != 2:
            raise ParameterError("the three-condition check applies to binary codebooks")
        words = [Seq(w, 2) for cs in code.sets for w in cs.codewords()]
    else:
        code = build_code(ChannelKind(args.kind), args.q, args.b)
        if code.q != 2:
            raise ParameterError("the three-condition check applies to binary codebooks")
        words = [Seq(w, 2) for cs in code.sets for w in cs.codewords()]
    report = lm_check(words)
    print(report.summary())
    for name, witness in (("condition1", report.witness1), ("condition2", report.witness2)):
        if witness is not None:
            u, v, shared = witness
            print(f"{name} witness: {u.text()} vs {v.text()} via {shared.text()}")
    if report.witness3 is not None:
        print(f"condition3 witness: {report.witness3.text()}")
    return 0 if report.all_ok else 1


def cmd_chernoff_check(args) -> int:
    kappa = args.kappa if args.kappa is not None else _bounds.default_kappa(args.q, args.b)
    check = _bounds.chernoff_tail_check(args.q, args.b, kappa)
    r = _bounds.run_count_threshold(args.q, args.b, kappa)
    print(f"q={args.q} b={args.b} kappa={kappa:.4f} r={r:.2f} "
          f"lhs={check.lhs:.3e} rhs={check.rhs:.3e} holds={check.holds}")
    return 0 if check.holds else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="segcode",
        description="Zero-error codes for segmented insertion/deletion channels.")
    parser.add_argument("--seed", type=int, default=0, help="base seed for randomized commands")
    parser.add_argument("--threads", type=int, default=1, help="workers for verification")
    parser.add_argument("--budget", type=int, default=10**8,
                        help="decode-operation budget for exhaustive verification")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_kind_q_b(p, required=True):
        p.add_argument("--kind", choices=[k.value for k in ChannelKind], required=required)
        p.add_argument("--q", type=int, required=required)
        p.add_argument("--b", type=int, required=required)

    p = sub.add_parser("construct", help="build a code and write its codebook")
    add_kind_q_b(p)
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("table", help="per-segment codeword counts over a range of b")
    p.add_argument("--kind", choices=[k.value for k in ChannelKind], required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--b-min", type=int, required=True)
    p.add_argument("--b-max", type=int, required=True)
    p.add_argument("--tsv", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("encode", help="map message indices to a channel input")
    add_kind_q_b(p, required=False)
    p.add_argument("--codebook", help="codebook file (alternative to --kind/--q/--b)")
    p.add_argument("--message", required=True, help="comma-separated indices")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("corrupt", help="apply an edit pattern to a sequence")
    p.add_argument("--kind", choices=[k.value for k in ChannelKind], default="insdel",
                   help="edit types drawn when --random")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--pattern", help="pattern text form (seg1:del@3;seg2:none;...)")
    p.add_argument("--random", action="store_true")
    p.add_argument("--p-edit", type=float, default=0.5, dest="p_edit")
    p.add_argument("--input", help="sequence (default: stdin)")
    p.set_defaults(func=cmd_corrupt)

    p = sub.add_parser("decode", help="decode a received sequence")
    add_kind_q_b(p, required=False)
    p.add_argument("--codebook")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--input", help="sequence (default: stdin)")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("verify", help="zero-error verification")
    add_kind_q_b(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--messages", type=int, default=1000)
    p.add_argument("--patterns", type=int, default=100)
    p.add_argument("--p-edit", type=float, default=0.5, dest="p_edit")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lm-check", help="three-condition check for binary codebooks")
    p.add_argument("--codebook")
    p.add_argument("--kind", choices=[k.value for k in ChannelKind], default="insertion")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--b", type=int)
    p.set_defaults(func=cmd_lm_check)

    p = sub.add_parser("bounds", help="lower/upper rate bounds over a range of b")
    p.add_argument("--kind", choices=[k.value for k in ChannelKind], required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--b-min", type=int, required=True)
    p.add_argument("--b-max", type=int, required=True)
    p.add_argument("--k", type=int, default=100)
    p.add_argument("--tsv", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("chernoff-check", help="exact binomial tail inequality check")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--kappa", type=float)
    p.set_defaults(func=cmd_chernoff_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (ParameterError, CodebookFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceBudgetError as exc:
        print(f"resource budget: {exc}", file=sys.stderr)
        return 3
    except (ContractViolationError, DecodeFailureError) as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return 4
    except SegcodeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
