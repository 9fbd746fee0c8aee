"""Command-line front end.

Exit codes: 0 ok, 2 invalid parameters, 3 inconsistent word,
4 ambiguous decoding or decoding failure, 5 decoder budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from . import bounds as B
from .codec import (
    AmbiguousDecoding,
    BudgetExceeded,
    DecodingFailure,
    InconsistentWord,
    decode_erasures,
    decode_errors,
    encode,
    from_wire,
    to_wire,
)
from .construction import (
    InvalidSpec,
    best_entanglement,
    distance_formula,
    feasible_splits,
    make_spec,
    max_length,
    spec_from_dict,
    summarize,
)
from .gf import build_base_field, field_from_descriptor, is_prime
from .simulator import ChannelModel, run_trials

EXIT_INVALID = 2
EXIT_INCONSISTENT = 3
EXIT_AMBIGUOUS = 4
EXIT_BUDGET = 5


class UsageError(Exception):
    pass


def fmt_frac(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def fmt_float(x: Fraction) -> str:
    return f"{float(x):.6f}"


def _writer(out):
    return csv.writer(out, lineterminator="\n")


def _field_arg(text: str):
    try:
        if "^" not in text:
            return field_for_order(int(text))
        return field_from_descriptor(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def field_for_order(q: int):
    """GF(q) for a prime power q given as a plain integer."""
    for p in range(2, q + 1):
        if q % p == 0:
            m, r = 0, q
            while r % p == 0:
                r //= p
                m += 1
            if r != 1 or not is_prime(p):
                raise ValueError(f"{q} is not a prime power")
            return build_base_field(p, m)
    raise ValueError(f"{q} is not a prime power")


def load_spec(path: str):
    with open(path) as fh:
        data = json.load(fh)
    return spec_from_dict(data)


def _read_symbols(args) -> list[int]:
    tokens = args.symbols if args.symbols else sys.stdin.read().split()
    try:
        return [int(t) for t in tokens]
    except ValueError as exc:
        raise UsageError(f"symbols must be integers: {exc}") from None


# -- commands -------------------------------------------------------------------

SUMMARY_HEADER = (
    "q", "n", "k", "n1", "n2", "d", "c", "rate", "rate_float",
    "gamma", "gamma_float", "delta", "delta_float", "class",
)


def _summary_row(q, n, k, n1, n2, d):
    c = n2
    gamma, delta = B.gamma_delta(n, k, d, c)
    rate = Fraction(k, n)
    return [
        q, n, k, n1, n2, d, c, fmt_frac(rate), fmt_float(rate),
        fmt_frac(gamma), fmt_float(gamma), fmt_frac(delta), fmt_float(delta),
        B.classify_parameters(n, k, d, c),
    ]


def cmd_construct(args, out):
    field = _field_arg(args.field)
    if args.n1 is not None or args.n2 is not None:
        spec = make_spec(field, args.n, args.k, n1=args.n1, n2=args.n2)
    else:
        n1, n2, _ = best_entanglement(field, args.n, args.k)
        spec = make_spec(field, args.n, args.k, n1=n1)
    if args.out:
        data = spec.to_dict()
        if args.label:
            data["label"] = args.label
        with open(args.out, "w") as fh:
            json.dump(data, fh, indent=2)
            fh.write("\n")
    s = summarize(spec)
    w = _writer(out)
    w.writerow(SUMMARY_HEADER)
    w.writerow(_summary_row(spec.q, spec.n, spec.k, spec.n1, spec.n2, s.d))
    return 0


def cmd_encode(args, out):
    spec = load_spec(args.spec)
    cw = encode(spec, _read_symbols(args))
    out.write(" ".join(map(str, to_wire(spec, cw))) + "\n")
    return 0


def cmd_decode(args, out):
    spec = load_spec(args.spec)
    values = _read_symbols(args)
    if args.erasures:
        try:
            marks = [int(x) for x in args.erasures.split(",") if x.strip()]
        except ValueError:
            raise UsageError("--erasures expects comma-separated positions") from None
        if len(values) != spec.n or any(not 0 <= i < spec.n for i in marks):
            raise UsageError("erasure position out of range")
        for i in marks:
            values[i] = spec.q * spec.q
    rcv = from_wire(spec, values)
    msg = decode_errors(spec, rcv) if args.auto else decode_erasures(spec, rcv)
    out.write(" ".join(map(str, msg)) + "\n")
    return 0


BOUNDS_HEADER = (
    "n", "k", "d", "c", "n1", "n2", "singleton_k", "block_k",
    "quantum_k", "quantum_k_float", "quantum_d", "quantum_d_float",
    "gamma", "gamma_float", "delta", "delta_float", "class",
)


def cmd_bounds(args, out):
    n, c = args.n, args.c
    if n < 1 or not 0 <= c <= n:
        raise UsageError(f"need n >= 1 and 0 <= c <= n (n={n}, c={c})")
    n2 = c if args.n2 is None else args.n2
    n1 = n - n2 if args.n1 is None else args.n1
    if n1 + n2 != n or n1 < 0 or n2 < 0:
        raise UsageError(f"need n1 + n2 = n (got {n1} + {n2}, n={n})")
    if args.k is None and args.d is None:
        raise UsageError("give --k, --d or both")
    d = args.d
    if d is not None and not 1 <= d <= n:
        raise UsageError(f"need 1 <= d <= n (d={d})")
    k = args.k if args.k is not None else B.block_error_bound(n, d, n1, n2)
    if k < 1 or k > n + n2:
        raise UsageError(f"k={k} outside 1..n+n2={n + n2}")
    if d is None:
        d = distance_formula(n, k, n1, n2)
    r = B.bounds_report(n, k, d, c, n1, n2)
    w = _writer(out)
    w.writerow(BOUNDS_HEADER)
    w.writerow([
        r.n, r.k, r.d, r.c, n1, n2, r.singleton_k, r.block_k,
        fmt_frac(r.quantum_k), fmt_float(r.quantum_k),
        fmt_frac(r.quantum_d), fmt_float(r.quantum_d),
        fmt_frac(r.gamma), fmt_float(r.gamma), fmt_frac(r.delta), fmt_float(r.delta),
        r.optimality,
    ])
    return 0


def cmd_simulate(args, out):
    spec = load_spec(args.spec)
    try:
        if args.erasure_prob is not None:
            ch = ChannelModel.iid_erasure(args.erasure_prob)
        elif args.error_prob is not None:
            ch = ChannelModel.iid_error(args.error_prob)
        elif args.mixed is not None:
            ch = ChannelModel.mixed(*args.mixed)
        else:
            ch = ChannelModel.fixed_erasures(args.erasures)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if ch.count > spec.n:
        raise UsageError(f"cannot erase {ch.count} of n={spec.n} coordinates")
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    report = run_trials(spec, ch, args.trials, master_seed=args.seed, workers=args.workers)
    out.write(report.to_text() if args.format == "text" else report.to_csv())
    return 0


SWEEP_HEADER = (
    "q", "n", "k", "n1", "n2", "d", "c",
    "gamma", "gamma_float", "delta", "delta_float", "class",
)


def sweep_rows(fields, n_min, n_max, k_min, k_max, require_floor=False, parity=None,
               only_optimal=False, best_only=False):
    """Rows for every valid (q, n, k, split); returns (rows, skipped)."""
    rows, skipped = [], 0
    for field in fields:
        q = field.q
        hi = max_length(q) if n_max is None else n_max
        for n in range(max(1, n_min), hi + 1):
            top_k = 2 * n if k_max is None else k_max
            for k in range(k_min, top_k + 1):
                splits = list(feasible_splits(q, n, k)) if n <= max_length(q) else []
                if k < 1 or not splits:
                    skipped += 1
                    continue
                if best_only:
                    n1b, n2b, _ = best_entanglement(field, n, k)
                    splits = [(n1b, n2b)]
                for n1, n2 in splits:
                    c = n2
                    if require_floor and n - q > c:
                        continue
                    if parity and (n - k + 1 + c) % 2 != (1 if parity == "odd" else 0):
                        continue
                    d = distance_formula(n, k, n1, n2)
                    row = _summary_row(q, n, k, n1, n2, d)
                    cls = row[-1]
                    if only_optimal and cls not in (B.DIMENSION_OPTIMAL, B.DISTANCE_OPTIMAL_ONLY):
                        continue
                    rows.append(row[:7] + row[9:])
    rows.sort(key=lambda r: (r[0], r[1], r[2], r[3]))
    return rows, skipped


def cmd_sweep(args, out):
    fields = [_field_arg(x) for x in args.q.split(",") if x.strip()]
    if not fields:
        raise UsageError("--q needs at least one field")
    if args.n_max is not None and args.n_max < args.n_min:
        raise UsageError("empty n range")
    if args.k_max is not None and args.k_max < args.k_min:
        raise UsageError("empty k range")
    rows, skipped = sweep_rows(
        fields, args.n_min, args.n_max, args.k_min, args.k_max,
        require_floor=args.require_floor, parity=args.parity,
        only_optimal=args.only_optimal, best_only=args.best,
    )
    w = _writer(out)
    w.writerow(SWEEP_HEADER)
    w.writerows(rows)
    print(f"skipped {skipped} invalid (q, n, k) combinations", file=sys.stderr)
    return 0


TRADEOFF_HEADER = ("delta", "rate", "series", "e", "rate_float")


def cmd_tradeoff(args, out):
    try:
        e = Fraction(args.e)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--e must be a rational number, got {args.e!r}") from None
    if not 0 <= e <= 1:
        raise UsageError(f"--e must lie in [0, 1], got {args.e}")
    if args.resolution < 1:
        raise UsageError("--resolution must be >= 1")
    w = _writer(out)
    w.writerow(TRADEOFF_HEADER)
    for pt in B.tradeoff_curve(e, args.resolution):
        w.writerow([fmt_frac(pt.delta_norm), fmt_frac(pt.rate), pt.series, fmt_frac(pt.e), fmt_float(pt.rate)])
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mixedrs", description="Mixed-alphabet Reed-Solomon codes for entanglement-assisted communication")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a code and print its summary")
    p.add_argument("--field", required=True, help="base field as p^m, e.g. 2^3")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    split = p.add_mutually_exclusive_group()
    split.add_argument("--n1", type=int)
    split.add_argument("--n2", type=int)
    split.add_argument("--best-entanglement", action="store_true",
                       help="pick the split maximizing d (default when no split is given)")
    p.add_argument("--out", help="write the spec file here")
    p.add_argument("--label")
    p.set_defaults(func=cmd_construct)

    for name, func in (("encode", cmd_encode), ("decode", cmd_decode)):
        p = sub.add_parser(name)
        p.add_argument("spec", help="spec file")
        p.add_argument("symbols", nargs="*", help="symbols (default: read stdin)")
        if name == "decode":
            p.add_argument("--erasures", help="comma-separated erased positions")
            p.add_argument("--auto", action="store_true", help="also correct errors")
        p.set_defaults(func=func)

    p = sub.add_parser("bounds", help="evaluate bounds and optimality")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--n1", type=int)
    p.add_argument("--n2", type=int)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("simulate", help="Monte-Carlo decoding trials")
    p.add_argument("spec")
    model = p.add_mutually_exclusive_group()
    model.add_argument("--erasures", type=int, default=0, help="fixed erasures per trial")
    model.add_argument("--erasure-prob", type=float)
    model.add_argument("--error-prob", type=float)
    model.add_argument("--mixed", type=float, nargs=2, metavar=("ERROR_PROB", "BAD_EBIT_PROB"))
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("csv", "text"), default="csv")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="tabulate parameters over ranges")
    p.add_argument("--q", required=True, help="comma-separated field orders or p^m descriptors")
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int)
    p.add_argument("--k-min", type=int, default=1)
    p.add_argument("--k-max", type=int)
    p.add_argument("--require-floor", action="store_true", help="keep only rows with n - q <= c")
    p.add_argument("--parity", choices=("odd", "even"), help="parity of n - k + 1 + c")
    p.add_argument("--only-optimal", action="store_true")
    p.add_argument("--best", action="store_true", help="one row per (q, n, k): best split only")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("tradeoff", help="asymptotic rate vs d/n curves as CSV")
    p.add_argument("--e", default="0", help="entanglement fraction c/n, e.g. 1/2")
    p.add_argument("--resolution", type=int, default=100)
    p.set_defaults(func=cmd_tradeoff)
    return ap


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    # symbols may follow options, e.g. "decode spec --auto 1 2 3"
    if extra and getattr(args, "symbols", None) is not None and all(t.isdigit() for t in extra):
        args.symbols = args.symbols + extra
    elif extra:
        parser.error(f"unrecognized arguments: {' '.join(extra)}")
    try:
        return args.func(args, out)
    except (InvalidSpec, UsageError) as exc:
        reason = getattr(exc, "reason", "usage")
        print(f"error [{reason}]: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except InconsistentWord as exc:
        print(f"inconsistent word: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (AmbiguousDecoding, DecodingFailure) as exc:
        print(f"decoding failed: {exc}", file=sys.stderr)
        return EXIT_AMBIGUOUS
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
