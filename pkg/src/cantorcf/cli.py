"""Command-line entry point: ``cantorcf <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import sys

from . import cf
from .cantor import discontinuity_witness, forward_value, inverse_digits, stream_enclosure
from .cf import DomainError
from .harness import (
    PLOT_SERIES,
    SUITES,
    RunConfig,
    dump_report,
    plot_series,
    run_suite,
    sample_irrational,
)
from .regularity import (
    ERGODIC_CSV_HEADER,
    PrecisionError,
    ergodic_averages,
    holder_band,
    khintchine,
)
from .streams import PeriodicStream, StreamExhausted, parse_stream

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3


def _enc_json(e):
    return {"lo": cf.format_rational(e.lo), "hi": cf.format_rational(e.hi),
            "mid": float(e.mid), "width": float(e.width)}


def _write(cfg: RunConfig, text: str):
    if cfg.output_path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(cfg.output_path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {cfg.output_path}: {exc.strerror}") from exc


def _emit(cfg, payload, csv_rows=None):
    if cfg.output_format == "csv" and csv_rows is not None:
        _write(cfg, "\n".join(csv_rows) + "\n")
    else:
        _write(cfg, json.dumps(payload, sort_keys=True, indent=2) + "\n")


def cmd_expand(args, cfg):
    if ":" in args.value:
        lo, hi = (cf.parse_rational(t) for t in args.value.split(":", 1))
    else:
        lo = hi = cf.parse_rational(args.value)
    word, status = cf.expand_certified(lo, hi, args.max_digits)
    _emit(cfg, {"word": cf.format_word(word), "status": status, "digits": len(word)},
          [f"{cf.format_word(word)},{status}"])
    return EXIT_OK


def cmd_eval(args, cfg):
    stream = parse_stream(args.stream)
    enc = stream_enclosure(stream, cfg.depth)
    _emit(cfg, {"stream": str(stream), "exact": enc.exact, **_enc_json(enc)},
          [cf.format_rational(enc.lo) if enc.exact else f"{cf.format_rational(enc.lo)},{cf.format_rational(enc.hi)}"])
    return EXIT_OK


def cmd_map(args, cfg):
    stream = parse_stream(args.stream)
    f1, f2 = forward_value(stream, cfg.depth)
    _emit(cfg, {"stream": str(stream), "depth": cfg.depth, "f1": _enc_json(f1), "f2": _enc_json(f2)},
          [f"{float(f1.mid)!r},{float(f2.mid)!r}"])
    return EXIT_OK


def cmd_inverse(args, cfg):
    x = inverse_digits(parse_stream(args.y1), parse_stream(args.y2))
    if isinstance(x, PeriodicStream) or (x.available is not None and x.terminates):
        text = str(x)
    else:
        text = cf.format_word(x.supply(2 * cfg.depth))
    _emit(cfg, {"x": text}, [text])
    return EXIT_OK


def cmd_witness(args, cfg):
    w = discontinuity_witness(cf.parse_rational(args.rational), parse_stream(args.tail))
    payload = w.to_json()
    payload["differs"] = w.differs
    _emit(cfg, payload)
    return EXIT_OK if w.differs else EXIT_FAIL


def cmd_holder(args, cfg):
    band = holder_band(parse_stream(args.stream), args.n, args.component)
    j = band.to_json()
    _emit(cfg, j, [f"{j['component']},{j['n']},{j['lower']},{j['upper']},{j['c1']},{j['c2']}"])
    return EXIT_OK


def cmd_khintchine(args, cfg):
    res = khintchine(args.k, args.target)
    payload = {"k": res.k, "log_value": res.log_value, "truncation_j": res.truncation_j,
               "tail_bound": res.tail_bound, "converged": res.converged}
    _emit(cfg, payload, [f"{res.k},{res.log_value!r},{res.truncation_j},{res.tail_bound!r}"])
    return EXIT_OK if res.converged else EXIT_PRECISION


def cmd_ergodic(args, cfg):
    if args.stream:
        streams = [parse_stream(args.stream)]
    else:
        streams = [sample_irrational(cfg.seed, i, cfg.bits) for i in range(cfg.samples)]
    reports = [ergodic_averages(s, cfg.depth, args.k) for s in streams]
    _emit(cfg, {"reports": [r.__dict__ for r in reports]},
          [ERGODIC_CSV_HEADER] + [r.csv_row() for r in reports])
    return EXIT_OK


def cmd_plot(args, cfg):
    series = plot_series(args.which, args.points, cfg.depth, cfg.seed, cfg.bits)
    if cfg.output_format == "csv":
        _write(cfg, series.to_csv())
    else:
        _write(cfg, json.dumps(series.to_json(), indent=2) + "\n")
    return EXIT_OK


def cmd_verify(args, cfg):
    report = run_suite(args.suite, cfg)
    _write(cfg, dump_report(report))
    return EXIT_OK if report["pass"] else EXIT_FAIL


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=200)
    common.add_argument("--depth", type=int, default=40)
    common.add_argument("--bits", type=int, default=None,
                        help="sampling precision; default max(256, 4*depth)")
    common.add_argument("--format", dest="output_format", choices=("json", "csv"), default="json")
    common.add_argument("--out", dest="output_path", default="-")

    parser = argparse.ArgumentParser(prog="cantorcf", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="certified digits of p/q or lo:hi")
    p.add_argument("value")
    p.add_argument("--max-digits", type=int, default=None)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("eval", parents=[common], help="value (or enclosure) of a stream")
    p.add_argument("stream")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("map", parents=[common], help="enclosures of f1(x), f2(x)")
    p.add_argument("stream")
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("inverse", parents=[common], help="digits of x with f(x) = (y1, y2)")
    p.add_argument("y1")
    p.add_argument("y2")
    p.set_defaults(func=cmd_inverse)

    p = sub.add_parser("witness", parents=[common], help="discontinuity witness at a rational")
    p.add_argument("rational")
    p.add_argument("--tail", default="[;(1)]")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("holder", parents=[common], help="Hölder bound band at depth n")
    p.add_argument("stream")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--component", choices=("f1", "f2"), default="f1")
    p.set_defaults(func=cmd_holder)

    p = sub.add_parser("khintchine", parents=[common], help="log K_k with tail bound")
    p.add_argument("--k", type=int, choices=(0, 1), default=0)
    p.add_argument("--target", type=float, default=1e-7)
    p.set_defaults(func=cmd_khintchine)

    p = sub.add_parser("ergodic", parents=[common], help="digit log-averages")
    p.add_argument("stream", nargs="?")
    p.add_argument("--k", type=int, default=0)
    p.set_defaults(func=cmd_ergodic)

    p = sub.add_parser("plot", parents=[common], help="figure data series")
    p.add_argument("--which", choices=PLOT_SERIES, required=True)
    p.add_argument("--points", type=int, default=2000)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    bits = args.bits if args.bits is not None else max(256, 4 * args.depth)
    try:
        cfg = RunConfig(args.seed, args.samples, args.depth, bits,
                        args.output_format, args.output_path)
    except DomainError as exc:
        parser.error(str(exc))
    try:
        return args.func(args, cfg)
    except (PrecisionError, StreamExhausted) as exc:
        print(f"cantorcf: precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except DomainError as exc:
        print(f"cantorcf: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"cantorcf: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())


__all__ = ["main", "build_parser"]
