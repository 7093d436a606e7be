"""ocf-bench: run one benchmark experiment and emit a CSV report.

Example:
    ocf-bench table1 --mode eof --keys 100000 --seed 7 --out table1_eof.csv
"""

import argparse
import sys

from .bench import (
    DEFAULT_PROBES,
    default_capacity,
    emit_csv,
    insert_workload,
    run_experiment,
)
from .params import FilterParams, InvalidParams


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ocf-bench",
        description="Benchmark the occupancy-controlled cuckoo filter.",
    )
    parser.add_argument("experiment", choices=["table1", "fill", "trendline"])
    parser.add_argument("--mode", choices=["pre", "eof", "raw"], default="eof")
    parser.add_argument("--keys", type=int, default=100_000,
                        help="number of keys to insert")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--capacity", type=int, default=None,
                        help="initial logical bucket count "
                             "(default: keys/60, so resizing is exercised)")
    parser.add_argument("--bucket-size", type=int, default=4)
    parser.add_argument("--fp-bits", type=int, default=8)
    parser.add_argument("--o-max", type=float, default=0.9)
    parser.add_argument("--o-min", type=float, default=0.2)
    parser.add_argument("--k-max", type=float, default=0.8)
    parser.add_argument("--k-min", type=float, default=0.3)
    parser.add_argument("--gain", type=float, default=1.0 / 16.0)
    parser.add_argument("--probes", type=int, default=DEFAULT_PROBES)
    parser.add_argument("--out", type=str, default=None,
                        help="CSV destination (default: stdout)")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.keys < 0:
        parser.error("--keys must be non-negative")
    if args.probes < 0:
        parser.error("--probes must be non-negative")

    capacity = args.capacity if args.capacity is not None else default_capacity(args.keys)
    params = FilterParams(
        capacity=capacity,
        bucket_size=args.bucket_size,
        fingerprint_bits=args.fp_bits,
        o_max=args.o_max,
        o_min=args.o_min,
        k_min=args.k_min,
        k_max=args.k_max,
        estimation_gain=args.gain,
    )
    try:
        params.validate()
    except InvalidParams as exc:
        parser.error(str(exc))

    spec = insert_workload(args.keys, args.seed)
    report = run_experiment(args.experiment, args.mode, spec, params,
                            probes=args.probes)
    if args.out:
        with open(args.out, "wb") as fh:
            emit_csv(report, fh)
    else:
        emit_csv(report, sys.stdout.buffer)
        sys.stdout.buffer.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())
