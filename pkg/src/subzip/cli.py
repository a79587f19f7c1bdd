"""Command line front end: build, compress, bench, stats.

Exit codes: 0 success, 1 usage, 2 I/O, 3 data format.
"""
from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

from . import bench, serialize
from .factorize import SCHEMES, Literal, Lz78Factor, LzdFactor, LzmwFactor, compress
from .index import FormatError, InvalidInput, PositionError

log = logging.getLogger("subzip")

EXIT_USAGE = 1
EXIT_IO = 2
EXIT_FORMAT = 3

_PLAIN = set(range(0x21, 0x7F)) - set(b'\\|,"')


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def escape(byte: int) -> str:
    return chr(byte) if byte in _PLAIN else f"\\x{byte:02x}"


def unescape(text: str) -> bytes:
    out = bytearray()
    k = 0
    while k < len(text):
        if text[k] == "\\":
            out.append(int(text[k + 2:k + 4], 16))
            k += 4
        else:
            out.append(ord(text[k]))
            k += 1
    return bytes(out)


def render(index, factorization):
    """Rows of (x, start, ref, literal) strings.

    LZD halves are written as two ``|``-separated slots in both columns, a
    reference filling the ref slot and a literal the literal slot; a factor
    without a right half has a single slot.
    """
    alphabet = index.alphabet

    def lit(sym):
        return escape(alphabet[sym - 1])

    rows = []
    for x, (f, start) in enumerate(zip(factorization.factors, factorization.starts), 1):
        if isinstance(f, Lz78Factor):
            ref, literal = str(f.ref), "" if f.char is None else lit(f.char)
        elif isinstance(f, LzdFactor):
            halves = [f.left] if f.right is None else [f.left, f.right]
            ref = "|".join("" if isinstance(h, Literal) else str(h) for h in halves)
            literal = "|".join(lit(h.symbol) if isinstance(h, Literal) else "" for h in halves)
        elif isinstance(f, LzmwFactor):
            ref = "" if f.pair is None else str(f.pair)
            literal = "" if f.literal is None else lit(f.literal)
        else:
            raise TypeError(f"unknown factor {f!r}")
        rows.append((str(x), str(start), ref, literal))
    return rows


def expand_rows(scheme, rows) -> bytes:
    """Decode rendered rows back into the substring bytes."""
    exps = [b""]
    for _, _, ref, literal in rows:
        if scheme == "lz78":
            exp = exps[int(ref)] + unescape(literal)
        elif scheme == "lzd":
            exp = b""
            for r, lslot in zip(ref.split("|"), literal.split("|")):
                exp += exps[int(r)] if r else unescape(lslot)
        else:
            if ref:
                exp = exps[int(ref)] + exps[int(ref) + 1]
            else:
                exp = unescape(literal)
        exps.append(exp)
    return b"".join(exps[1:])


def _read_bytes(path):
    with open(path, "rb") as f:
        return f.read()


def cmd_build(args, out):
    data = _read_bytes(args.input)
    if args.backend != "rlbwt" and args.sample_rate is not None:
        raise UsageError("--sample-rate applies to the rlbwt backend only")
    if args.sample_rate is not None and args.sample_rate < 1:
        raise UsageError("--sample-rate must be positive")
    index = serialize.build(data, args.backend, args.sample_rate)
    serialize.save(index, args.output, args.int_width)
    print(f"backend\t{index.backend}", file=out)
    print(f"n\t{index.n}", file=out)
    print(f"sigma\t{index.sigma}", file=out)
    if index.backend == "cdawg":
        print(f"nodes\t{index.num_nodes}", file=out)
        print(f"e\t{index.edge_count}", file=out)
    elif index.backend == "rlbwt":
        print(f"r\t{index.runs}", file=out)
        print(f"sample_rate\t{index.sample_rate}", file=out)
    print(f"memory_bits_formula\t{index.memory_bits(args.int_width)}", file=out)


def cmd_compress(args, out):
    index = serialize.load(args.index)
    try:
        f = compress(index, args.scheme, args.begin, args.end)
    except PositionError as exc:
        raise UsageError(str(exc)) from None
    rows = render(index, f)
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["x", "start", "ref", "literal"])
        w.writerows(rows)
    else:
        for row in rows:
            print("\t".join(row), file=out)


def cmd_bench(args, out):
    index = serialize.load(args.index)
    try:
        rows = bench.run(index, args.scheme, args.min_exp, args.max_exp, args.reps,
                         args.seed, dataset=Path(args.index).stem)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as f:
            bench.write_csv(rows, f)
    else:
        bench.write_csv(rows, out)


def cmd_stats(args, out):
    index = serialize.load(args.index)
    if index.backend != "cdawg":
        raise UsageError("stats needs a cdawg index")
    hist = index.path_length_histogram()
    total = sum(hist.values())
    mean = sum(k * c for k, c in hist.items()) / total

    def emit(f):
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["edges", "suffixes"])
        for k, c in hist.items():
            w.writerow([k, c])
        w.writerow(["mean", f"{mean:.6f}"])

    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as f:
            emit(f)
    else:
        emit(out)


def make_parser():
    parser = _Parser(prog="subzip", description="Substring compression queries over text indexes.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build", help="build and save an index")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--backend", choices=list(serialize.BACKENDS), default="cdawg")
    p.add_argument("--sample-rate", type=int, default=None)
    p.add_argument("--int-width", type=int, choices=(32, 64), default=32)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("compress", help="factorize T[begin..end] (1-based, inclusive)")
    p.add_argument("index")
    p.add_argument("scheme", choices=SCHEMES)
    p.add_argument("begin", type=int)
    p.add_argument("end", type=int)
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("bench", help="time random substring queries")
    p.add_argument("index")
    p.add_argument("scheme", choices=SCHEMES)
    p.add_argument("--min-exp", type=int, default=3)
    p.add_argument("--max-exp", type=int, required=True)
    p.add_argument("--reps", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", default=None, help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("stats", help="root-sink path edge-count histogram of a cdawg index")
    p.add_argument("index")
    p.add_argument("--csv", default=None)
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        args.func(args, out)
    except UsageError as exc:
        print(f"subzip: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"subzip: {exc}", file=sys.stderr)
        return EXIT_IO
    except (FormatError, InvalidInput) as exc:
        print(f"subzip: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    return 0


if __name__ == "__main__":
    sys.exit(main())
