"""Command-line interface.

Usage examples::

    fimhe enhance -m fimhe in.pgm out.pgm
    fimhe metrics original.pgm enhanced.pgm
    fimhe benchmark corpus/ -m fimhe,bbhe,dsihe -o report.csv
    fimhe histogram in.pgm hist.txt

Exit status is 0 on success, 1 on a usage error and 2 on an I/O or
image-format error.
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import __version__
from .corpus import dump_histogram, run_benchmark, write_report
from .imageio import ImageFormatError, encode_image, read_image, write_bytes_atomic
from .methods import DEFAULT_RSIHE_DEPTH, UnknownMethodError, apply_method, parse_method, parse_methods
from .metrics import evaluate

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _depth(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("rsihe depth must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fimhe", description="Histogram-equalization contrast enhancement.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("enhance", help="enhance one image")
    p.add_argument("-m", "--method", default="fimhe")
    p.add_argument("-r", "--rsihe-depth", type=_depth, default=DEFAULT_RSIHE_DEPTH)
    p.add_argument("input")
    p.add_argument("output", help="output path; .png writes PNG, anything else binary PGM")

    p = sub.add_parser("metrics", help="score an enhanced image against its original")
    p.add_argument("original")
    p.add_argument("enhanced")
    p.add_argument("--ssim-window", action="store_true", help="use windowed mean SSIM")

    p = sub.add_parser("benchmark", help="run methods over a directory of images")
    p.add_argument("corpus")
    p.add_argument("-m", "--methods", default="fimhe")
    p.add_argument("-r", "--rsihe-depth", type=_depth, default=DEFAULT_RSIHE_DEPTH)
    p.add_argument("-o", "--output", help="report path (default: standard output)")
    p.add_argument("-f", "--format", choices=("csv", "json"), default=None)
    p.add_argument("-j", "--workers", type=int, default=1)
    p.add_argument("--ssim-window", action="store_true")

    p = sub.add_parser("histogram", help="dump the 256-bin histogram as level,count lines")
    p.add_argument("input")
    p.add_argument("output")
    return parser


def _metrics_line(report) -> str:
    from .corpus import format_value

    return " ".join(f"{k}={format_value(v)}" for k, v in report.as_dict().items())


def _run(args) -> int:
    if args.command == "enhance":
        method = parse_method(args.method)
        image = read_image(args.input)
        out = apply_method(method, image, args.rsihe_depth)
        write_bytes_atomic(args.output, encode_image(out, args.output))
    elif args.command == "metrics":
        report = evaluate(read_image(args.original), read_image(args.enhanced), ssim_window=args.ssim_window)
        print(_metrics_line(report))
    elif args.command == "benchmark":
        methods = parse_methods(args.methods)
        fmt = args.format
        if fmt is None:
            fmt = "json" if args.output and args.output.lower().endswith(".json") else "csv"
        run = run_benchmark(
            args.corpus,
            methods,
            rsihe_depth=args.rsihe_depth,
            ssim_window=args.ssim_window,
            workers=max(1, args.workers),
        )
        text = write_report(run, fmt)
        if args.output:
            write_bytes_atomic(args.output, text.encode())
        else:
            sys.stdout.write(text)
        if run.skipped:
            print(f"skipped {len(run.skipped)} unreadable file(s)", file=sys.stderr)
    elif args.command == "histogram":
        text = dump_histogram(read_image(args.input))
        write_bytes_atomic(args.output, text.encode())
    return EXIT_OK


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"fimhe: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _run(args)
    except UnknownMethodError as exc:
        print(f"fimhe: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ImageFormatError, ValueError) as exc:
        print(f"fimhe: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
