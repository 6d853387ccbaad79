"""Command-line interface.

Exit codes: 0 success, 1 usage/format/config error, 2 I/O error,
3 bound violations found by ``verify``.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile

from .container import (
    ColorMode,
    CompressConfig,
    compress,
    decompress_detailed,
    inspect,
)
from .errors import BoundCodecError, ConfigError
from .lossy import LossyCodecConfig
from .metrics import compute_metrics, verify_bounds
from .pnm import read_pnm, write_pnm

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_VIOLATION = 3

_CHANNEL_NAMES = {1: ("Y",), 3: ("R", "G", "B")}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_codec(text: str) -> LossyCodecConfig:
    """Parse ``const``, ``down:f=4`` or ``haar:q=32,levels=4``."""
    name, _, rest = text.strip().partition(":")
    params = {}
    if rest:
        for item in rest.split(","):
            key, sep, value = item.partition("=")
            if not sep:
                raise ConfigError(f"codec parameter {item!r} is not key=value")
            try:
                params[key.strip()] = int(value)
            except ValueError:
                raise ConfigError(f"codec parameter {key} needs an integer, got {value!r}") from None
    name = name.lower()
    if name == "const":
        _expect(params, set(), name)
        return LossyCodecConfig.const()
    if name in ("down", "downsample"):
        _expect(params, {"f"}, name)
        return LossyCodecConfig.downsample(params["f"])
    if name == "haar":
        _expect(params, {"q", "levels"}, name)
        return LossyCodecConfig.haar(params["levels"], params["q"])
    raise ConfigError(f"unknown lossy codec {name!r} (const, down, haar)")


def _expect(params, keys, name):
    if set(params) != keys:
        wanted = ", ".join(sorted(keys)) or "no parameters"
        raise ConfigError(f"codec {name} takes {wanted}; got {', '.join(sorted(params)) or 'none'}")


def parse_critical_depth(text: str, color: str, channels: int):
    """Turn ``4``, ``Y=4`` or ``R=4,G=4,B=4`` into critical depths."""
    text = text.strip()
    if text.isdigit():
        return (int(text),)
    names = ("Y",) if color == "rct" else _CHANNEL_NAMES[channels]
    found = {}
    for item in text.split(","):
        key, sep, value = item.partition("=")
        key = key.strip().upper()
        if not sep or not value.strip().isdigit():
            raise ConfigError(f"critical depth entry {item!r} is not NAME=INT")
        if key not in names:
            raise ConfigError(f"channel {key!r} not in {', '.join(names)}")
        found[key] = int(value)
    missing = [n for n in names if n not in found]
    if missing:
        raise ConfigError(f"critical depth missing for {', '.join(missing)}")
    return tuple(found[n] for n in names)


def _read(path):
    with open(path, "rb") as fh:
        return fh.read()


def _write_atomic(path, data):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cmd_compress(args, out):
    planes = read_pnm(_read(args.input))
    lossy = parse_codec(args.lossy)
    depths = parse_critical_depth(args.critical_depth, args.color, len(planes))
    mode = ColorMode.RCT if args.color == "rct" else ColorMode.PER_CHANNEL
    if mode is ColorMode.RCT and len(planes) != 3:
        raise ConfigError("--color rct needs an RGB (P6) input")
    data = compress(planes, CompressConfig(mode, depths, lossy))
    _write_atomic(args.output, data)
    out.write(inspect(data).to_text())
    return EXIT_OK


def cmd_decompress(args, out):
    result = decompress_detailed(_read(args.input))
    _write_atomic(args.output, write_pnm(result.planes))
    h = result.header
    out.write(f"width={h.width}\nheight={h.height}\nchannels={h.channels}\nd={h.depth}\n")
    return EXIT_OK


def cmd_inspect(args, out):
    out.write(inspect(_read(args.input)).to_text())
    return EXIT_OK


def cmd_verify(args, out):
    original = read_pnm(_read(args.original))
    data = _read(args.compressed)
    result = decompress_detailed(data)
    violations, checked = verify_bounds(original, result.planes, result.header, result.bounded_y)
    report = compute_metrics(original, result.planes, result.header.depth)
    report.bound_violations = violations
    report.checked_samples = checked
    report.compression_ratio = inspect(data).ratio
    out.write(report.to_text())
    return EXIT_VIOLATION if violations else EXIT_OK


def cmd_metrics(args, out):
    a = read_pnm(_read(args.a))
    b = read_pnm(_read(args.b))
    if a[0].depth != b[0].depth:
        raise ConfigError(f"depths differ: {a[0].depth} vs {b[0].depth}")
    report = compute_metrics(a, b)
    out.write(report.to_json() + "\n" if args.json else report.to_text())
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="boundcodec", description="Bounded-error lossy image compression.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compress", help="PNM -> CBC1")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--color", choices=("rct", "none"), default="none")
    p.add_argument("--critical-depth", default="4", help='"4", "Y=4" or "R=4,G=4,B=4"')
    p.add_argument("--lossy", default="haar:q=32,levels=3", help='"const", "down:f=4", "haar:q=32,levels=4"')
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("decompress", help="CBC1 -> PNM")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_decompress)

    p = sub.add_parser("inspect", help="print a CBC1 header report")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("verify", help="check a CBC1 file's error bounds against its original")
    p.add_argument("--original", required=True)
    p.add_argument("--compressed", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("metrics", help="compare two PNM images")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--json", action="store_true", help="emit one JSON object")
    p.set_defaults(func=cmd_metrics)
    return parser


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        err.write(f"boundcodec: error: {exc}\n")
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except OSError as exc:
        err.write(f"boundcodec: I/O error: {exc}\n")
        return EXIT_IO
    except BoundCodecError as exc:
        err.write(f"boundcodec: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE


def run():
    sys.exit(main())
