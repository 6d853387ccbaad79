"""Binary PGM (P5) and PPM (P6) reading and writing.

Only maxval 255 (8-bit) and 65535 (16-bit, big-endian samples) are accepted,
since those are the two depths the container can state exactly.
"""

import re

import numpy as np

from .bounds import ImagePlane
from .errors import PnmParseError, ShapeError

__all__ = ["read_pnm", "write_pnm", "load_pnm", "save_pnm"]

_TOKEN = re.compile(rb"(?:\s|#[^\n\r]*)*([^\s#]+)")
_DEPTHS = {255: 8, 65535: 16}


def _next_token(data, pos, what):
    m = _TOKEN.match(data, pos)
    if m is None:
        raise PnmParseError(f"missing {what}", pos)
    return m.group(1), m.end(), m.start(1)


def _read_int(data, pos, what):
    token, end, start = _next_token(data, pos, what)
    if not token.isdigit():
        raise PnmParseError(f"{what} is not a decimal integer: {token[:16]!r}", start)
    return int(token), end, start


def read_pnm(data):
    """Decode P5/P6 bytes into a list of one (gray) or three (R, G, B) planes."""
    data = bytes(data)
    magic = data[:2]
    if magic not in (b"P5", b"P6"):
        raise PnmParseError(f"unsupported magic {magic!r}; expected P5 or P6", 0)
    pos = 2
    width, pos, _ = _read_int(data, pos, "width")
    height, pos, _ = _read_int(data, pos, "height")
    maxval, pos, maxval_at = _read_int(data, pos, "maxval")
    if width < 1 or height < 1:
        raise PnmParseError(f"invalid dimensions {width}x{height}", 2)
    if maxval not in _DEPTHS:
        raise PnmParseError(f"maxval {maxval} not supported (255 or 65535)", maxval_at)
    if pos >= len(data) or data[pos : pos + 1] not in (b" ", b"\t", b"\n", b"\r", b"\v", b"\f"):
        raise PnmParseError("expected a single whitespace byte after maxval", pos)
    pos += 1

    channels = 1 if magic == b"P5" else 3
    depth = _DEPTHS[maxval]
    dtype = np.dtype(">u2") if depth == 16 else np.dtype("u1")
    needed = width * height * channels * dtype.itemsize
    if len(data) - pos < needed:
        raise PnmParseError(
            f"pixel data holds {len(data) - pos} bytes, {needed} required", len(data)
        )
    pixels = np.frombuffer(data, dtype=dtype, count=width * height * channels, offset=pos)
    pixels = pixels.reshape(height, width, channels).astype(np.int64)
    return [ImagePlane(pixels[:, :, c], depth) for c in range(channels)]


def write_pnm(planes) -> bytes:
    """Encode one or three planes in canonical form (single spaces, newline after maxval)."""
    planes = list(planes)
    if len(planes) not in (1, 3):
        raise ShapeError(f"PNM holds 1 or 3 planes, got {len(planes)}")
    first = planes[0]
    for p in planes[1:]:
        if p.shape != first.shape or p.depth != first.depth:
            raise ShapeError("all planes must share geometry and depth")
    if first.depth not in (8, 16):
        raise ShapeError(f"PNM output needs depth 8 or 16, got {first.depth}")
    magic = "P5" if len(planes) == 1 else "P6"
    maxval = (1 << first.depth) - 1
    dtype = ">u2" if first.depth == 16 else "u1"
    pixels = np.stack([p.samples for p in planes], axis=-1).astype(dtype)
    header = f"{magic} {first.width} {first.height} {maxval}\n".encode("ascii")
    return header + pixels.tobytes()


def load_pnm(path):
    with open(path, "rb") as fh:
        return read_pnm(fh.read())


def save_pnm(path, planes):
    with open(path, "wb") as fh:
        fh.write(write_pnm(planes))
