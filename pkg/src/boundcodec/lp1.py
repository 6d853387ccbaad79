"""LP1: lossless coding of reduced-precision planes.

Each sample is predicted from its causal neighbours with the LOCO-I median
predictor, the prediction residual is folded modulo ``2**n`` onto a small
unsigned symbol, and the symbols are block-Rice coded (see :mod:`.rice`).
"""

import numpy as np

from . import _kernels
from .bounds import ImagePlane
from .errors import CorruptStreamError, DomainError
from .rice import decode_symbols, encode_symbols

__all__ = [
    "med_predict",
    "med_predict_plane",
    "fold_residual",
    "unfold_residual",
    "lp1_encode",
    "lp1_decode",
    "lp1_decode_prefix",
]


def med_predict(left: int, up: int, upleft: int) -> int:
    if upleft >= max(left, up):
        return min(left, up)
    if upleft <= min(left, up):
        return max(left, up)
    return left + up - upleft


def med_predict_plane(samples):
    """Median prediction for every sample of a plane at once.

    Boundary convention: 0 at the origin, the left neighbour along the first
    row, the upper neighbour down the first column.
    """
    s = np.asarray(samples, dtype=np.int64)
    pred = np.zeros_like(s)
    pred[0, 1:] = s[0, :-1]
    pred[1:, 0] = s[:-1, 0]
    a = s[1:, :-1]
    b = s[:-1, 1:]
    c = s[:-1, :-1]
    hi = np.maximum(a, b)
    lo = np.minimum(a, b)
    pred[1:, 1:] = np.where(c >= hi, lo, np.where(c <= lo, hi, a + b - c))
    return pred


def fold_residual(actual, predicted, n):
    """Bijection ``[0, 2**n) -> [0, 2**n)`` putting small residuals first."""
    modulus = 1 << n
    s = (np.asarray(actual, dtype=np.int64) - predicted) % modulus
    folded = np.where(s < modulus >> 1, 2 * s, 2 * (modulus - s) - 1)
    return int(folded) if folded.ndim == 0 else folded


def unfold_residual(folded, n):
    modulus = 1 << n
    u = np.asarray(folded, dtype=np.int64)
    s = np.where(u & 1, modulus - ((u + 1) >> 1), u >> 1)
    return int(s) if s.ndim == 0 else s


def lp1_encode(plane: ImagePlane) -> bytes:
    """Losslessly code a plane at its own depth ``n`` (1..16)."""
    n = plane.depth
    if n < 1:
        raise DomainError("LP1 needs a plane depth of at least 1 bit")
    pred = med_predict_plane(plane.samples)
    symbols = fold_residual(plane.samples, pred, n)
    return encode_symbols(symbols.ravel())


def lp1_decode_prefix(data, width, height, n):
    """Decode one LP1 stream from the front of ``data``.

    Returns the plane and the number of bytes the stream occupied, so that
    several streams can be stored back to back.
    """
    if n < 1:
        raise DomainError("LP1 needs a plane depth of at least 1 bit")
    count = width * height
    if count < 1:
        raise DomainError(f"invalid plane geometry {width}x{height}")
    folded, end_bit = decode_symbols(data, count)
    plane, status, index = _kernels.med_reconstruct(folded, height, width, n)
    if status != _kernels.OK:
        raise CorruptStreamError(f"LP1 symbol {index} exceeds {n}-bit range")
    return ImagePlane(plane, n), (end_bit + 7) // 8


def lp1_decode(data, width, height, n) -> ImagePlane:
    """Exact inverse of :func:`lp1_encode`; trailing bytes are rejected."""
    plane, used = lp1_decode_prefix(data, width, height, n)
    if used != len(data):
        raise CorruptStreamError(f"{len(data) - used} trailing bytes after LP1 stream", used)
    return plane
