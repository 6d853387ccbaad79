"""Built-in lossy codecs whose reconstructions get clamped by the bounds.

Three codecs are provided:

``CONST``
    Stores nothing and predicts mid-gray, ``2**(d-1)``, everywhere.
``DOWNSAMPLE``
    Box-averages ``f x f`` blocks, stores that grid losslessly with LP1 and
    upsamples it bilinearly in exact integer arithmetic.
``HAAR``
    Integer S-transform over ``L`` levels, dead-zone quantization of the
    detail bands with step ``q``, block-Rice coding of every band.

Each codec works channel by channel; channel payloads are concatenated in
channel order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .bounds import ImagePlane
from .errors import ConfigError, CorruptStreamError, ShapeError
from .lp1 import lp1_decode_prefix, lp1_encode
from .rice import decode_symbols, encode_symbols, unzigzag, zigzag

__all__ = [
    "CodecId",
    "LossyCodecConfig",
    "lossy_encode",
    "lossy_decode",
    "box_downsample",
    "bilinear_upsample",
    "haar_forward_1d",
    "haar_inverse_1d",
    "haar_forward_2d",
    "haar_inverse_2d",
    "quantize_coeff",
    "dequantize",
]

MAX_HAAR_LEVELS = 6


class CodecId(enum.IntEnum):
    CONST = 0
    DOWNSAMPLE = 1
    HAAR = 2


@dataclass(frozen=True)
class LossyCodecConfig:
    """Codec identifier plus its integer parameters.

    ``params`` is ``()`` for CONST, ``(f,)`` for DOWNSAMPLE and
    ``(levels, q)`` for HAAR, which is also the order they take in a
    container header.
    """

    codec_id: CodecId
    params: tuple = ()

    def __post_init__(self):
        try:
            codec = CodecId(self.codec_id)
        except ValueError:
            raise ConfigError(f"unknown lossy codec id {self.codec_id!r}") from None
        params = tuple(int(p) for p in self.params)
        object.__setattr__(self, "codec_id", codec)
        object.__setattr__(self, "params", params)
        self.validate()

    @classmethod
    def const(cls):
        return cls(CodecId.CONST)

    @classmethod
    def downsample(cls, factor):
        return cls(CodecId.DOWNSAMPLE, (factor,))

    @classmethod
    def haar(cls, levels, q):
        return cls(CodecId.HAAR, (levels, q))

    def validate(self):
        expected = {CodecId.CONST: 0, CodecId.DOWNSAMPLE: 1, CodecId.HAAR: 2}[self.codec_id]
        if len(self.params) != expected:
            raise ConfigError(
                f"{self.codec_id.name} takes {expected} parameters, got {len(self.params)}"
            )
        if self.codec_id is CodecId.DOWNSAMPLE and self.params[0] < 2:
            raise ConfigError(f"DOWNSAMPLE factor must be >= 2, got {self.params[0]}")
        if self.codec_id is CodecId.HAAR:
            levels, q = self.params
            if not 1 <= levels <= MAX_HAAR_LEVELS:
                raise ConfigError(f"HAAR levels must be in 1..{MAX_HAAR_LEVELS}, got {levels}")
            if q < 1:
                raise ConfigError(f"HAAR quantizer step must be >= 1, got {q}")
        if any(not 0 <= p < 2**32 for p in self.params):
            raise ConfigError("codec parameters must fit in 32 bits")

    def describe(self):
        if self.codec_id is CodecId.CONST:
            return "const"
        if self.codec_id is CodecId.DOWNSAMPLE:
            return f"down:f={self.params[0]}"
        return f"haar:q={self.params[1]},levels={self.params[0]}"


# -- DOWNSAMPLE ---------------------------------------------------------------


def box_downsample(samples, f):
    """Round-half-up mean of each ``f x f`` block; edge blocks use the pixels they have."""
    s = np.asarray(samples, dtype=np.int64)
    h, w = s.shape
    gh, gw = -(-h // f), -(-w // f)
    padded = np.zeros((gh * f, gw * f), dtype=np.int64)
    padded[:h, :w] = s
    mask = np.zeros_like(padded)
    mask[:h, :w] = 1
    total = padded.reshape(gh, f, gw, f).sum(axis=(1, 3))
    count = mask.reshape(gh, f, gw, f).sum(axis=(1, 3))
    return (2 * total + count) // (2 * count)


def _axis_weights(size, grid_size, f):
    """Left grid index, right grid index and right weight (out of ``2f``) per output pixel."""
    denom = 2 * f
    t = 2 * np.arange(size, dtype=np.int64) + 1 - f
    i0 = t // denom
    r = t - i0 * denom
    lo = np.clip(i0, 0, grid_size - 1)
    hi = np.clip(i0 + 1, 0, grid_size - 1)
    return lo, hi, r


def bilinear_upsample(grid, width, height, f):
    """Upsample a block-mean grid back to ``height x width``.

    Grid samples sit at block centres and indices clamp at the edges.  The
    weighted sum has denominator ``4 f**2`` and is rounded half up.
    """
    g = np.asarray(grid, dtype=np.int64)
    denom = 2 * f
    ylo, yhi, ry = _axis_weights(height, g.shape[0], f)
    xlo, xhi, rx = _axis_weights(width, g.shape[1], f)
    # horizontal pass keeps the factor 2f in the numerator
    rows_lo = g[ylo]
    rows_hi = g[yhi]
    wx_hi = rx[None, :]
    wx_lo = denom - wx_hi
    top = rows_lo[:, xlo] * wx_lo + rows_lo[:, xhi] * wx_hi
    bottom = rows_hi[:, xlo] * wx_lo + rows_hi[:, xhi] * wx_hi
    wy_hi = ry[:, None]
    num = top * (denom - wy_hi) + bottom * wy_hi
    full = denom * denom
    return (2 * num + full) // (2 * full)


# -- HAAR ---------------------------------------------------------------------


def _pad_even(a, axis):
    if a.shape[axis] % 2 == 0:
        return a
    last = np.take(a, [-1], axis=axis)
    return np.concatenate([a, last], axis=axis)


def _s_forward(a, axis):
    a = _pad_even(np.asarray(a, dtype=np.int64), axis)
    even = np.take(a, np.arange(0, a.shape[axis], 2), axis=axis)
    odd = np.take(a, np.arange(1, a.shape[axis], 2), axis=axis)
    return (even + odd) >> 1, even - odd


def _s_inverse(approx, detail, length, axis):
    approx = np.asarray(approx, dtype=np.int64)
    detail = np.asarray(detail, dtype=np.int64)
    even = approx + ((detail + 1) >> 1)
    odd = even - detail
    stacked = np.stack([even, odd], axis=axis + 1)
    shape = list(even.shape)
    shape[axis] *= 2
    out = stacked.reshape(shape)
    return np.take(out, np.arange(length), axis=axis)


def haar_forward_1d(sequence):
    """Integer S-transform of a 1-D sequence; odd lengths repeat the last sample."""
    return _s_forward(sequence, 0)


def haar_inverse_1d(approx, detail, length=None):
    approx = np.asarray(approx)
    if length is None:
        length = 2 * approx.shape[0]
    return _s_inverse(approx, detail, length, 0)


def haar_forward_2d(samples, levels):
    """Multi-level separable transform, rows first then columns.

    Returns ``(bands, ll)`` where ``bands[i]`` is the ``(HL, LH, HH)`` triple
    of level ``i + 1``; the first letter names the horizontal filter.
    """
    current = np.asarray(samples, dtype=np.int64)
    bands = []
    for _ in range(levels):
        low, high = _s_forward(current, axis=1)
        ll, lh = _s_forward(low, axis=0)
        hl, hh = _s_forward(high, axis=0)
        bands.append((hl, lh, hh))
        current = ll
    return bands, current


def _level_shapes(height, width, levels):
    shapes = [(height, width)]
    for _ in range(levels):
        h, w = shapes[-1]
        shapes.append(((h + 1) // 2, (w + 1) // 2))
    return shapes


def haar_inverse_2d(bands, ll, height, width):
    shapes = _level_shapes(height, width, len(bands))
    current = np.asarray(ll, dtype=np.int64)
    for level in range(len(bands) - 1, -1, -1):
        hl, lh, hh = bands[level]
        h, w = shapes[level]
        low = _s_inverse(current, lh, h, axis=0)
        high = _s_inverse(hl, hh, h, axis=0)
        current = _s_inverse(low, high, w, axis=1)
    return current


def quantize_coeff(v, q):
    """Dead-zone quantizer: ``sign(v) * floor(|v| / q)``."""
    v = np.asarray(v, dtype=np.int64)
    level = np.sign(v) * (np.abs(v) // q)
    return int(level) if level.ndim == 0 else level


def dequantize(level, q):
    out = np.asarray(level, dtype=np.int64) * q
    return int(out) if out.ndim == 0 else out


# -- payload framing ----------------------------------------------------------


def _check_planes(planes):
    planes = list(planes)
    if not planes:
        raise ShapeError("an image needs at least one plane")
    first = planes[0]
    for p in planes[1:]:
        if p.shape != first.shape or p.depth != first.depth:
            raise ShapeError("all planes of an image must share geometry and depth")
    return planes


def _haar_band_shapes(height, width, levels):
    shapes = _level_shapes(height, width, levels)
    out = []
    for h, w in shapes[1:]:
        out.append(((h, w),) * 3)
    return out, shapes[-1]


def lossy_encode(planes, config: LossyCodecConfig) -> bytes:
    """Code the full-depth image with the configured lossy codec."""
    planes = _check_planes(planes)
    if config.codec_id is CodecId.CONST:
        return b""
    chunks = []
    if config.codec_id is CodecId.DOWNSAMPLE:
        (f,) = config.params
        for p in planes:
            grid = box_downsample(p.samples, f)
            chunks.append(lp1_encode(ImagePlane(grid, p.depth)))
        return b"".join(chunks)
    levels, q = config.params
    for p in planes:
        bands, ll = haar_forward_2d(p.samples, levels)
        for triple in bands:
            for band in triple:
                chunks.append(encode_symbols(zigzag(quantize_coeff(band, q)).ravel()))
        chunks.append(encode_symbols(zigzag(ll).ravel()))
    return b"".join(chunks)


def lossy_decode(payload, config: LossyCodecConfig, width, height, channels, depth):
    """Full-depth reconstruction as a list of ``channels`` planes.

    Reconstructed samples are clipped into ``[0, 2**depth - 1]``.
    """
    payload = bytes(payload)
    top = (1 << depth) - 1
    if config.codec_id is CodecId.CONST:
        if payload:
            raise CorruptStreamError("CONST payload must be empty", 0)
        value = 1 << (depth - 1)
        return [ImagePlane(np.full((height, width), value), depth) for _ in range(channels)]

    out = []
    offset = 0
    if config.codec_id is CodecId.DOWNSAMPLE:
        (f,) = config.params
        gh, gw = -(-height // f), -(-width // f)
        for _ in range(channels):
            grid, used = _at(offset, lp1_decode_prefix, payload[offset:], gw, gh, depth)
            offset += used
            up = bilinear_upsample(grid.samples, width, height, f)
            out.append(ImagePlane(np.clip(up, 0, top), depth))
    else:
        levels, q = config.params
        band_shapes, ll_shape = _haar_band_shapes(height, width, levels)
        for _ in range(channels):
            bands = []
            for triple_shapes in band_shapes:
                triple = []
                for shape in triple_shapes:
                    levels_q, offset = _read_band(payload, offset, shape)
                    triple.append(dequantize(unzigzag(levels_q), q))
                bands.append(tuple(triple))
            ll, offset = _read_band(payload, offset, ll_shape)
            recon = haar_inverse_2d(bands, unzigzag(ll), height, width)
            out.append(ImagePlane(np.clip(recon, 0, top), depth))
    if offset != len(payload):
        raise CorruptStreamError(f"{len(payload) - offset} trailing bytes in lossy payload", offset)
    return out


def _at(offset, func, *args):
    """Run a decoder on a payload slice, rebasing error offsets to the payload."""
    try:
        return func(*args)
    except CorruptStreamError as exc:
        pos = None if exc.position is None else exc.position + offset
        raise CorruptStreamError(exc.detail, pos) from exc


def _read_band(payload, offset, shape):
    count = shape[0] * shape[1]
    symbols, end_bit = _at(offset, decode_symbols, payload[offset:], count)
    return symbols.reshape(shape), offset + (end_bit + 7) // 8
