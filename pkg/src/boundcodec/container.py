"""CBC1 container: a lossless bound section plus a lossy payload.

Layout (multi-byte integers little-endian)::

    magic        4 bytes  b"CBC1"
    version      u8       1
    width        u32
    height       u32
    channels     u8       1 or 3
    depth        u8       source depth d, 1..16
    color_mode   u8       0 = per-channel bounds, 1 = RCT luminance bound
    critical     u8 x channels
                          per-channel n (0 = unbounded); in mode 1 the first
                          byte is n for Y and the rest are 0
    codec_id     u8
    param_count  u8
    params       u32 x param_count
    lossless_len u64
    lossy_len    u64
    lossless section (lossless_len bytes)
    lossy section    (lossy_len bytes)

The lossless section holds one LP1 stream per bounded plane, back to back in
channel order (just the Y plane in mode 1).  The lossy section always codes
the original image, never its truncated form.
"""

from __future__ import annotations

import enum
import struct
from dataclasses import dataclass, field, replace

import numpy as np

from .bounds import (
    MAX_DEPTH,
    ImagePlane,
    TruncationSpec,
    clamp_decode_plane,
    truncate_plane,
)
from .color import bounded_rgb_decode, luma_plane
from .errors import ConfigError, CorruptStreamError, ShapeError
from .lossy import CodecId, LossyCodecConfig, lossy_decode, lossy_encode
from .lp1 import lp1_decode_prefix, lp1_encode

__all__ = [
    "MAGIC",
    "VERSION",
    "ColorMode",
    "Cbc1Header",
    "CompressConfig",
    "DecodeResult",
    "InspectReport",
    "pack_header",
    "parse_header",
    "compress",
    "decompress",
    "decompress_detailed",
    "inspect",
    "raw_size",
    "header_for",
]

MAGIC = b"CBC1"
VERSION = 1

_FIXED = struct.Struct("<4sBIIBBB")
_LENGTHS = struct.Struct("<QQ")


class ColorMode(enum.IntEnum):
    PER_CHANNEL = 0
    RCT = 1

    @property
    def label(self):
        return "none" if self is ColorMode.PER_CHANNEL else "rct"


@dataclass(frozen=True)
class CompressConfig:
    """How to bound and lossy-code an image.

    In per-channel mode ``critical_depths`` holds one ``n`` per channel (a
    single value is broadcast to every channel).  In RCT mode it holds the
    single ``n`` applied to the luminance plane.
    """

    color_mode: ColorMode
    critical_depths: tuple
    lossy: LossyCodecConfig = field(default_factory=LossyCodecConfig.const)

    def __post_init__(self):
        depths = self.critical_depths
        if isinstance(depths, (int, np.integer)):
            depths = (depths,)
        object.__setattr__(self, "critical_depths", tuple(int(n) for n in depths))
        object.__setattr__(self, "color_mode", ColorMode(self.color_mode))
        if self.color_mode is ColorMode.RCT and len(self.critical_depths) != 1:
            raise ConfigError("RCT mode takes exactly one critical depth, for Y")
        if not self.critical_depths:
            raise ConfigError("at least one critical depth is required")

    @classmethod
    def per_channel(cls, depths, lossy=None):
        return cls(ColorMode.PER_CHANNEL, depths, lossy or LossyCodecConfig.const())

    @classmethod
    def rct(cls, n_y, lossy=None):
        return cls(ColorMode.RCT, (n_y,), lossy or LossyCodecConfig.const())

    def header_depths(self, channels):
        """Critical depth byte for every channel, as stored in the header."""
        if self.color_mode is ColorMode.RCT:
            return (self.critical_depths[0],) + (0,) * (channels - 1)
        if len(self.critical_depths) == 1:
            return self.critical_depths * channels
        if len(self.critical_depths) != channels:
            raise ConfigError(
                f"{len(self.critical_depths)} critical depths given for {channels} channels"
            )
        return self.critical_depths


@dataclass(frozen=True)
class Cbc1Header:
    width: int
    height: int
    channels: int
    depth: int
    color_mode: ColorMode
    critical_depths: tuple
    lossy: LossyCodecConfig
    lossless_len: int = 0
    lossy_len: int = 0
    version: int = VERSION

    @property
    def size(self):
        return _FIXED.size + self.channels + 2 + 4 * len(self.lossy.params) + _LENGTHS.size

    @property
    def y_depth(self):
        return self.critical_depths[0]

    def validate(self):
        if self.width < 1 or self.height < 1:
            raise ConfigError(f"invalid geometry {self.width}x{self.height}")
        if self.channels not in (1, 3):
            raise ConfigError(f"channel count must be 1 or 3, got {self.channels}")
        if not 1 <= self.depth <= MAX_DEPTH:
            raise ConfigError(f"source depth must be in 1..{MAX_DEPTH}, got {self.depth}")
        if len(self.critical_depths) != self.channels:
            raise ConfigError("one critical depth byte per channel is required")
        for n in self.critical_depths:
            if not 0 <= n <= self.depth:
                raise ConfigError(f"critical depth {n} exceeds source depth {self.depth}")
        if self.color_mode is ColorMode.RCT:
            if self.channels != 3:
                raise ConfigError("RCT mode requires 3 channels")
            if any(self.critical_depths[1:]):
                raise ConfigError("RCT mode bounds only Y; chroma critical depths must be 0")


def raw_size(width, height, channels, depth):
    """Bytes of uncompressed PNM-style sample data."""
    return width * height * channels * (1 if depth <= 8 else 2)


def pack_header(header: Cbc1Header) -> bytes:
    header.validate()
    params = header.lossy.params
    return b"".join(
        [
            _FIXED.pack(
                MAGIC,
                header.version,
                header.width,
                header.height,
                header.channels,
                header.depth,
                int(header.color_mode),
            ),
            bytes(header.critical_depths),
            struct.pack("<BB", int(header.lossy.codec_id), len(params)),
            struct.pack(f"<{len(params)}I", *params),
            _LENGTHS.pack(header.lossless_len, header.lossy_len),
        ]
    )


def _take(data, offset, size, what):
    if offset + size > len(data):
        raise CorruptStreamError(f"stream ends inside {what}", offset)
    return data[offset : offset + size], offset + size


def parse_header(data) -> tuple[Cbc1Header, int]:
    """Parse a header; returns it with the offset of the lossless section.

    Declared section lengths are checked against the bytes actually present.
    """
    data = bytes(data)
    chunk, pos = _take(data, 0, _FIXED.size, "fixed header")
    magic, version, width, height, channels, depth, mode = _FIXED.unpack(chunk)
    if magic != MAGIC:
        raise CorruptStreamError(f"bad magic {magic!r}", 0)
    if version != VERSION:
        raise CorruptStreamError(f"unsupported version {version}", 4)
    if channels not in (1, 3):
        raise CorruptStreamError(f"channel count must be 1 or 3, got {channels}", 13)
    try:
        color_mode = ColorMode(mode)
    except ValueError:
        raise CorruptStreamError(f"unknown color mode {mode}", 15) from None
    chunk, pos = _take(data, pos, channels, "critical depths")
    critical = tuple(chunk)
    chunk, pos = _take(data, pos, 2, "codec descriptor")
    codec_id, param_count = chunk
    params_at = pos
    chunk, pos = _take(data, pos, 4 * param_count, "codec parameters")
    params = struct.unpack(f"<{param_count}I", chunk)
    try:
        lossy = LossyCodecConfig(CodecId(codec_id), params)
    except (ConfigError, ValueError) as exc:
        raise CorruptStreamError(f"invalid lossy codec descriptor: {exc}", params_at - 2) from None
    lengths_at = pos
    chunk, pos = _take(data, pos, _LENGTHS.size, "section lengths")
    lossless_len, lossy_len = _LENGTHS.unpack(chunk)
    header = Cbc1Header(
        width, height, channels, depth, color_mode, critical, lossy, lossless_len, lossy_len, version
    )
    try:
        header.validate()
    except ConfigError as exc:
        raise CorruptStreamError(f"invalid header: {exc}", 0) from None
    if pos + lossless_len + lossy_len != len(data):
        raise CorruptStreamError(
            f"declared sections total {lossless_len + lossy_len} bytes "
            f"but {len(data) - pos} follow the header",
            lengths_at,
        )
    return header, pos


def _check_image(planes):
    planes = list(planes)
    if len(planes) not in (1, 3):
        raise ConfigError(f"images must have 1 or 3 planes, got {len(planes)}")
    first = planes[0]
    for p in planes[1:]:
        if p.shape != first.shape or p.depth != first.depth:
            raise ShapeError("all planes of an image must share geometry and depth")
    if first.depth < 1:
        raise ConfigError("image depth must be at least 1 bit")
    return planes


def _bounded_planes(planes, header):
    """``(plane, spec)`` pairs destined for the lossless section."""
    d = header.depth
    if header.color_mode is ColorMode.RCT:
        n = header.y_depth
        return [(luma_plane(planes), TruncationSpec(d, n))] if n else []
    return [(p, TruncationSpec(d, n)) for p, n in zip(planes, header.critical_depths) if n]


def compress(planes, config: CompressConfig) -> bytes:
    """Encode an image into a CBC1 byte string."""
    planes = _check_image(planes)
    header = header_for(planes, config)
    lossless = b"".join(
        lp1_encode(truncate_plane(p, spec)) for p, spec in _bounded_planes(planes, header)
    )
    lossy = lossy_encode(planes, config.lossy)
    header = replace(header, lossless_len=len(lossless), lossy_len=len(lossy))
    return pack_header(header) + lossless + lossy


@dataclass
class DecodeResult:
    """Everything a decode produces.

    ``bounded_y`` is the clamped luminance before gamut clipping (RCT mode
    only).  ``reduced`` maps each bounded channel index (0 stands for Y in
    RCT mode) to its decoded reduced-precision plane.
    """

    header: Cbc1Header
    planes: list
    lossy_planes: list
    reduced: dict
    bounded_y: ImagePlane | None = None


def decompress_detailed(data) -> DecodeResult:
    data = bytes(data)
    header, pos = parse_header(data)
    w, h, d = header.width, header.height, header.depth
    lossless = data[pos : pos + header.lossless_len]
    lossy_at = pos + header.lossless_len
    lossy_bytes = data[lossy_at:]

    if header.color_mode is ColorMode.RCT:
        channel_depths = [(0, header.y_depth)] if header.y_depth else []
    else:
        channel_depths = [(i, n) for i, n in enumerate(header.critical_depths) if n]
    reduced = {}
    offset = 0
    for index, n in channel_depths:
        try:
            plane, used = lp1_decode_prefix(lossless[offset:], w, h, n)
        except CorruptStreamError as exc:
            at = None if exc.position is None else pos + offset + exc.position
            raise CorruptStreamError(f"lossless section: {exc.detail}", at) from exc
        reduced[index] = plane
        offset += used
    if offset != len(lossless):
        raise CorruptStreamError(
            f"lossless section has {len(lossless) - offset} unused bytes", pos + offset
        )

    try:
        lossy_planes = lossy_decode(lossy_bytes, header.lossy, w, h, header.channels, d)
    except CorruptStreamError as exc:
        at = None if exc.position is None else lossy_at + exc.position
        raise CorruptStreamError(f"lossy section: {exc.detail}", at) from exc

    bounded_y = None
    if header.color_mode is ColorMode.RCT:
        if header.y_depth:
            spec = TruncationSpec(d, header.y_depth)
            planes, bounded_y = bounded_rgb_decode(lossy_planes, reduced[0], spec)
        else:
            planes = list(lossy_planes)
            bounded_y = luma_plane(planes)
    else:
        planes = []
        for i, plane in enumerate(lossy_planes):
            n = header.critical_depths[i]
            if n:
                plane = clamp_decode_plane(plane, reduced[i], TruncationSpec(d, n))
            planes.append(plane)
    return DecodeResult(header, planes, lossy_planes, reduced, bounded_y)


def decompress(data):
    """Decode a CBC1 byte string into its list of full-depth planes."""
    return decompress_detailed(data).planes


def _ratio(raw, size):
    return float("inf") if size == 0 else raw / size


def _fmt_ratio(value):
    return "inf" if value == float("inf") else f"{value:.3f}"


@dataclass(frozen=True)
class InspectReport:
    header: Cbc1Header
    header_size: int
    total_size: int

    @property
    def raw_size(self):
        h = self.header
        return raw_size(h.width, h.height, h.channels, h.depth)

    @property
    def ratio(self):
        return _ratio(self.raw_size, self.total_size)

    def summary(self):
        h = self.header
        if h.color_mode is ColorMode.RCT:
            depth_text = f"n={h.y_depth}"
            mode = "RCT-Y"
        else:
            depth_text = "n=" + "/".join(str(n) for n in h.critical_depths)
            mode = "per-channel"
        return f"color_mode={mode}, {depth_text}, d={h.depth}"

    def as_dict(self):
        """Ordered report fields; ratios are floats or ``inf``."""
        h = self.header
        out = {
            "magic": MAGIC.decode(),
            "version": h.version,
            "width": h.width,
            "height": h.height,
            "channels": h.channels,
            "d": h.depth,
            "color_mode": h.color_mode.label,
        }
        names = ["Y"] if h.color_mode is ColorMode.RCT else _channel_names(h.channels)
        for name, n in zip(names, h.critical_depths):
            out[f"n[{name}]"] = n
            out[f"max_error[{name}]"] = TruncationSpec(h.depth, n).max_trunc_error
        out.update(
            {
                "lossy_codec": h.lossy.describe(),
                "header_bytes": self.header_size,
                "lossless_bytes": h.lossless_len,
                "lossy_bytes": h.lossy_len,
                "total_bytes": self.total_size,
                "raw_bytes": self.raw_size,
                "ratio": self.ratio,
                "lossless_ratio": _ratio(self.raw_size, h.lossless_len),
                "lossy_ratio": _ratio(self.raw_size, h.lossy_len),
            }
        )
        return out

    def to_text(self):
        lines = [f"config: {self.summary()}"]
        for key, value in self.as_dict().items():
            if isinstance(value, float):
                value = _fmt_ratio(value)
            lines.append(f"{key}={value}")
        return "\n".join(lines) + "\n"


def _channel_names(channels):
    return ["Y"] if channels == 1 else ["R", "G", "B"]


def inspect(data) -> InspectReport:
    """Describe a CBC1 stream without decoding its payloads."""
    data = bytes(data)
    if not data:
        raise CorruptStreamError("empty stream", 0)
    header, pos = parse_header(data)
    return InspectReport(header, pos, len(data))


def header_for(planes, config: CompressConfig) -> Cbc1Header:
    """Header (without section lengths) that :func:`compress` would write."""
    planes = _check_image(planes)
    first = planes[0]
    header = Cbc1Header(
        first.width,
        first.height,
        len(planes),
        first.depth,
        config.color_mode,
        config.header_depths(len(planes)),
        config.lossy,
    )
    header.validate()
    return header

