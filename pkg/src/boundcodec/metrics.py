"""Reconstruction quality and bound certification."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .bounds import TruncationSpec
from .color import luma_plane
from .container import Cbc1Header, ColorMode
from .errors import ShapeError

__all__ = ["MetricsReport", "compute_metrics", "verify_bounds", "psnr", "mse"]


def _stack(planes):
    planes = list(planes)
    if not planes:
        raise ShapeError("an image needs at least one plane")
    return np.stack([np.asarray(p.samples, dtype=np.int64) for p in planes])


def _pair(a, b):
    a, b = _stack(a), _stack(b)
    if a.shape != b.shape:
        raise ShapeError(f"image geometries differ: {a.shape} vs {b.shape}")
    return a, b


def mse(a, b):
    """Mean squared error over every sample of every channel."""
    a, b = _pair(a, b)
    diff = a - b
    return float(np.mean(diff * diff))


def psnr(a, b, depth):
    err = mse(a, b)
    if err == 0:
        return math.inf
    peak = (1 << depth) - 1
    return 10.0 * math.log10(peak * peak / err)


@dataclass
class MetricsReport:
    psnr_db: float
    max_abs_error: int
    mse: float
    bound_violations: int | None = None
    compression_ratio: float | None = None
    checked_samples: int | None = None

    def as_dict(self):
        out = {
            "psnr_db": _num(self.psnr_db),
            "max_abs_error": self.max_abs_error,
            "mse": self.mse,
        }
        if self.bound_violations is not None:
            out["bound_violations"] = self.bound_violations
            out["checked_samples"] = self.checked_samples
        if self.compression_ratio is not None:
            out["compression_ratio"] = _num(self.compression_ratio)
        return out

    def to_text(self):
        lines = []
        for key, value in self.as_dict().items():
            if isinstance(value, float):
                value = f"{value:.6f}"
            lines.append(f"{key}={value}")
        return "\n".join(lines) + "\n"

    def to_json(self):
        return json.dumps(self.as_dict())


def _num(value):
    return "inf" if value == math.inf else value


def compute_metrics(original, decoded, depth=None) -> MetricsReport:
    """PSNR, MSE and peak absolute error between two images."""
    a, b = _pair(original, decoded)
    if depth is None:
        depth = list(original)[0].depth
    diff = a - b
    return MetricsReport(
        psnr_db=psnr(original, decoded, depth),
        max_abs_error=int(np.abs(diff).max()),
        mse=float(np.mean(diff * diff)),
    )


def verify_bounds(original, decoded, header: Cbc1Header, bounded_y=None):
    """Count bounded samples that fall outside the interval implied by ``original``.

    Returns ``(violations, checked_samples)``.  In RCT mode the check runs on
    luminance: ``bounded_y`` (the pre-gamut luminance a decoder reports) when
    given, otherwise the luminance recomputed from ``decoded``, which can
    differ where gamut clipping moved a pixel.
    """
    original, decoded = list(original), list(decoded)
    _pair(original, decoded)
    if len(original) != header.channels:
        raise ShapeError(f"header declares {header.channels} channels, image has {len(original)}")
    if (original[0].width, original[0].height) != (header.width, header.height):
        raise ShapeError("image geometry does not match the header")
    d = header.depth
    if header.color_mode is ColorMode.RCT:
        truth = luma_plane(original).samples.astype(np.int64)
        got = bounded_y if bounded_y is not None else luma_plane(decoded)
        pairs = [(truth, np.asarray(got.samples, dtype=np.int64), header.y_depth)]
    else:
        pairs = [
            (o.samples.astype(np.int64), r.samples.astype(np.int64), n)
            for o, r, n in zip(original, decoded, header.critical_depths)
        ]
    violations = 0
    checked = 0
    for truth, got, n in pairs:
        if truth.shape != got.shape:
            raise ShapeError("bounded plane geometry mismatch")
        spec = TruncationSpec(d, n)
        lower = (truth >> spec.shift) << spec.shift
        upper = lower + spec.max_trunc_error
        violations += int(np.count_nonzero((got < lower) | (got > upper)))
        checked += truth.size
    return violations, checked
