"""Reduced-precision truncation and the bound-clamping decoder.

A sample ``x`` at depth ``d`` keeps its ``n`` leading bits as
``r = x >> (d - n)``.  Every ``x`` sharing that prefix lies in the closed
interval ``[r << (d - n), (r << (d - n)) + 2**(d - n) - 1]``, so a lossy
prediction clamped into that interval is never further from ``x`` than
``2**(d - n) - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ShapeError

MAX_DEPTH = 16

__all__ = [
    "MAX_DEPTH",
    "TruncationSpec",
    "ImagePlane",
    "BoundPair",
    "truncate",
    "bounds_of",
    "clamp_decode",
    "truncate_plane",
    "bounds_plane",
    "clamp_decode_plane",
]


@dataclass(frozen=True)
class TruncationSpec:
    """Source depth ``d`` and critical depth ``n`` of one bounded channel."""

    source_depth: int
    critical_depth: int

    def __post_init__(self):
        d, n = self.source_depth, self.critical_depth
        if not (isinstance(d, (int, np.integer)) and isinstance(n, (int, np.integer))):
            raise DomainError(f"depths must be integers, got d={d!r}, n={n!r}")
        if not 1 <= d <= MAX_DEPTH:
            raise DomainError(f"source depth must be in 1..{MAX_DEPTH}, got {d}")
        if not 0 <= n <= d:
            raise DomainError(f"critical depth must be in 0..{d}, got {n}")

    @property
    def shift(self) -> int:
        return self.source_depth - self.critical_depth

    @property
    def max_trunc_error(self) -> int:
        return (1 << self.shift) - 1


@dataclass(frozen=True)
class BoundPair:
    lower: int
    upper: int


@dataclass(frozen=True, eq=False)
class ImagePlane:
    """One channel of unsigned samples, stored row-major as a (height, width) array.

    The array is copied on construction and marked read-only.
    """

    samples: np.ndarray
    depth: int
    width: int = field(init=False)
    height: int = field(init=False)

    def __post_init__(self):
        if not 0 <= int(self.depth) <= MAX_DEPTH:
            raise DomainError(f"plane depth must be in 0..{MAX_DEPTH}, got {self.depth}")
        arr = np.array(self.samples, dtype=np.int64, copy=True)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ShapeError(f"plane must be a non-empty 2-D array, got shape {arr.shape}")
        if arr.min() < 0 or arr.max() >= (1 << int(self.depth)):
            raise DomainError(f"plane samples must lie in [0, 2**{self.depth})")
        arr = arr.astype(np.int32)
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)
        object.__setattr__(self, "depth", int(self.depth))
        object.__setattr__(self, "height", arr.shape[0])
        object.__setattr__(self, "width", arr.shape[1])

    @classmethod
    def from_list(cls, values, width, height, depth):
        """Build a plane from a flat row-major sequence."""
        values = np.asarray(values)
        if values.size != width * height:
            raise ShapeError(f"expected {width * height} samples, got {values.size}")
        return cls(values.reshape(height, width), depth)

    @property
    def shape(self):
        return self.samples.shape

    def __eq__(self, other):
        if not isinstance(other, ImagePlane):
            return NotImplemented
        return self.depth == other.depth and np.array_equal(self.samples, other.samples)

    def __repr__(self):
        return f"ImagePlane({self.width}x{self.height}, depth={self.depth})"


def _check_sample(value, depth, what):
    if not 0 <= value < (1 << depth):
        raise DomainError(f"{what} {value} out of range for depth {depth}")


def truncate(sample: int, spec: TruncationSpec) -> int:
    """Keep the ``n`` leading bits of a ``d``-bit sample."""
    _check_sample(sample, spec.source_depth, "sample")
    return int(sample) >> spec.shift


def bounds_of(reduced: int, spec: TruncationSpec) -> BoundPair:
    """Interval of every full-depth sample that truncates to ``reduced``."""
    _check_sample(reduced, spec.critical_depth, "reduced sample")
    lower = int(reduced) << spec.shift
    return BoundPair(lower, lower + spec.max_trunc_error)


def clamp_decode(lossy_prediction: int, reduced: int, spec: TruncationSpec) -> int:
    """Reconcile a lossy prediction with the losslessly stored leading bits.

    A prediction whose leading bits agree with ``reduced`` is returned as is.
    One whose leading bits are smaller snaps to the lower bound, one whose
    leading bits are larger snaps to the upper bound.
    """
    predicted_prefix = truncate(lossy_prediction, spec)
    bounds = bounds_of(reduced, spec)
    if predicted_prefix == reduced:
        return int(lossy_prediction)
    if predicted_prefix < reduced:
        return bounds.lower
    return bounds.upper


def truncate_plane(plane: ImagePlane, spec: TruncationSpec) -> ImagePlane:
    if plane.depth != spec.source_depth:
        raise ShapeError(f"plane depth {plane.depth} != source depth {spec.source_depth}")
    return ImagePlane(plane.samples >> spec.shift, spec.critical_depth)


def bounds_plane(reduced: ImagePlane, spec: TruncationSpec):
    """Vectorized :func:`bounds_of`; returns ``(lower, upper)`` arrays."""
    if reduced.depth != spec.critical_depth:
        raise ShapeError(f"reduced depth {reduced.depth} != critical depth {spec.critical_depth}")
    lower = reduced.samples.astype(np.int64) << spec.shift
    return lower, lower + spec.max_trunc_error


def clamp_decode_plane(lossy: ImagePlane, reduced: ImagePlane, spec: TruncationSpec) -> ImagePlane:
    """Element-wise :func:`clamp_decode` over a whole plane."""
    if lossy.shape != reduced.shape:
        raise ShapeError(f"plane shapes differ: {lossy.shape} vs {reduced.shape}")
    if lossy.depth != spec.source_depth:
        raise ShapeError(f"lossy depth {lossy.depth} != source depth {spec.source_depth}")
    lower, upper = bounds_plane(reduced, spec)
    return ImagePlane(np.clip(lossy.samples, lower, upper), spec.source_depth)
