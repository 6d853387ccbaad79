"""Reversible integer RGB <-> YCC rotation and luminance-bounded decoding.

The transform is the reversible colour transform used by lossless JPEG 2000:
``Y = floor((R + 2G + B) / 4)``, ``Cb = B - G``, ``Cr = R - G``.  Its inverse
reproduces ``Y`` exactly for *any* integer triple, which is what lets a
clamped luminance survive the trip back to RGB.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .bounds import ImagePlane, TruncationSpec, bounds_plane, clamp_decode
from .errors import DomainError, ShapeError

__all__ = [
    "YccPixel",
    "rct_forward",
    "rct_inverse",
    "rct_forward_planes",
    "luma_plane",
    "bounded_pixel_decode",
    "bounded_rgb_decode",
]


class YccPixel(NamedTuple):
    y: int
    cb: int
    cr: int


def rct_forward(r, g, b):
    """Elementwise forward transform; scalars give a :class:`YccPixel`."""
    r, g, b = (np.asarray(c, dtype=np.int64) for c in (r, g, b))
    y = (r + 2 * g + b) >> 2
    cb = b - g
    cr = r - g
    if y.ndim == 0:
        return YccPixel(int(y), int(cb), int(cr))
    return y, cb, cr


def rct_inverse(p, cb=None, cr=None):
    """Inverse transform.  Accepts a :class:`YccPixel` or three arrays."""
    if cb is None:
        y, cb, cr = p
    else:
        y = p
    y, cb, cr = (np.asarray(c, dtype=np.int64) for c in (y, cb, cr))
    g = y - ((cb + cr) >> 2)
    r = cr + g
    b = cb + g
    if g.ndim == 0:
        return int(r), int(g), int(b)
    return r, g, b


def rct_forward_planes(planes):
    """``(y, cb, cr)`` arrays for a three-plane RGB image."""
    if len(planes) != 3:
        raise ShapeError(f"RCT needs exactly 3 planes, got {len(planes)}")
    return rct_forward(*(p.samples for p in planes))


def luma_plane(planes) -> ImagePlane:
    """Luminance of an RGB image as a plane at the image depth."""
    y, _, _ = rct_forward_planes(planes)
    return ImagePlane(y, planes[0].depth)


def bounded_pixel_decode(lossy_rgb, reduced_y: int, spec: TruncationSpec):
    """Decode one pixel: bound its luminance, keep its chroma, rotate back.

    Components pushed out of gamut by the new luminance are clipped to
    ``[0, 2**d - 1]``.
    """
    d = spec.source_depth
    for c in lossy_rgb:
        if not 0 <= c < (1 << d):
            raise DomainError(f"RGB component {c} out of range for depth {d}")
    y, cb, cr = rct_forward(*lossy_rgb)
    y = clamp_decode(y, reduced_y, spec)
    top = (1 << d) - 1
    return tuple(min(max(c, 0), top) for c in rct_inverse(YccPixel(y, cb, cr)))


def bounded_rgb_decode(lossy_planes, reduced_y: ImagePlane, spec: TruncationSpec):
    """Plane-wide :func:`bounded_pixel_decode`.

    Returns ``(rgb_planes, bounded_y)``.  ``bounded_y`` is the clamped
    luminance before any gamut clipping; re-applying the forward transform
    to the unclipped RGB gives it back exactly.
    """
    lossy_planes = list(lossy_planes)
    if len(lossy_planes) != 3:
        raise ShapeError(f"RCT needs exactly 3 planes, got {len(lossy_planes)}")
    if reduced_y.shape != lossy_planes[0].shape:
        raise ShapeError(f"plane shapes differ: {reduced_y.shape} vs {lossy_planes[0].shape}")
    d = spec.source_depth
    if lossy_planes[0].depth != d:
        raise ShapeError(f"lossy depth {lossy_planes[0].depth} != source depth {d}")
    y, cb, cr = rct_forward_planes(lossy_planes)
    lower, upper = bounds_plane(reduced_y, spec)
    y = np.clip(y, lower, upper)
    top = (1 << d) - 1
    rgb = [ImagePlane(np.clip(c, 0, top), d) for c in rct_inverse(y, cb, cr)]
    return rgb, ImagePlane(y, d)
