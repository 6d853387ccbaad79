import itertools

import numpy as np
import pytest

from boundcodec import (
    ImagePlane,
    TruncationSpec,
    bounded_pixel_decode,
    bounded_rgb_decode,
    clamp_decode,
    rct_forward,
    rct_inverse,
)
from boundcodec.color import YccPixel


@pytest.mark.parametrize(
    "rgb,ycc",
    [((0, 0, 0), (0, 0, 0)), ((255, 255, 255), (255, 0, 0)), ((255, 0, 0), (63, 0, 255))],
)
def test_rct_examples(rgb, ycc):
    assert rct_forward(*rgb) == ycc
    assert rct_inverse(YccPixel(*ycc)) == rgb


def test_rct_exhaustive_depth4():
    for rgb in itertools.product(range(16), repeat=3):
        p = rct_forward(*rgb)
        assert 0 <= p.y < 16
        assert rct_inverse(p) == rgb


def test_rct_random_depth8_and_16(rng):
    for depth, count in ((8, 10**6), (16, 10**5)):
        r, g, b = rng.integers(0, 1 << depth, (3, count))
        y, cb, cr = rct_forward(r, g, b)
        r2, g2, b2 = rct_inverse(y, cb, cr)
        assert (r2 == r).all() and (g2 == g).all() and (b2 == b).all()


def test_forward_of_inverse_keeps_any_luma(rng):
    y = rng.integers(-600, 600, 5000)
    cb = rng.integers(-600, 600, 5000)
    cr = rng.integers(-600, 600, 5000)
    y2, cb2, cr2 = rct_forward(*rct_inverse(y, cb, cr))
    assert (y2 == y).all() and (cb2 == cb).all() and (cr2 == cr).all()


def test_bounded_pixel_examples():
    spec = TruncationSpec(8, 4)
    assert bounded_pixel_decode((100, 100, 100), 12, spec) == (192, 192, 192)
    assert bounded_pixel_decode((250, 250, 250), 12, spec) == (207, 207, 207)
    # y = floor((200 + 380 + 210) / 4) = 197 lies in [192, 207]
    assert bounded_pixel_decode((200, 190, 210), 12, spec) == (200, 190, 210)


def _pixel_oracle(rgb, reduced, spec):
    y, cb, cr = rct_forward(*rgb)
    y = clamp_decode(y, reduced, spec)
    g = y - (cb + cr) // 4
    return tuple(min(max(c, 0), 255) for c in (cr + g, g, cb + g)), y


def test_bounded_planes_match_pixelwise(rng):
    spec = TruncationSpec(8, 3)
    planes = [ImagePlane(rng.integers(0, 256, (6, 9)), 8) for _ in range(3)]
    reduced = ImagePlane(rng.integers(0, 8, (6, 9)), 3)
    rgb, y = bounded_rgb_decode(planes, reduced, spec)
    for i, j in itertools.product(range(6), range(9)):
        pixel = tuple(int(p.samples[i, j]) for p in planes)
        want, want_y = _pixel_oracle(pixel, int(reduced.samples[i, j]), spec)
        assert tuple(int(p.samples[i, j]) for p in rgb) == want
        assert bounded_pixel_decode(pixel, int(reduced.samples[i, j]), spec) == want
        assert y.samples[i, j] == want_y


def test_pass_through_when_inside_bounds(rng):
    spec = TruncationSpec(8, 4)
    planes = [ImagePlane(rng.integers(0, 256, (20, 20)), 8) for _ in range(3)]
    y, _, _ = rct_forward(*(p.samples for p in planes))
    reduced = ImagePlane(y >> 4, 4)
    rgb, _ = bounded_rgb_decode(planes, reduced, spec)
    assert all(a == b for a, b in zip(rgb, planes))
