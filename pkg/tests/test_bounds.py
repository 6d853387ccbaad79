import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from boundcodec import (
    BoundPair,
    DomainError,
    ImagePlane,
    ShapeError,
    TruncationSpec,
    bounds_of,
    clamp_decode,
    clamp_decode_plane,
    truncate,
)


def preimage(r, spec):
    """Every d-bit sample whose n leading bits equal r, found by enumeration."""
    return [x for x in range(1 << spec.source_depth) if x >> spec.shift == r]


@pytest.mark.parametrize(
    "d,n,err", [(8, 4, 15), (8, 8, 0), (8, 0, 255), (16, 4, 4095), (1, 0, 1), (1, 1, 0)]
)
def test_truncation_spec_error(d, n, err):
    assert TruncationSpec(d, n).max_trunc_error == err


@pytest.mark.parametrize("d,n", [(0, 0), (17, 4), (8, 9), (8, -1)])
def test_truncation_spec_rejects(d, n):
    with pytest.raises(DomainError):
        TruncationSpec(d, n)


@pytest.mark.parametrize("x,n,expected", [(200, 4, 12), (137, 8, 137), (255, 4, 15)])
def test_truncate_examples(x, n, expected):
    assert truncate(x, TruncationSpec(8, n)) == expected


def test_truncate_domain():
    with pytest.raises(DomainError):
        truncate(256, TruncationSpec(8, 4))
    with pytest.raises(DomainError):
        bounds_of(16, TruncationSpec(8, 4))


def test_bounds_examples():
    spec = TruncationSpec(8, 4)
    b = bounds_of(12, spec)
    assert b == BoundPair(192, 207)
    assert b.upper - b.lower == 15
    assert bounds_of(0, spec) == BoundPair(0, 15)
    assert bounds_of(137, TruncationSpec(8, 8)) == BoundPair(137, 137)


@pytest.mark.parametrize("n", range(0, 9))
def test_bounds_are_tight_preimage(n):
    spec = TruncationSpec(8, n)
    for r in range(1 << n):
        members = preimage(r, spec)
        b = bounds_of(r, spec)
        assert (b.lower, b.upper) == (min(members), max(members))
        assert b.lower % (1 << spec.shift) == 0


def _three_case_oracle(y, r, spec):
    # direct reading of the decode rule on leading bits
    prefix = y // (1 << spec.shift)
    lo = r * (1 << spec.shift)
    if prefix == r:
        return y
    return lo if prefix < r else lo + (1 << spec.shift) - 1


@pytest.mark.parametrize("y,expected", [(195, 195), (100, 192), (250, 207)])
def test_clamp_decode_examples(y, expected):
    spec = TruncationSpec(8, 4)
    assert clamp_decode(y, 12, spec) == expected
    assert _three_case_oracle(y, 12, spec) == expected


@pytest.mark.parametrize("n", [0, 3, 5])
def test_clamp_decode_matches_oracle(n):
    spec = TruncationSpec(8, n)
    for y, r in itertools.product(range(256), range(1 << n)):
        assert clamp_decode(y, r, spec) == _three_case_oracle(y, r, spec)


@given(
    d=st.integers(1, 16),
    data=st.data(),
)
def test_hard_bound_property(d, data):
    n = data.draw(st.integers(0, d))
    spec = TruncationSpec(d, n)
    x = data.draw(st.integers(0, (1 << d) - 1))
    y = data.draw(st.integers(0, (1 << d) - 1))
    out = clamp_decode(y, truncate(x, spec), spec)
    assert abs(out - x) <= spec.max_trunc_error
    assert abs(out - x) <= abs(y - x)


def test_monotone_refinement_exhaustive():
    xs = np.arange(256)[:, None]
    ys = np.arange(256)[None, :]
    previous = None
    for n in range(9):
        spec = TruncationSpec(8, n)
        lower = (xs >> spec.shift) << spec.shift
        err = np.abs(np.clip(ys, lower, lower + spec.max_trunc_error) - xs)
        if previous is not None:
            assert (err <= previous).all()
        previous = err


def test_clamp_decode_plane_example():
    spec = TruncationSpec(8, 4)
    lossy = ImagePlane([[195, 100, 250]], 8)
    reduced = ImagePlane([[12, 12, 12]], 4)
    assert clamp_decode_plane(lossy, reduced, spec).samples.tolist() == [[195, 192, 207]]


def test_clamp_decode_plane_degenerate_ends(rng):
    original = ImagePlane(rng.integers(0, 256, (9, 7)), 8)
    lossy = ImagePlane(rng.integers(0, 256, (9, 7)), 8)
    full = TruncationSpec(8, 8)
    assert clamp_decode_plane(lossy, ImagePlane(original.samples, 8), full) == original
    none = TruncationSpec(8, 0)
    zeros = ImagePlane(np.zeros((9, 7), dtype=int), 0)
    assert clamp_decode_plane(lossy, zeros, none) == lossy


def test_clamp_decode_plane_shape_errors():
    spec = TruncationSpec(8, 4)
    with pytest.raises(ShapeError):
        clamp_decode_plane(ImagePlane([[1, 2]], 8), ImagePlane([[1]], 4), spec)
    with pytest.raises(ShapeError):
        clamp_decode_plane(ImagePlane([[1]], 8), ImagePlane([[1]], 5), spec)
    with pytest.raises(ShapeError):
        clamp_decode_plane(ImagePlane([[1]], 7), ImagePlane([[1]], 4), spec)


def test_image_plane_validation():
    with pytest.raises(DomainError):
        ImagePlane([[256]], 8)
    with pytest.raises(DomainError):
        ImagePlane([[-1]], 8)
    with pytest.raises(ShapeError):
        ImagePlane(np.zeros((0, 3)), 8)
    with pytest.raises(ShapeError):
        ImagePlane.from_list([1, 2, 3], 2, 2, 8)
    p = ImagePlane.from_list([1, 2, 3, 4, 5, 6], 3, 2, 8)
    assert (p.width, p.height) == (3, 2)
    assert p.samples[1].tolist() == [4, 5, 6]
    assert not p.samples.flags.writeable
