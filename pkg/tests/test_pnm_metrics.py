import math

import numpy as np
import pytest

from boundcodec import (
    CompressConfig,
    ImagePlane,
    LossyCodecConfig,
    PnmParseError,
    compress,
    compute_metrics,
    decompress_detailed,
    read_pnm,
    verify_bounds,
    write_pnm,
)
from boundcodec.metrics import mse, psnr

from conftest import random_plane


def test_read_p5_minimal():
    planes = read_pnm(b"P5 1 1 255 \x00")
    assert len(planes) == 1 and planes[0].samples.tolist() == [[0]] and planes[0].depth == 8


def test_read_p6_channels():
    r, g, b = read_pnm(b"P6 2 1 255\n" + bytes([255, 0, 0, 0, 255, 0]))
    assert r.samples.tolist() == [[255, 0]]
    assert g.samples.tolist() == [[0, 255]]
    assert b.samples.tolist() == [[0, 0]]


def test_comments_and_whitespace():
    data = b"P5\n# a comment\n 2\t# w\n2\n#x\n255\n" + bytes([1, 2, 3, 4])
    assert read_pnm(data)[0].samples.tolist() == [[1, 2], [3, 4]]


def test_sixteen_bit_big_endian():
    planes = read_pnm(b"P5 2 1 65535\n" + bytes([0x12, 0x34, 0xFF, 0xFE]))
    assert planes[0].samples.tolist() == [[0x1234, 0xFFFE]] and planes[0].depth == 16


def test_canonical_write():
    out = write_pnm([ImagePlane([[1, 2, 3]], 8)])
    assert out == b"P5 3 1 255\n" + bytes([1, 2, 3])


@pytest.mark.parametrize("depth", [8, 16])
@pytest.mark.parametrize("channels", [1, 3])
def test_round_trip(rng, depth, channels):
    planes = [random_plane(rng, 13, 17, depth) for _ in range(channels)]
    data = write_pnm(planes)
    assert read_pnm(data) == planes
    assert write_pnm(read_pnm(data)) == data


@pytest.mark.parametrize(
    "data,offset",
    [
        (b"P3 1 1 255\n0", 0),
        (b"P5 1 1 127\n\x00", 7),
        (b"P5 2 2 255\n\x00\x00", 13),
        (b"P5 1 x 255\n\x00", 5),
        (b"P5 1 1", 6),
    ],
)
def test_parse_errors(data, offset):
    with pytest.raises(PnmParseError) as info:
        read_pnm(data)
    assert info.value.position == offset


def test_metrics_identical(rng):
    a = [random_plane(rng, 4, 4)]
    report = compute_metrics(a, a)
    assert report.max_abs_error == 0 and math.isinf(report.psnr_db)
    assert report.as_dict()["psnr_db"] == "inf"
    assert "psnr_db=inf" in report.to_text()
    assert '"psnr_db": "inf"' in report.to_json()


def test_metrics_off_by_one():
    a = [ImagePlane(np.full((5, 5), 10), 8)]
    b = [ImagePlane(np.full((5, 5), 11), 8)]
    report = compute_metrics(a, b)
    assert report.mse == 1.0
    assert report.psnr_db == pytest.approx(10 * math.log10(255**2))
    assert report.psnr_db == pytest.approx(48.1308, abs=1e-4)


def test_metrics_single_error():
    a = np.zeros((4, 4), dtype=int)
    b = a.copy()
    b[2, 1] = 15
    report = compute_metrics([ImagePlane(a, 8)], [ImagePlane(b, 8)])
    brute = sum((int(x) - int(y)) ** 2 for x, y in zip(a.ravel(), b.ravel())) / 16
    assert report.max_abs_error == 15
    assert report.mse == brute == 225 / 16


def test_psnr_symmetric_and_mse_additive(rng):
    a = random_plane(rng, 8, 10)
    b = random_plane(rng, 8, 10)
    assert psnr([a], [b], 8) == psnr([b], [a], 8)
    left = mse([ImagePlane(a.samples[:, :4], 8)], [ImagePlane(b.samples[:, :4], 8)])
    right = mse([ImagePlane(a.samples[:, 4:], 8)], [ImagePlane(b.samples[:, 4:], 8)])
    assert mse([a], [b]) == pytest.approx((4 * left + 6 * right) / 10)


def test_verify_bounds_cases(rng):
    planes = [random_plane(rng, 12, 12)]
    data = compress(planes, CompressConfig.per_channel(4, LossyCodecConfig.haar(2, 32)))
    result = decompress_detailed(data)
    assert verify_bounds(planes, result.planes, result.header) == (0, 144)
    mutated = result.planes[0].samples.copy()
    # stepping a full bin away from the original always leaves its interval
    mutated[3, 5] = planes[0].samples[3, 5] + 16 if planes[0].samples[3, 5] < 240 else planes[0].samples[3, 5] - 16
    bad = [ImagePlane(mutated, 8)]
    assert verify_bounds(planes, bad, result.header)[0] == 1

    data = compress(planes, CompressConfig.per_channel(0, LossyCodecConfig.const()))
    result = decompress_detailed(data)
    assert verify_bounds(planes, result.planes, result.header)[0] == 0
