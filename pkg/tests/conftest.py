import numpy as np
import pytest

from boundcodec import ImagePlane


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)


def random_plane(rng, height, width, depth=8):
    return ImagePlane(rng.integers(0, 1 << depth, (height, width)), depth)


def smooth_plane(rng, height, width, depth=8, passes=6):
    """Smoothed noise with natural-image-like spatial correlation."""
    a = rng.normal(size=(height + 8, width + 8))
    for _ in range(passes):
        a = (a + np.roll(a, 1, 0) + np.roll(a, -1, 0) + np.roll(a, 1, 1) + np.roll(a, -1, 1)) / 5
    a = a[4 : 4 + height, 4 : 4 + width]
    a = (a - a.min()) / (np.ptp(a) or 1)
    return ImagePlane(np.round(a * ((1 << depth) - 1)).astype(np.int64), depth)


def structured_planes(height, width, depth):
    top = (1 << depth) - 1
    yy, xx = np.mgrid[0:height, 0:width]
    return {
        "zeros": ImagePlane(np.zeros((height, width), dtype=np.int64), depth),
        "max": ImagePlane(np.full((height, width), top), depth),
        "gradient": ImagePlane((xx + yy) % (top + 1), depth),
        "checker": ImagePlane(((xx + yy) % 2) * top, depth),
        "stripes": ImagePlane((xx % 2) * top, depth),
    }


ACCEPTANCE_RESULTS = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion's outcome for the end-of-run summary."""

    def record(number, title, passed, detail=""):
        ACCEPTANCE_RESULTS[number] = (title, bool(passed), detail)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        title, passed, detail = ACCEPTANCE_RESULTS[number]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {number:2d}. {title}: {detail}")
