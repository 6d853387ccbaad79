"""
Size and error across codecs and critical depths
================================================

Sweep the critical depth for each built-in lossy codec on a smooth
grayscale image and tabulate file size, PSNR and worst-case error.
"""

import numpy as np

from boundcodec import CompressConfig, ImagePlane, LossyCodecConfig, compress, decompress
from boundcodec.metrics import compute_metrics

rng = np.random.default_rng(3)
field = rng.normal(size=(136, 136))
for _ in range(8):
    field = (field + np.roll(field, 1, 0) + np.roll(field, 1, 1) + np.roll(field, -1, 0) + np.roll(field, -1, 1)) / 5
field = field[4:-4, 4:-4]
field = (field - field.min()) / np.ptp(field)
image = [ImagePlane(np.round(field * 255).astype(int), 8)]
raw = image[0].width * image[0].height

codecs = [LossyCodecConfig.const(), LossyCodecConfig.downsample(8), LossyCodecConfig.haar(4, 32)]
print(f"{'codec':22s} {'n':>2s} {'bytes':>7s} {'ratio':>7s} {'psnr':>7s} {'max err':>7s}")
for codec in codecs:
    for n in (0, 2, 3, 4, 5, 6, 8):
        data = compress(image, CompressConfig.per_channel(n, codec))
        m = compute_metrics(image, decompress(data))
        print(f"{codec.describe():22s} {n:2d} {len(data):7d} {raw / len(data):7.2f} "
              f"{m.psnr_db:7.2f} {m.max_abs_error:7d}")
