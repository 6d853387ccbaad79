"""
Command-line round trip
=======================

Write a PPM, compress it with the luminance bound, decompress, verify the
bound and compare the images, all through the ``boundcodec`` command.
"""

import subprocess
import sys
import tempfile
from pathlib import Path

import numpy as np

from boundcodec import ImagePlane, write_pnm


def cli(*args):
    print("$ boundcodec", " ".join(args))
    proc = subprocess.run([sys.executable, "-m", "boundcodec", *args], capture_output=True, text=True)
    print(proc.stdout + proc.stderr, end="")
    print(f"(exit {proc.returncode})\n")
    return proc.returncode


with tempfile.TemporaryDirectory() as tmp:
    work = Path(tmp)
    yy, xx = np.mgrid[0:64, 0:80]
    planes = [ImagePlane((xx * 3 + yy) % 256, 8), ImagePlane((yy * 4) % 256, 8), ImagePlane((xx ^ yy) % 256, 8)]
    (work / "in.ppm").write_bytes(write_pnm(planes))

    cli("compress", "--input", str(work / "in.ppm"), "--output", str(work / "img.cbc"),
        "--color", "rct", "--critical-depth", "Y=4", "--lossy", "haar:q=64,levels=4")
    cli("decompress", "--input", str(work / "img.cbc"), "--output", str(work / "out.ppm"))
    cli("verify", "--original", str(work / "in.ppm"), "--compressed", str(work / "img.cbc"))
    cli("metrics", "--a", str(work / "in.ppm"), "--b", str(work / "out.ppm"), "--json")
