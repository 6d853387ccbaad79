"""Lossy image compression with hard per-sample error bounds.

A lossless code of each bounded channel at reduced precision ``n`` pins every
sample to an interval of width ``2**(d - n)``; any lossy reconstruction is
clamped into that interval on decode.
"""

from .bounds import (
    BoundPair,
    ImagePlane,
    TruncationSpec,
    bounds_of,
    clamp_decode,
    clamp_decode_plane,
    truncate,
    truncate_plane,
)
from .color import bounded_pixel_decode, bounded_rgb_decode, rct_forward, rct_inverse
from .container import (
    Cbc1Header,
    ColorMode,
    CompressConfig,
    compress,
    decompress,
    decompress_detailed,
    inspect,
)
from .errors import (
    BoundCodecError,
    ConfigError,
    CorruptStreamError,
    DomainError,
    PnmParseError,
    ShapeError,
)
from .lossy import CodecId, LossyCodecConfig, lossy_decode, lossy_encode
from .lp1 import lp1_decode, lp1_encode
from .metrics import MetricsReport, compute_metrics, verify_bounds
from .pnm import read_pnm, write_pnm

__version__ = "0.1.0"
