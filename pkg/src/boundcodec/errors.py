"""Exception hierarchy shared by every codec stage."""


class BoundCodecError(ValueError):
    """Base class for all errors raised by :mod:`boundcodec`."""


class DomainError(BoundCodecError):
    """A sample or parameter lies outside the range its bit depth allows."""


class ShapeError(BoundCodecError):
    """Two planes or images that must agree in geometry or depth do not."""


class ConfigError(BoundCodecError):
    """A codec or compression configuration failed validation."""


class CorruptStreamError(BoundCodecError):
    """A byte stream could not be decoded.

    ``position`` is the byte offset (or, for bit-level streams, the bit
    offset noted in the message) where decoding failed, when known.
    """

    def __init__(self, message, position=None):
        self.detail = message
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)
        self.position = position


class PnmParseError(CorruptStreamError):
    """Malformed binary PNM input."""
