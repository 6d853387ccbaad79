"""Block-adaptive Rice coding of unsigned symbol streams.

Symbols are grouped into blocks of 64.  Each block opens with a 5-bit field
holding the Rice parameter ``k`` (0..24) that minimizes the block's coded
size.  A symbol ``u`` is coded as ``q = u >> k`` one-bits, a zero-bit and the
low ``k`` bits of ``u``; when ``q >= 32`` the coder instead emits 32 one-bits
and ``u`` as a raw 32-bit field.  Bits are written MSB-first and the stream
is zero-padded to a byte boundary.
"""

import numpy as np

from . import _kernels
from ._kernels import BLOCK_SIZE, ESCAPE_Q, K_FIELD_BITS, MAX_K
from .errors import CorruptStreamError, DomainError

__all__ = [
    "BLOCK_SIZE",
    "MAX_K",
    "rice_code",
    "rice_cost",
    "rice_encode_symbol",
    "select_block_k",
    "encode_symbols",
    "decode_symbols",
    "zigzag",
    "unzigzag",
]

_ESCAPE_BITS = ESCAPE_Q + 32


def _check(u, k):
    if not 0 <= u < (1 << 32):
        raise DomainError(f"symbol {u} outside [0, 2**32)")
    if not 0 <= k <= MAX_K:
        raise DomainError(f"Rice parameter {k} outside [0, {MAX_K}]")


def rice_code(u: int, k: int) -> tuple[int, int]:
    """Return the codeword for ``u`` as an ``(integer value, bit length)`` pair."""
    _check(u, k)
    q = u >> k
    if q < ESCAPE_Q:
        ones = (1 << q) - 1
        return (ones << (k + 1)) | (u & ((1 << k) - 1)), q + 1 + k
    return (((1 << ESCAPE_Q) - 1) << 32) | u, _ESCAPE_BITS


def rice_encode_symbol(u: int, k: int) -> str:
    """Codeword for ``u`` as a string of ``'0'``/``'1'`` characters."""
    value, length = rice_code(u, k)
    return format(value, f"0{length}b")


def rice_cost(u, k):
    """Coded length in bits; works elementwise on arrays."""
    q = np.asarray(u, dtype=np.int64) >> k
    return np.where(q < ESCAPE_Q, q + 1 + k, _ESCAPE_BITS)


def select_block_k(symbols) -> int:
    """Cheapest Rice parameter for one block, ties going to the smaller ``k``."""
    symbols = np.asarray(symbols, dtype=np.int64)
    if symbols.size == 0:
        raise DomainError("cannot select a Rice parameter for an empty block")
    costs = [int(rice_cost(symbols, k).sum()) for k in range(MAX_K + 1)]
    return int(np.argmin(costs))


def _block_ks(symbols):
    """Per-block optimal ``k`` for a whole symbol array."""
    nblocks = -(-symbols.size // BLOCK_SIZE)
    block_ids = np.arange(symbols.size) // BLOCK_SIZE
    best_cost = np.full(nblocks, np.iinfo(np.int64).max)
    best_k = np.zeros(nblocks, dtype=np.int64)
    for k in range(MAX_K + 1):
        cost = np.bincount(block_ids, weights=rice_cost(symbols, k), minlength=nblocks)
        cost = cost.astype(np.int64)
        better = cost < best_cost
        best_cost[better] = cost[better]
        best_k[better] = k
    return best_k


def encode_codewords(symbols):
    """Codeword values and lengths for a symbol array, block headers included."""
    symbols = np.asarray(symbols, dtype=np.int64).ravel()
    if symbols.size and (symbols.min() < 0 or symbols.max() >= (1 << 32)):
        raise DomainError("symbols must lie in [0, 2**32)")
    ks = _block_ks(symbols)
    k_per_symbol = np.repeat(ks, BLOCK_SIZE)[: symbols.size]
    q = symbols >> k_per_symbol
    escaped = q >= ESCAPE_Q
    qc = np.where(escaped, 0, q)
    low = symbols & ((np.int64(1) << k_per_symbol) - 1)
    plain = (((np.int64(1) << qc) - 1) << (k_per_symbol + 1)) | low
    # escape codewords use all 64 bits, so build them unsigned
    escape = np.uint64(((1 << ESCAPE_Q) - 1) << 32) | symbols.astype(np.uint64)
    sym_codes = np.where(escaped, escape, plain.astype(np.uint64))
    sym_lengths = np.where(escaped, _ESCAPE_BITS, q + 1 + k_per_symbol)

    # interleave one 5-bit header before every block of symbols
    nblocks = ks.size
    positions = np.arange(symbols.size) + np.arange(symbols.size) // BLOCK_SIZE + 1
    header_positions = np.arange(nblocks) * (BLOCK_SIZE + 1)
    codes = np.zeros(symbols.size + nblocks, dtype=np.uint64)
    lengths = np.zeros(symbols.size + nblocks, dtype=np.int64)
    codes[positions] = sym_codes
    lengths[positions] = sym_lengths
    codes[header_positions] = ks.astype(np.uint64)
    lengths[header_positions] = K_FIELD_BITS
    return codes, lengths


def encode_symbols(symbols) -> bytes:
    """Block-Rice code a flat array of unsigned symbols."""
    codes, lengths = encode_codewords(symbols)
    return _kernels.pack_codes(codes, lengths, int(lengths.sum())).tobytes()


_STATUS_MESSAGES = {
    _kernels.ERR_TRUNCATED: "Rice stream ends early",
    _kernels.ERR_BAD_K: "block header carries Rice parameter above 24",
}


def decode_symbols(data, count, start_bit=0):
    """Decode ``count`` symbols; returns ``(symbols, end_bit)``.

    Raises :class:`CorruptStreamError` with the failing bit offset.
    """
    buf = np.frombuffer(bytes(data), dtype=np.uint8)
    if count == 0:
        return np.zeros(0, dtype=np.int64), start_bit
    symbols, end, status, where = _kernels.decode_blocks(buf, start_bit, count)
    if status != _kernels.OK:
        raise CorruptStreamError(f"{_STATUS_MESSAGES[status]} (bit {where})", where // 8)
    return symbols, end


def zigzag(values):
    """Map signed integers onto unsigned: ``v >= 0 -> 2v``, ``v < 0 -> -2v - 1``."""
    v = np.asarray(values, dtype=np.int64)
    return np.where(v >= 0, 2 * v, -2 * v - 1)


def unzigzag(symbols):
    u = np.asarray(symbols, dtype=np.int64)
    return np.where(u & 1, -((u + 1) >> 1), u >> 1)
