"""Compiled inner loops for the bit-serial parts of the codecs.

Everything here operates on plain numpy arrays and signals failure through
a status code, leaving exception construction to the Python callers.
"""

import numba
import numpy as np

ESCAPE_Q = 32
MAX_K = 24
K_FIELD_BITS = 5
BLOCK_SIZE = 64

OK = 0
ERR_TRUNCATED = 1
ERR_BAD_K = 2
ERR_RANGE = 3


@numba.njit(cache=True)
def pack_codes(codes, lengths, total_bits):
    """Concatenate MSB-first codewords into a zero-padded byte array."""
    out = np.zeros((total_bits + 7) // 8, dtype=np.uint8)
    pos = 0
    for i in range(codes.shape[0]):
        code = np.uint64(codes[i])
        for j in range(lengths[i] - 1, -1, -1):
            if (code >> np.uint64(j)) & np.uint64(1):
                out[pos >> 3] |= np.uint8(0x80 >> (pos & 7))
            pos += 1
    return out


@numba.njit(cache=True)
def _read_bits(data, pos, count, nbits_total):
    value = np.uint64(0)
    if pos + count > nbits_total:
        return value, -1
    for _ in range(count):
        bit = (data[pos >> 3] >> (7 - (pos & 7))) & 1
        value = (value << np.uint64(1)) | np.uint64(bit)
        pos += 1
    return value, pos


@numba.njit(cache=True)
def decode_blocks(data, start_bit, count):
    """Decode ``count`` block-Rice symbols starting at ``start_bit``.

    Returns ``(symbols, end_bit, status, fail_bit)``.
    """
    symbols = np.zeros(count, dtype=np.int64)
    nbits_total = data.shape[0] * 8
    pos = start_bit
    k = 0
    for i in range(count):
        if i % BLOCK_SIZE == 0:
            kv, newpos = _read_bits(data, pos, K_FIELD_BITS, nbits_total)
            if newpos < 0:
                return symbols, pos, ERR_TRUNCATED, pos
            k = np.int64(kv)
            if k > MAX_K:
                return symbols, pos, ERR_BAD_K, pos
            pos = newpos
        q = 0
        while q < ESCAPE_Q:
            if pos >= nbits_total:
                return symbols, pos, ERR_TRUNCATED, pos
            bit = (data[pos >> 3] >> (7 - (pos & 7))) & 1
            pos += 1
            if bit == 0:
                break
            q += 1
        if q == ESCAPE_Q:
            raw, newpos = _read_bits(data, pos, 32, nbits_total)
            if newpos < 0:
                return symbols, pos, ERR_TRUNCATED, pos
            pos = newpos
            symbols[i] = np.int64(raw)
        else:
            rem, newpos = _read_bits(data, pos, k, nbits_total)
            if newpos < 0:
                return symbols, pos, ERR_TRUNCATED, pos
            pos = newpos
            symbols[i] = (np.int64(q) << k) | np.int64(rem)
    return symbols, pos, OK, pos


@numba.njit(cache=True)
def med_reconstruct(folded, height, width, n):
    """Invert residual folding and median prediction in raster order.

    Returns ``(plane, status, index)``; a folded symbol outside ``[0, 2**n)``
    stops decoding with ``ERR_RANGE``.
    """
    out = np.zeros((height, width), dtype=np.int64)
    modulus = np.int64(1) << n
    idx = 0
    for y in range(height):
        for x in range(width):
            u = folded[idx]
            if u < 0 or u >= modulus:
                return out, ERR_RANGE, idx
            if u & 1:
                s = modulus - ((u + 1) >> 1)
            else:
                s = u >> 1
            if y == 0 and x == 0:
                pred = np.int64(0)
            elif y == 0:
                pred = out[y, x - 1]
            elif x == 0:
                pred = out[y - 1, x]
            else:
                a = out[y, x - 1]
                b = out[y - 1, x]
                c = out[y - 1, x - 1]
                hi = a if a > b else b
                lo = a if a < b else b
                if c >= hi:
                    pred = lo
                elif c <= lo:
                    pred = hi
                else:
                    pred = a + b - c
            out[y, x] = (pred + s) % modulus
            idx += 1
    return out, OK, idx
