"""Packed GF(2) kernels. Bit ``j`` of a row lives in word ``j // 64``, bit ``j % 64``."""
from __future__ import annotations

import numpy as np

from .._jit import njit, use_numba

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


def n_words(nbits: int) -> int:
    return max(1, (nbits + 63) // 64)


def pack_rows(bits: np.ndarray, nbits: int | None = None) -> np.ndarray:
    """Pack a 2-D 0/1 array into ``(rows, n_words)`` uint64 words."""
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.ndim != 2:
        raise ValueError("expected a 2-D bit array")
    nbits = bits.shape[1] if nbits is None else nbits
    w = n_words(nbits)
    packed = np.packbits(bits & 1, axis=1, bitorder="little")
    out = np.zeros((bits.shape[0], w * 8), dtype=np.uint8)
    out[:, : packed.shape[1]] = packed
    return out.view("<u8").astype(np.uint64).reshape(bits.shape[0], w)


def unpack_rows(words: np.ndarray, nbits: int) -> np.ndarray:
    words = np.ascontiguousarray(words, dtype="<u8")
    if words.shape[0] == 0:
        return np.zeros((0, nbits), dtype=np.uint8)
    as_bytes = words.view(np.uint8).reshape(words.shape[0], -1)
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :nbits]


@njit
def _parity64(v):
    v ^= v >> np.uint64(32)
    v ^= v >> np.uint64(16)
    v ^= v >> np.uint64(8)
    v ^= v >> np.uint64(4)
    v ^= v >> np.uint64(2)
    v ^= v >> np.uint64(1)
    return v & np.uint64(1)


@njit
def popcount64(v):
    v = v - ((v >> np.uint64(1)) & _M1)
    v = (v & _M2) + ((v >> np.uint64(2)) & _M2)
    v = (v + (v >> np.uint64(4))) & _M4
    return (v * _H01) >> np.uint64(56)


@njit
def matvec_jit(rows, x):
    out = np.zeros(rows.shape[0], dtype=np.uint8)
    for r in range(rows.shape[0]):
        acc = np.uint64(0)
        for w in range(rows.shape[1]):
            acc ^= rows[r, w] & x[w]
        out[r] = np.uint8(_parity64(acc))
    return out


def matvec_np(rows, x):
    if rows.shape[0] == 0:
        return np.zeros(0, dtype=np.uint8)
    acc = np.bitwise_xor.reduce(rows & x[None, :], axis=1)
    for s in (32, 16, 8, 4, 2, 1):
        acc ^= acc >> np.uint64(s)
    return (acc & np.uint64(1)).astype(np.uint8)


@njit
def rref_jit(data, ncols):
    """In-place reduced row echelon form. Returns the pivot columns."""
    nrows = data.shape[0]
    pivots = np.empty(min(nrows, ncols), dtype=np.int64)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        w = c >> 6
        bit = np.uint64(1) << np.uint64(c & 63)
        p = -1
        for i in range(r, nrows):
            if data[i, w] & bit:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for k in range(data.shape[1]):
                tmp = data[r, k]
                data[r, k] = data[p, k]
                data[p, k] = tmp
        for i in range(nrows):
            if i != r and (data[i, w] & bit):
                for k in range(data.shape[1]):
                    data[i, k] ^= data[r, k]
        pivots[r] = c
        r += 1
    return pivots[:r]


def rref_np(data, ncols):
    nrows = data.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        w, bit = c >> 6, np.uint64(1) << np.uint64(c & 63)
        hits = np.flatnonzero(data[r:, w] & bit)
        if hits.size == 0:
            continue
        p = r + hits[0]
        if p != r:
            data[[r, p]] = data[[p, r]]
        mask = (data[:, w] & bit) != 0
        mask[r] = False
        data[mask] ^= data[r]
        pivots.append(c)
        r += 1
    return np.array(pivots, dtype=np.int64)


def matvec(rows, x):
    return matvec_jit(rows, x) if use_numba() else matvec_np(rows, x)


def rref(data, ncols):
    return rref_jit(data, ncols) if use_numba() else rref_np(data, ncols)
