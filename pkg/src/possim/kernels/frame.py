"""Bit-sliced Pauli frame propagation and the stabilizer measurement sweep.

A batch of P Pauli strings on N lines is stored transposed: ``x[j]`` and
``z[j]`` are packed words whose bit ``p`` is the X/Z component of string ``p``
on line ``j``; ``r`` holds the sign bits. One Clifford gate then costs a
handful of word operations per 64 strings.

Each row of ``ops`` is ``(opcode, a, b)`` with opcodes from :data:`OPCODES`;
``b`` is ignored for one-qubit gates.
"""
from __future__ import annotations

import numpy as np

from .._jit import njit, use_numba

OP_H, OP_S, OP_SDG, OP_X, OP_Y, OP_Z, OP_CX, OP_CZ = range(8)
OPCODES = {"H": OP_H, "S": OP_S, "Sdg": OP_SDG, "X": OP_X, "Y": OP_Y, "Z": OP_Z,
           "CX": OP_CX, "CZ": OP_CZ}


@njit
def propagate_jit(x, z, r, ops):
    W = r.shape[0]
    for k in range(ops.shape[0]):
        code = ops[k, 0]
        a = ops[k, 1]
        b = ops[k, 2]
        for w in range(W):
            xa = x[a, w]
            za = z[a, w]
            if code == 0:
                r[w] ^= xa & za
                x[a, w] = za
                z[a, w] = xa
            elif code == 1:
                r[w] ^= xa & za
                z[a, w] = za ^ xa
            elif code == 2:
                za ^= xa
                z[a, w] = za
                r[w] ^= xa & za
            elif code == 3:
                r[w] ^= za
            elif code == 4:
                r[w] ^= xa ^ za
            elif code == 5:
                r[w] ^= xa
            elif code == 6:
                xb = x[b, w]
                zb = z[b, w]
                r[w] ^= xa & zb & ~(xb ^ za)
                x[b, w] = xb ^ xa
                z[a, w] = za ^ zb
            else:
                xb = x[b, w]
                zb = z[b, w]
                r[w] ^= xa & xb & (za ^ zb)
                z[a, w] = za ^ xb
                z[b, w] = zb ^ xa


def propagate_np(x, z, r, ops):
    for code, a, b in ops.tolist():
        xa, za = x[a].copy(), z[a].copy()
        if code == OP_H:
            r ^= xa & za
            x[a], z[a] = za, xa
        elif code == OP_S:
            r ^= xa & za
            z[a] ^= xa
        elif code == OP_SDG:
            z[a] ^= xa
            r ^= xa & z[a]
        elif code == OP_X:
            r ^= za
        elif code == OP_Y:
            r ^= xa ^ za
        elif code == OP_Z:
            r ^= xa
        elif code == OP_CX:
            r ^= xa & z[b] & ~(x[b] ^ za)
            x[b] ^= xa
            z[a] ^= z[b]
        else:
            r ^= xa & x[b] & (za ^ z[b])
            z[a] ^= x[b]
            z[b] ^= xa


@njit
def _rowsum(x, z, r, h, i):
    """Row h <- row i * row h, with the phase bookkeeping of Aaronson-Gottesman."""
    acc = 2 * np.int64(r[h]) + 2 * np.int64(r[i])
    for j in range(x.shape[1]):
        x1 = np.int64(x[i, j])
        z1 = np.int64(z[i, j])
        x2 = np.int64(x[h, j])
        z2 = np.int64(z[h, j])
        if x1 == 1 and z1 == 1:
            acc += z2 - x2
        elif x1 == 1:
            acc += z2 * (2 * x2 - 1)
        elif z1 == 1:
            acc += x2 * (1 - 2 * z2)
        x[h, j] ^= x[i, j]
        z[h, j] ^= z[i, j]
    r[h] = 1 if acc % 4 == 2 else 0


def _rowsum_np(x, z, r, h, i):
    x1, z1, x2, z2 = (v.astype(np.int64) for v in (x[i], z[i], x[h], z[h]))
    g = np.where(x1 & z1, z2 - x2,
                 np.where(x1, z2 * (2 * x2 - 1), np.where(z1, x2 * (1 - 2 * z2), 0)))
    acc = 2 * int(r[h]) + 2 * int(r[i]) + int(g.sum())
    x[h] ^= x[i]
    z[h] ^= z[i]
    r[h] = 1 if acc % 4 == 2 else 0


@njit
def measure_sweep_jit(x, z, r, lines, forced, out):
    """Measure Z on ``lines`` in order on a ``(2N+1, N)`` tableau.

    ``forced[k]`` is -1 (random outcomes resolve to 0) or the required bit.
    Writes outcomes to ``out``; returns the index of the first line whose
    deterministic outcome contradicts ``forced``, or -1.
    """
    N = x.shape[1]
    scratch = 2 * N
    for k in range(lines.shape[0]):
        a = lines[k]
        p = -1
        for i in range(N, 2 * N):
            if x[i, a] == 1:
                p = i
                break
        if p >= 0:
            bit = 0 if forced[k] < 0 else forced[k]
            for i in range(2 * N):
                if i != p and x[i, a] == 1:
                    _rowsum(x, z, r, i, p)
            for j in range(N):
                x[p - N, j] = x[p, j]
                z[p - N, j] = z[p, j]
                x[p, j] = 0
                z[p, j] = 0
            r[p - N] = r[p]
            z[p, a] = 1
            r[p] = bit
            out[k] = bit
        else:
            for j in range(N):
                x[scratch, j] = 0
                z[scratch, j] = 0
            r[scratch] = 0
            for i in range(N):
                if x[i, a] == 1:
                    _rowsum(x, z, r, scratch, i + N)
            out[k] = r[scratch]
            if forced[k] >= 0 and forced[k] != r[scratch]:
                return k
    return -1


def measure_sweep_np(x, z, r, lines, forced, out):
    N = x.shape[1]
    scratch = 2 * N
    for k, a in enumerate(lines.tolist()):
        hits = np.flatnonzero(x[N:2 * N, a])
        if hits.size:
            p = N + int(hits[0])
            bit = 0 if forced[k] < 0 else int(forced[k])
            for i in np.flatnonzero(x[: 2 * N, a]).tolist():
                if i != p:
                    _rowsum_np(x, z, r, i, p)
            x[p - N], z[p - N], r[p - N] = x[p], z[p], r[p]
            x[p] = 0
            z[p] = 0
            z[p, a] = 1
            r[p] = bit
            out[k] = bit
        else:
            x[scratch] = 0
            z[scratch] = 0
            r[scratch] = 0
            for i in np.flatnonzero(x[:N, a]).tolist():
                _rowsum_np(x, z, r, scratch, i + N)
            out[k] = r[scratch]
            if forced[k] >= 0 and forced[k] != r[scratch]:
                return k
    return -1


def propagate(x, z, r, ops):
    (propagate_jit if use_numba() else propagate_np)(x, z, r, ops)


def measure_sweep(x, z, r, lines, forced, out):
    return (measure_sweep_jit if use_numba() else measure_sweep_np)(x, z, r, lines, forced, out)
