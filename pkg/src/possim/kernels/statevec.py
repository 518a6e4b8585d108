"""Gate application on a batch of statevectors, shape ``(batch, 2**n)``.

Line ``q`` is bit ``n - 1 - q`` of the amplitude index (line 0 is the most
significant bit). All kernels update ``states`` in place.
"""
from __future__ import annotations

import numpy as np

from .._jit import njit, use_numba


@njit
def _insert_zero(g, pos):
    low = g & ((1 << pos) - 1)
    return ((g >> pos) << (pos + 1)) | low


@njit
def apply_1q_jit(states, n, q, m00, m01, m10, m11):
    pos = n - 1 - q
    tk = 1 << pos
    half = 1 << (n - 1)
    for b in range(states.shape[0]):
        for g in range(half):
            i0 = _insert_zero(g, pos)
            i1 = i0 | tk
            a0 = states[b, i0]
            a1 = states[b, i1]
            states[b, i0] = m00 * a0 + m01 * a1
            states[b, i1] = m10 * a0 + m11 * a1


@njit
def apply_phase_jit(states, n, q, phase):
    pos = n - 1 - q
    tk = 1 << pos
    half = 1 << (n - 1)
    for b in range(states.shape[0]):
        for g in range(half):
            i1 = _insert_zero(g, pos) | tk
            states[b, i1] *= phase


@njit
def apply_cx_jit(states, n, c, t):
    pc = n - 1 - c
    pt = n - 1 - t
    lo = min(pc, pt)
    hi = max(pc, pt)
    quarter = 1 << (n - 2)
    cbit = 1 << pc
    tbit = 1 << pt
    for b in range(states.shape[0]):
        for g in range(quarter):
            i = _insert_zero(_insert_zero(g, lo), hi) | cbit
            j = i | tbit
            tmp = states[b, i]
            states[b, i] = states[b, j]
            states[b, j] = tmp


@njit
def apply_cz_jit(states, n, a, c):
    pa = n - 1 - a
    pc = n - 1 - c
    lo = min(pa, pc)
    hi = max(pa, pc)
    quarter = 1 << (n - 2)
    both = (1 << pa) | (1 << pc)
    for b in range(states.shape[0]):
        for g in range(quarter):
            i = _insert_zero(_insert_zero(g, lo), hi) | both
            states[b, i] = -states[b, i]


def _split(states, n, q):
    return states.reshape(states.shape[0], 1 << q, 2, 1 << (n - 1 - q))


def apply_1q_np(states, n, q, m00, m01, m10, m11):
    v = _split(states, n, q)
    a0 = v[:, :, 0, :].copy()
    a1 = v[:, :, 1, :]
    v[:, :, 0, :] = m00 * a0 + m01 * a1
    v[:, :, 1, :] = m10 * a0 + m11 * a1


def apply_phase_np(states, n, q, phase):
    _split(states, n, q)[:, :, 1, :] *= phase


def _index(n, fixed):
    idx = [slice(None)] * (n + 1)
    for q, v in fixed.items():
        idx[q + 1] = v
    return tuple(idx)


def apply_cx_np(states, n, c, t):
    v = states.reshape((states.shape[0],) + (2,) * n)
    i0, i1 = _index(n, {c: 1, t: 0}), _index(n, {c: 1, t: 1})
    tmp = v[i0].copy()
    v[i0] = v[i1]
    v[i1] = tmp


def apply_cz_np(states, n, a, c):
    v = states.reshape((states.shape[0],) + (2,) * n)
    v[_index(n, {a: 1, c: 1})] *= -1


def apply_1q(states, n, q, m00, m01, m10, m11):
    (apply_1q_jit if use_numba() else apply_1q_np)(states, n, q, m00, m01, m10, m11)


def apply_phase(states, n, q, phase):
    (apply_phase_jit if use_numba() else apply_phase_np)(states, n, q, phase)


def apply_cx(states, n, c, t):
    (apply_cx_jit if use_numba() else apply_cx_np)(states, n, c, t)


def apply_cz(states, n, a, c):
    (apply_cz_jit if use_numba() else apply_cz_np)(states, n, a, c)
