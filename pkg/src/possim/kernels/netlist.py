"""Bit-parallel netlist evaluation and depth.

Nodes are three parallel int64 arrays ``(kind, a, b)`` in topological order.
Evaluation works on packed words: bit ``k`` of word ``w`` is input vector
``64 * w + k``, so one pass evaluates 64 inputs per word.
"""
from __future__ import annotations

import numpy as np

from .._jit import njit, use_numba

INPUT, CONST, NOT, AND, OR = range(5)

_ONES = np.uint64(0xFFFFFFFFFFFFFFFF)


@njit
def evaluate_jit(kind, a, b, inputs):
    W = inputs.shape[1]
    vals = np.empty((kind.shape[0], W), dtype=np.uint64)
    for i in range(kind.shape[0]):
        k = kind[i]
        for w in range(W):
            if k == 0:
                vals[i, w] = inputs[a[i], w]
            elif k == 1:
                vals[i, w] = _ONES if a[i] else np.uint64(0)
            elif k == 2:
                vals[i, w] = ~vals[a[i], w]
            elif k == 3:
                vals[i, w] = vals[a[i], w] & vals[b[i], w]
            else:
                vals[i, w] = vals[a[i], w] | vals[b[i], w]
    return vals


@njit
def levels_jit(kind, a, b):
    lev = np.zeros(kind.shape[0], dtype=np.int64)
    for i in range(kind.shape[0]):
        k = kind[i]
        if k == 2:
            lev[i] = lev[a[i]] + 1
        elif k >= 3:
            lev[i] = max(lev[a[i]], lev[b[i]]) + 1
    return lev


def levels_np(kind, a, b):
    lev = np.zeros(kind.shape[0], dtype=np.int64)
    two = kind >= AND
    gate = kind >= NOT
    for i in np.flatnonzero(gate).tolist():
        lev[i] = (max(lev[a[i]], lev[b[i]]) if two[i] else lev[a[i]]) + 1
    return lev


def evaluate_np(kind, a, b, inputs, lev=None):
    """Level-synchronous evaluation: every node of one depth in one numpy op."""
    if lev is None:
        lev = levels_np(kind, a, b)
    vals = np.empty((kind.shape[0], inputs.shape[1]), dtype=np.uint64)
    src = kind == INPUT
    vals[src] = inputs[a[src]]
    cst = kind == CONST
    vals[cst] = np.where(a[cst, None] != 0, _ONES, np.uint64(0))
    order = np.argsort(lev, kind="stable")
    bounds = np.searchsorted(lev[order], np.arange(1, lev.max(initial=0) + 2))
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        ids = order[lo:hi]
        k = kind[ids]
        for code, fn in ((NOT, None), (AND, np.bitwise_and), (OR, np.bitwise_or)):
            sel = ids[k == code]
            if sel.size == 0:
                continue
            if fn is None:
                vals[sel] = ~vals[a[sel]]
            else:
                vals[sel] = fn(vals[a[sel]], vals[b[sel]])
    return vals


def evaluate(kind, a, b, inputs):
    if use_numba():
        return evaluate_jit(kind, a, b, inputs)
    return evaluate_np(kind, a, b, inputs)


def levels(kind, a, b):
    return levels_jit(kind, a, b) if use_numba() else levels_np(kind, a, b)
