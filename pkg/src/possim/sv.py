"""Dense statevector oracle.

Everything else in the package is checked against this module. Basis strings
are written line 0 first, and line 0 is the most significant bit of the
amplitude index, so ``format(index, f"0{n}b")`` is the basis string.

Support membership uses a relative threshold: ``|amp(y)| > tol * max|amp|``.
Nonzero amplitudes of a Clifford+T circuit live in ``Z[exp(i pi/4)] / 2**(k/2)``;
at desk scale (<= 24 qubits, a few dozen gates) the smallest nonzero one is
many orders of magnitude above ``1e-9`` of the largest, while rounding noise
on the zero ones sits near machine epsilon.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .kernels import statevec as _k
from .qcir import QuantumCircuit

DEFAULT_TOL = 1e-9
DEFAULT_MAX_QUBITS = 24
EXHAUSTIVE_LIMIT = 16

_SQ2 = 1 / np.sqrt(2)
_W = np.exp(1j * np.pi / 4)
MAGIC_STATE = np.array([_SQ2, _SQ2 * _W])

_DENSE = {
    "H": ((_SQ2, _SQ2), (_SQ2, -_SQ2)),
    "X": ((0, 1), (1, 0)),
    "Y": ((0, -1j), (1j, 0)),
}
_PHASE = {"Z": -1.0 + 0j, "S": 1j, "Sdg": -1j, "T": _W, "Tdg": np.conj(_W)}


class CapacityError(RuntimeError):
    pass


class WidthError(ValueError):
    pass


def max_qubits() -> int:
    return int(os.environ.get("POSSIM_MAX_QUBITS", DEFAULT_MAX_QUBITS))


def gate_matrix(kind: str) -> np.ndarray:
    """Dense unitary of a gate kind (4x4 for two-qubit gates, control first)."""
    if kind in _DENSE:
        return np.array(_DENSE[kind], dtype=complex)
    if kind in _PHASE:
        return np.diag([1, _PHASE[kind]]).astype(complex)
    if kind == "CX":
        return np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
    if kind == "CZ":
        return np.diag([1, 1, 1, -1]).astype(complex)
    raise ValueError(kind)


@dataclass
class Statevector:
    n_qubits: int
    amps: np.ndarray

    def __post_init__(self):
        if self.amps.shape != (1 << self.n_qubits,):
            raise WidthError(f"expected {1 << self.n_qubits} amplitudes, got {self.amps.shape}")

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def amplitude(self, bits: str) -> complex:
        return complex(self.amps[int(bits, 2) if bits else 0])

    def nonzero(self, tol: float = DEFAULT_TOL) -> dict[str, complex]:
        return {y: self.amplitude(y) for y in sorted(support(self, tol))}


def _as_bits(x, n: int) -> np.ndarray:
    if isinstance(x, str):
        if set(x) - {"0", "1"}:
            raise WidthError(f"not a bitstring: {x!r}")
        x = [int(c) for c in x]
    arr = np.asarray(list(x), dtype=np.uint8).reshape(-1)
    if arr.size != n:
        raise WidthError(f"input has {arr.size} bits, circuit has {n} input lines")
    return arr


def _check_capacity(n: int) -> None:
    limit = max_qubits()
    if n > limit:
        raise CapacityError(f"{n} qubits exceeds the statevector limit of {limit}"
                            " (set POSSIM_MAX_QUBITS to raise it)")


def initial_states(qc: QuantumCircuit, xs: np.ndarray) -> np.ndarray:
    """``|x, 0^advice, A^magic>`` for each row of ``xs``."""
    _check_capacity(qc.n_qubits)
    xs = np.asarray(xs, dtype=np.int64).reshape(-1, qc.n_inputs)
    n = qc.n_qubits
    magic = np.ones(1, dtype=complex)
    for _ in range(qc.n_magic):
        magic = np.kron(magic, MAGIC_STATE)
    weights = 1 << np.arange(n - 1, n - 1 - qc.n_inputs, -1, dtype=np.int64)
    base = xs @ weights if qc.n_inputs else np.zeros(len(xs), dtype=np.int64)
    states = np.zeros((len(xs), 1 << n), dtype=complex)
    offsets = np.arange(magic.size)
    states[np.arange(len(xs))[:, None], base[:, None] + offsets[None, :]] = magic[None, :]
    return states


def apply_gates(states: np.ndarray, qc: QuantumCircuit) -> np.ndarray:
    n = qc.n_qubits
    for g in qc.gates:
        k = g.kind
        if k in _PHASE:
            _k.apply_phase(states, n, g.qubits[0], _PHASE[k])
        elif k == "CX":
            _k.apply_cx(states, n, *g.qubits)
        elif k == "CZ":
            _k.apply_cz(states, n, *g.qubits)
        else:
            (m00, m01), (m10, m11) = _DENSE[k]
            _k.apply_1q(states, n, g.qubits[0], complex(m00), complex(m01), complex(m10), complex(m11))
    return states


def simulate_batch(qc: QuantumCircuit, xs) -> np.ndarray:
    """Final amplitudes for every input row in ``xs``; no post-selection."""
    return apply_gates(initial_states(qc, xs), qc)


def simulate(qc: QuantumCircuit, x) -> Statevector:
    bits = _as_bits(x, qc.n_inputs)
    return Statevector(qc.n_qubits, simulate_batch(qc, bits[None, :])[0])


def post_select(state: Statevector, lines, value) -> Statevector:
    """Project ``lines`` onto ``value`` and drop them. No renormalization."""
    lines = list(lines)
    bits = _as_bits(value, len(lines)) if lines else []
    if len(set(lines)) != len(lines) or any(not 0 <= q < state.n_qubits for q in lines):
        raise WidthError(f"bad post-selection lines {lines}")
    v = state.amps.reshape((2,) * state.n_qubits)
    idx = [slice(None)] * state.n_qubits
    for q, b in zip(lines, bits):
        idx[q] = int(b)
    rest = state.n_qubits - len(lines)
    return Statevector(rest, np.ascontiguousarray(v[tuple(idx)]).reshape(1 << rest))


def support(state: Statevector, tol: float = DEFAULT_TOL) -> set[str]:
    mags = np.abs(state.amps)
    top = mags.max(initial=0.0)
    if top == 0.0:
        return set()
    return {format(int(i), f"0{state.n_qubits}b") if state.n_qubits else ""
            for i in np.flatnonzero(mags > tol * top)}


def measured_support_mask(states: np.ndarray, qc: QuantumCircuit, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Boolean ``(batch, 2**m)`` table: outcome ``y`` on the measured lines is possible.

    Post-selection from ``qc.postselect`` is applied first; lines that are
    neither measured nor post-selected are marginalized. ``y`` is indexed with
    the first measured line as its most significant bit.
    """
    n = qc.n_qubits
    B = states.shape[0]
    v = states.reshape((B,) + (2,) * n)
    idx = [slice(None)] * (n + 1)
    for q, b in qc.postselect:
        idx[q + 1] = b
    v = v[tuple(idx)]
    remaining = [q for q in range(n) if q not in dict(qc.postselect)]
    mags = np.abs(v).reshape(B, -1)
    top = mags.max(axis=1, keepdims=True)
    keep = (mags > tol * top) & (top > 0)
    keep = keep.reshape((B,) + (2,) * len(remaining))
    order = [remaining.index(q) + 1 for q in qc.measured]
    rest = [a for a in range(1, len(remaining) + 1) if a not in order]
    keep = keep.transpose([0] + order + rest).reshape(B, 1 << len(qc.measured), -1)
    return keep.any(axis=2)


def all_inputs(n: int) -> np.ndarray:
    """Every x in {0,1}^n, as rows, in lexicographic order (bit 0 first)."""
    idx = np.arange(1 << n, dtype=np.int64)
    return ((idx[:, None] >> np.arange(n - 1, -1, -1)) & 1).astype(np.uint8)


def bits_to_str(bits) -> str:
    return "".join(str(int(b)) for b in bits)


def relation(qc: QuantumCircuit, tol: float = DEFAULT_TOL,
             limit: int = EXHAUSTIVE_LIMIT) -> set[tuple[str, str]]:
    """All ``(x, y)`` with a nonzero amplitude for outcome ``y`` on input ``x``."""
    if qc.n_inputs > limit:
        raise CapacityError(f"{qc.n_inputs} inputs exceeds the exhaustive limit of {limit}")
    xs = all_inputs(qc.n_inputs)
    m = len(qc.measured)
    out = set()
    for lo in range(0, len(xs), 256):
        chunk = xs[lo:lo + 256]
        mask = measured_support_mask(simulate_batch(qc, chunk), qc, tol)
        for x, row in zip(chunk, mask):
            xs_str = bits_to_str(x)
            out.update((xs_str, format(int(y), f"0{m}b") if m else "") for y in np.flatnonzero(row))
    return out
