"""Pauli conjugation through Clifford circuits and the a-vector table.

A :class:`PauliString` is ``i**phase`` times a tensor product of letters, one
per line, where the letter on line ``j`` is ``I, X, Z, Y`` for
``(x_j, z_j) = (0,0), (1,0), (0,1), (1,1)``. Conjugation computes
``Q P Q^dagger`` gate by gate, tracking the sign exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .f2 import F2Matrix, F2Vector
from .kernels import f2 as _kf2
from .kernels import frame as _k
from .qcir import QuantumCircuit

_LETTERS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_PHASE_PREFIX = ("+", "i", "-", "-i")


class NonCliffordError(ValueError):
    pass


class PostselectImpossible(RuntimeError):
    pass


@dataclass(frozen=True)
class PauliString:
    xmask: F2Vector
    zmask: F2Vector
    phase: int = 0

    def __post_init__(self):
        if self.xmask.n != self.zmask.n:
            raise ValueError("mask widths differ")
        object.__setattr__(self, "phase", self.phase % 4)

    @property
    def width(self) -> int:
        return self.xmask.n

    @classmethod
    def identity(cls, width: int) -> "PauliString":
        return cls(F2Vector.zeros(width), F2Vector.zeros(width))

    @classmethod
    def single(cls, width: int, line: int, letter: str) -> "PauliString":
        return cls.from_str("I" * line + letter + "I" * (width - line - 1))

    @classmethod
    def from_str(cls, s: str) -> "PauliString":
        phase = 0
        for k, prefix in sorted(enumerate(_PHASE_PREFIX), key=lambda kv: -len(kv[1])):
            if s.startswith(prefix):
                phase, s = k, s[len(prefix):]
                break
        if set(s) - set("IXYZ"):
            raise ValueError(f"bad Pauli string {s!r}")
        return cls(F2Vector.from_bits(c in "XY" for c in s),
                   F2Vector.from_bits(c in "ZY" for c in s), phase)

    def is_identity(self) -> bool:
        return self.xmask.weight() == 0 and self.zmask.weight() == 0

    def letters(self) -> str:
        return "".join(_LETTERS[(int(a), int(b))] for a, b in zip(self.xmask.bits(), self.zmask.bits()))

    def to_matrix(self) -> np.ndarray:
        mats = {"I": np.eye(2), "X": np.array([[0, 1], [1, 0]]),
                "Y": np.array([[0, -1j], [1j, 0]]), "Z": np.diag([1, -1])}
        out = np.array([[1j ** self.phase]], dtype=complex)
        for c in self.letters():
            out = np.kron(out, mats[c])
        return out

    def __str__(self) -> str:
        return _PHASE_PREFIX[self.phase] + self.letters()


def _opcodes(qc: QuantumCircuit) -> np.ndarray:
    ops = np.zeros((len(qc.gates), 3), dtype=np.int64)
    for k, g in enumerate(qc.gates):
        if g.kind not in _k.OPCODES:
            raise NonCliffordError(f"gate '{g}' is not Clifford")
        ops[k, 0] = _k.OPCODES[g.kind]
        ops[k, 1] = g.qubits[0]
        ops[k, 2] = g.qubits[-1]
    return ops


def propagate_frame(qc: QuantumCircuit, xs: np.ndarray, zs: np.ndarray):
    """Conjugate P Pauli strings (given as ``(P, N)`` bit arrays) through ``qc``.

    Returns packed ``(x, z, r)`` in the transposed layout of
    :mod:`possim.kernels.frame`: ``x[j]`` holds line ``j`` of every string.
    """
    ops = _opcodes(qc)
    P = xs.shape[0]
    x = np.ascontiguousarray(_kf2.pack_rows(np.asarray(xs).T, P))
    z = np.ascontiguousarray(_kf2.pack_rows(np.asarray(zs).T, P))
    r = np.zeros(_kf2.n_words(P), dtype=np.uint64)
    _k.propagate(x, z, r, ops)
    return x, z, r


def conjugate_paulis(qc: QuantumCircuit, paulis: Sequence[PauliString]) -> list[PauliString]:
    if any(p.width != qc.n_qubits for p in paulis):
        raise ValueError("Pauli width does not match the circuit")
    if not paulis:
        return []
    P = len(paulis)
    xs = np.stack([p.xmask.bits() for p in paulis])
    zs = np.stack([p.zmask.bits() for p in paulis])
    x, z, r = propagate_frame(qc, xs, zs)
    xb = _kf2.unpack_rows(x, P).T
    zb = _kf2.unpack_rows(z, P).T
    rb = _kf2.unpack_rows(r[None, :], P)[0]
    return [PauliString(F2Vector.from_bits(xb[p]), F2Vector.from_bits(zb[p]),
                        paulis[p].phase + 2 * int(rb[p])) for p in range(P)]


def conjugate_pauli(qc: QuantumCircuit, P: PauliString) -> PauliString:
    """``Q P Q^dagger`` for a Clifford circuit ``Q``."""
    return conjugate_paulis(qc, [P])[0]


def a_vectors(qc: QuantumCircuit) -> F2Matrix:
    """Row ``j`` is ``a^(j)``: which inputs flip line ``j`` at the output.

    Conjugates each input ``X_i`` through the circuit and keeps only the X
    component on each line (Y counts as X, Z and signs are dropped).
    """
    n, N = qc.n_inputs, qc.n_qubits
    xs = np.zeros((n, N), dtype=np.uint8)
    xs[np.arange(n), np.arange(n)] = 1
    x, _, _ = propagate_frame(qc, xs, np.zeros_like(xs))
    return F2Matrix(N, n, x)


def stabilizer_tableau(qc: QuantumCircuit) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Unpacked ``(2N+1, N)`` tableau of ``Q|0^N>``: destabilizers, stabilizers, scratch row."""
    N = qc.n_qubits
    eye = np.eye(N, dtype=np.uint8)
    zero = np.zeros((N, N), dtype=np.uint8)
    x, z, r = propagate_frame(qc, np.vstack([eye, zero]), np.vstack([zero, eye]))
    X = np.zeros((2 * N + 1, N), dtype=np.uint8)
    Z = np.zeros_like(X)
    R = np.zeros(2 * N + 1, dtype=np.uint8)
    X[: 2 * N] = _kf2.unpack_rows(x, 2 * N).T
    Z[: 2 * N] = _kf2.unpack_rows(z, 2 * N).T
    R[: 2 * N] = _kf2.unpack_rows(r[None, :], 2 * N)[0]
    return X, Z, R


def clifford_support_string(qc: QuantumCircuit, postselect=None) -> str:
    """A measured-lines string ``s`` with nonzero amplitude in ``Q|0...0>``.

    Post-selected lines are measured first with their outcome forced; measured
    lines follow in order, and every random outcome resolves to 0, which makes
    ``s`` the lexicographically smallest possible outcome.
    """
    if not qc.is_clifford():
        raise NonCliffordError("circuit contains non-Clifford gates")
    postselect = qc.postselect if postselect is None else tuple(postselect)
    X, Z, R = stabilizer_tableau(qc)
    lines = np.array([q for q, _ in postselect] + list(qc.measured), dtype=np.int64)
    forced = np.array([b for _, b in postselect] + [-1] * len(qc.measured), dtype=np.int64)
    out = np.zeros(len(lines), dtype=np.int64)
    bad = _k.measure_sweep(X, Z, R, lines, forced, out)
    if bad >= 0:
        q, b = postselect[bad]
        raise PostselectImpossible(f"line {q} cannot be post-selected to {b}")
    return "".join(str(int(v)) for v in out[len(postselect):])
