"""Bit-packed linear algebra over GF(2).

Vectors and matrix rows are stored as little-endian ``uint64`` words: bit
``j`` sits in word ``j // 64`` at position ``j % 64``. String forms list bit
0 first, so ``F2Vector.from_str("10")`` has only bit 0 set.
"""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .kernels import f2 as _k


class NoSolution(ValueError):
    """The linear system has no solution over GF(2)."""


class F2Vector:
    __slots__ = ("n", "words")

    def __init__(self, n: int, words: np.ndarray | None = None):
        if n < 0:
            raise ValueError("length must be non-negative")
        self.n = n
        w = _k.n_words(n)
        if words is None:
            words = np.zeros(w, dtype=np.uint64)
        else:
            words = np.array(words, dtype=np.uint64).reshape(w)
            tail = n & 63
            if n == 0:
                words[:] = 0
            elif tail:
                words[-1] &= np.uint64((1 << tail) - 1)
        self.words = words
        self.words.flags.writeable = False

    @classmethod
    def zeros(cls, n: int) -> "F2Vector":
        return cls(n)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "F2Vector":
        arr = np.fromiter((int(b) & 1 for b in bits), dtype=np.uint8)
        return cls(arr.size, _k.pack_rows(arr[None, :], arr.size)[0])

    @classmethod
    def from_str(cls, s: str) -> "F2Vector":
        if set(s) - {"0", "1"}:
            raise ValueError(f"not a bitstring: {s!r}")
        return cls.from_bits(int(c) for c in s)

    @classmethod
    def from_int(cls, value: int, n: int) -> "F2Vector":
        """Bit ``j`` of the vector is bit ``j`` of ``value``."""
        return cls.from_bits((value >> j) & 1 for j in range(n))

    @classmethod
    def unit(cls, n: int, j: int) -> "F2Vector":
        return cls.from_int(1 << j, n)

    def bits(self) -> np.ndarray:
        return _k.unpack_rows(self.words[None, :], self.n)[0]

    def to_int(self) -> int:
        return sum(int(w) << (64 * k) for k, w in enumerate(self.words))

    def weight(self) -> int:
        return int(sum(int(_k.popcount64(w)) for w in self.words))

    def support(self) -> list[int]:
        return [int(j) for j in np.flatnonzero(self.bits())]

    def dot(self, other: "F2Vector") -> int:
        self._check(other)
        return int(np.bitwise_count(self.words & other.words).sum()) & 1

    def __xor__(self, other: "F2Vector") -> "F2Vector":
        self._check(other)
        return F2Vector(self.n, self.words ^ other.words)

    def __and__(self, other: "F2Vector") -> "F2Vector":
        self._check(other)
        return F2Vector(self.n, self.words & other.words)

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.n:
            raise IndexError(j)
        return int(self.words[j >> 6] >> np.uint64(j & 63)) & 1

    def __len__(self) -> int:
        return self.n

    def __iter__(self):
        return iter(int(b) for b in self.bits())

    def __eq__(self, other) -> bool:
        if not isinstance(other, F2Vector):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.words, other.words))

    def __hash__(self) -> int:
        return hash((self.n, self.words.tobytes()))

    def __str__(self) -> str:
        return "".join(map(str, self.bits()))

    def __repr__(self) -> str:
        return f"F2Vector('{self}')"

    def _check(self, other: "F2Vector") -> None:
        if self.n != other.n:
            raise ValueError(f"length mismatch: {self.n} vs {other.n}")


class F2Matrix:
    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: np.ndarray | None = None):
        self.rows = rows
        self.cols = cols
        w = _k.n_words(cols)
        if data is None:
            data = np.zeros((rows, w), dtype=np.uint64)
        else:
            data = np.array(data, dtype=np.uint64).reshape(rows, w)
        self.data = data
        self.data.flags.writeable = False

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "F2Matrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls.from_array(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_array(cls, arr) -> "F2Matrix":
        arr = np.asarray(arr, dtype=np.uint8)
        if arr.ndim != 2:
            raise ValueError("expected a 2-D array")
        return cls(arr.shape[0], arr.shape[1], _k.pack_rows(arr & 1, arr.shape[1]))

    @classmethod
    def from_rows(cls, rows: Sequence, cols: int | None = None) -> "F2Matrix":
        vecs = [r if isinstance(r, F2Vector) else
                F2Vector.from_str(r) if isinstance(r, str) else F2Vector.from_bits(r)
                for r in rows]
        if cols is None:
            if not vecs:
                raise ValueError("cols required for an empty row list")
            cols = vecs[0].n
        if any(v.n != cols for v in vecs):
            raise ValueError("ragged rows")
        data = np.stack([v.words for v in vecs]) if vecs else None
        return cls(len(vecs), cols, data)

    def to_array(self) -> np.ndarray:
        return _k.unpack_rows(self.data, self.cols)

    def row(self, i: int) -> F2Vector:
        return F2Vector(self.cols, self.data[i])

    def row_list(self) -> list[F2Vector]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "F2Matrix":
        return F2Matrix.from_array(self.to_array().T)

    def submatrix(self, row_start: int, row_stop: int) -> "F2Matrix":
        return F2Matrix(row_stop - row_start, self.cols, self.data[row_start:row_stop])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __matmul__(self, x: F2Vector) -> F2Vector:
        return matvec(self, x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, F2Matrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.data, other.data))

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.data.tobytes()))

    def __str__(self) -> str:
        return "\n".join(str(r) for r in self.row_list())

    def __repr__(self) -> str:
        return f"F2Matrix.from_rows({[str(r) for r in self.row_list()]!r}, cols={self.cols})"


def matvec(A: F2Matrix, x: F2Vector) -> F2Vector:
    if x.n != A.cols:
        raise ValueError(f"vector length {x.n} does not match {A.cols} columns")
    return F2Vector.from_bits(_k.matvec(A.data, x.words))


def _reduced(A: F2Matrix) -> tuple[np.ndarray, np.ndarray]:
    data = np.array(A.data, dtype=np.uint64, copy=True)
    pivots = _k.rref(data, A.cols)
    return data, pivots


def rank(A: F2Matrix) -> int:
    return int(_reduced(A)[1].size)


def rref(A: F2Matrix) -> tuple[F2Matrix, list[int]]:
    data, pivots = _reduced(A)
    return F2Matrix(A.rows, A.cols, data), [int(p) for p in pivots]


def kernel_basis(A: F2Matrix) -> list[F2Vector]:
    """Canonical null-space basis: one vector per free column, in column order.

    The vector for free column ``f`` has bit ``f`` set, no other free bits,
    and pivot bits read off the reduced row echelon form.
    """
    data, pivots = _reduced(A)
    R = _k.unpack_rows(data[: pivots.size], A.cols)
    pivot_set = set(int(p) for p in pivots)
    basis = []
    for f in range(A.cols):
        if f in pivot_set:
            continue
        v = np.zeros(A.cols, dtype=np.uint8)
        v[f] = 1
        v[pivots] = R[:, f]
        basis.append(F2Vector.from_bits(v))
    return basis


def solve(E: F2Matrix, c: F2Vector) -> F2Vector:
    """Solve ``E z = c``; free variables are set to 0."""
    if c.n != E.rows:
        raise ValueError(f"rhs length {c.n} does not match {E.rows} rows")
    aug = np.zeros((E.rows, E.cols + 1), dtype=np.uint8)
    aug[:, : E.cols] = E.to_array()
    aug[:, E.cols] = c.bits()
    data = _k.pack_rows(aug, E.cols + 1)
    pivots = _k.rref(data, E.cols + 1)
    if pivots.size and pivots[-1] == E.cols:
        raise NoSolution("inconsistent system")
    R = _k.unpack_rows(data[: pivots.size], E.cols + 1)
    z = np.zeros(E.cols, dtype=np.uint8)
    z[pivots] = R[:, E.cols]
    return F2Vector.from_bits(z)


def span(basis: Sequence[F2Vector], n: int):
    """Yield all 2^k elements of the span, in Gray-code order starting at 0."""
    cur = F2Vector.zeros(n)
    yield cur
    for g in range(1, 1 << len(basis)):
        cur = cur ^ basis[(g & -g).bit_length() - 1]
        yield cur
