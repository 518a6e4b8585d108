"""Hidden Linear Function instances and the kernel-based classical solver.

For symmetric binary ``A``, the quadratic form ``q(x) = x^T A x mod 4`` is
linear on ``ker A``: ``q(x) = 2 z.x`` for some hidden ``z``. The solver finds
a kernel basis ``e_i``, evaluates ``b_i = q(e_i)`` (always 0 or 2), and solves
``E z = b / 2`` over GF(2).

Instance file: ``hlf <M>`` then the ``M(M+1)/2`` upper-triangle bits
(diagonal included), row-major, as one line of ``0``/``1``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .f2 import F2Matrix, F2Vector, NoSolution, kernel_basis, solve, span


class HlfError(ValueError):
    pass


class InternalError(RuntimeError):
    pass


@dataclass(frozen=True)
class HlfInstance:
    A: F2Matrix

    def __post_init__(self):
        if self.A.rows != self.A.cols:
            raise HlfError("A must be square")
        if self.A != self.A.transpose():
            raise HlfError("A must be symmetric")

    @property
    def M(self) -> int:
        return self.A.rows

    @property
    def n_bits(self) -> int:
        return self.M * (self.M + 1) // 2


@dataclass(frozen=True)
class HlfSolution:
    z: F2Vector


def gen_grid(N: int) -> HlfInstance:
    """Adjacency matrix of the N x N grid, vertex ``r*N + c``."""
    if N < 1:
        raise HlfError("grid side must be >= 1")
    M = N * N
    A = np.zeros((M, M), dtype=np.uint8)
    for r in range(N):
        for c in range(N):
            u = r * N + c
            if c + 1 < N:
                A[u, u + 1] = A[u + 1, u] = 1
            if r + 1 < N:
                A[u, u + N] = A[u + N, u] = 1
    return HlfInstance(F2Matrix.from_array(A))


def gen_random(M: int, seed: int = 0) -> HlfInstance:
    if M < 1:
        raise HlfError("M must be >= 1")
    rng = np.random.default_rng(seed)
    upper = np.triu(rng.integers(0, 2, size=(M, M), dtype=np.uint8))
    return HlfInstance(F2Matrix.from_array(upper | upper.T))


def quadratic_form(inst: HlfInstance, x: F2Vector) -> int:
    """``x^T A x`` over the integers, mod 4."""
    if x.n != inst.M:
        raise HlfError(f"vector length {x.n} != M = {inst.M}")
    xb = x.bits().astype(np.int64)
    return int(xb @ inst.A.to_array().astype(np.int64) @ xb) % 4


def solve_hlf(inst: HlfInstance) -> HlfSolution:
    basis = kernel_basis(inst.A)
    if not basis:
        return HlfSolution(F2Vector.zeros(inst.M))
    b = [quadratic_form(inst, e) for e in basis]
    if any(v not in (0, 2) for v in b):
        raise InternalError(f"quadratic form on a kernel vector is odd: {b}")
    E = F2Matrix.from_rows(basis)
    try:
        z = solve(E, F2Vector.from_bits(v // 2 for v in b))
    except NoSolution:
        raise InternalError("E z = b/2 is inconsistent") from None
    return HlfSolution(z)


def verify_hlf(inst: HlfInstance, sol: HlfSolution, budget: int = 16,
               samples: int = 10000, seed: int = 0) -> bool:
    """``q(x) == 2 z.x (mod 4)`` on all of ``ker A`` (or on seeded samples of it)."""
    if sol.z.n != inst.M:
        return False
    basis = kernel_basis(inst.A)
    A = inst.A.to_array().astype(np.int64)
    z = sol.z.bits().astype(np.int64)
    if len(basis) <= budget:
        xs = np.array([x.bits() for x in span(basis, inst.M)], dtype=np.int64)
    else:
        E = np.array([e.bits() for e in basis], dtype=np.int64)
        coeffs = np.random.default_rng(seed).integers(0, 2, size=(samples, len(basis)))
        xs = (coeffs @ E) % 2
    q = np.einsum("ki,ij,kj->k", xs, A, xs) % 4
    return bool(np.all(q == (2 * (xs @ z)) % 4))


def serialize_instance(inst: HlfInstance) -> str:
    A = inst.A.to_array()
    iu = np.triu_indices(inst.M)
    return f"hlf {inst.M}\n" + "".join(map(str, A[iu])) + "\n"


def parse_instance(text: str) -> HlfInstance:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or not lines[0].startswith("hlf"):
        raise HlfError("missing 'hlf <M>' header")
    try:
        M = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise HlfError("bad 'hlf <M>' header") from None
    bits = lines[1] if len(lines) > 1 else ""
    if len(lines) > 2 or len(bits) != M * (M + 1) // 2 or set(bits) - {"0", "1"}:
        raise HlfError(f"expected one line of {M * (M + 1) // 2} bits")
    A = np.zeros((M, M), dtype=np.uint8)
    iu = np.triu_indices(M)
    A[iu] = [int(c) for c in bits]
    A = A | np.triu(A, 1).T
    return HlfInstance(F2Matrix.from_array(A))


def serialize_solution(sol: HlfSolution) -> str:
    return f"{sol.z}\n"


def parse_solution(text: str) -> HlfSolution:
    s = text.strip()
    if set(s) - {"0", "1"}:
        raise HlfError("solution must be a single line of bits")
    return HlfSolution(F2Vector.from_str(s))
