"""Check that a netlist p-simulates a circuit: ``(x, C(x))`` is a possible outcome for every x."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import sv
from .bcir import BoolCircuit, evaluate_batch
from .qcir import QuantumCircuit


class VerifyError(ValueError):
    pass


@dataclass
class VerifyReport:
    checked: int
    failures: list[str] = field(default_factory=list)
    exhaustive: bool = True

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def counterexample(self) -> str | None:
        return self.failures[0] if self.failures else None


def _chunk_size(qc: QuantumCircuit) -> int:
    return max(1, (1 << 22) >> qc.n_qubits)


def check_outputs(qc: QuantumCircuit, xs: np.ndarray, ys: np.ndarray,
                  tol: float = sv.DEFAULT_TOL) -> np.ndarray:
    """Boolean mask over rows: ``ys[k]`` is a possible outcome of ``qc`` on ``xs[k]``."""
    mask = sv.measured_support_mask(sv.simulate_batch(qc, xs), qc, tol)
    m = ys.shape[1]
    weights = 1 << np.arange(m - 1, -1, -1, dtype=np.int64)
    idx = ys.astype(np.int64) @ weights if m else np.zeros(len(ys), dtype=np.int64)
    return mask[np.arange(len(xs)), idx]


def verify_netlist(qc: QuantumCircuit, bc: BoolCircuit, xs=None, *, samples: int | None = None,
                   seed: int = 0, tol: float = sv.DEFAULT_TOL, workers: int = 1,
                   exhaustive_limit: int = sv.EXHAUSTIVE_LIMIT) -> VerifyReport:
    """Verify on ``xs`` if given, else exhaustively (n <= limit), else on seeded samples."""
    if bc.n_inputs != qc.n_inputs:
        raise VerifyError(f"netlist has {bc.n_inputs} inputs, circuit has {qc.n_inputs}")
    if len(bc.outputs) != len(qc.measured):
        raise VerifyError(f"netlist has {len(bc.outputs)} outputs, circuit measures {len(qc.measured)} lines")
    exhaustive = False
    if xs is None:
        if samples is None:
            if qc.n_inputs > exhaustive_limit:
                raise sv.CapacityError(f"{qc.n_inputs} inputs exceeds the exhaustive limit of {exhaustive_limit}")
            xs = sv.all_inputs(qc.n_inputs)
            exhaustive = True
        else:
            xs = np.random.default_rng(seed).integers(0, 2, size=(samples, qc.n_inputs), dtype=np.uint8)
    xs = np.asarray(xs, dtype=np.uint8).reshape(-1, qc.n_inputs)
    sv._check_capacity(qc.n_qubits)

    step = _chunk_size(qc)
    chunks = [xs[lo:lo + step] for lo in range(0, len(xs), step)]

    def run(chunk):
        ok = check_outputs(qc, chunk, evaluate_batch(bc, chunk), tol)
        return [sv.bits_to_str(x) for x in chunk[~ok]]

    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(run, chunks))
    else:
        results = [run(c) for c in chunks]
    failures = sorted(set(f for r in results for f in r))
    return VerifyReport(checked=len(xs), failures=failures, exhaustive=exhaustive)
