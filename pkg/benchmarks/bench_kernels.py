"""Compare the numba kernels with their pure-numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each case runs once per backend to warm up (numba compiles on first call),
then reports the best of ``--repeat`` timings in milliseconds.
"""
import argparse
import timeit

import numpy as np

from possim import _jit, sv
from possim.bcir import evaluate_batch
from possim.compiler import compile_circuit
from possim.f2 import F2Matrix, rank
from possim.qcir import random_circuit
from possim.tableau import propagate_frame


def cases(rng):
    qc_sv = random_circuit(rng, 16, 20, t=8)
    xs_sv = rng.integers(0, 2, size=(8, 16), dtype=np.uint8)
    yield "statevector 16q x8, 20 layers", lambda: sv.simulate_batch(qc_sv, xs_sv)

    qc_fr = random_circuit(rng, 256, 40)
    xs = rng.integers(0, 2, size=(4096, 256), dtype=np.uint8)
    zs = rng.integers(0, 2, size=(4096, 256), dtype=np.uint8)
    yield "frame 256q, 4096 Paulis", lambda: propagate_frame(qc_fr, xs, zs)

    net = compile_circuit(random_circuit(rng, 12, 8, t=4)).netlist
    inputs = rng.integers(0, 2, size=(1 << 16, 12), dtype=np.uint8)
    yield f"netlist eval {net.gate_count()} gates x 65536", lambda: evaluate_batch(net, inputs)

    A = F2Matrix.from_array(rng.integers(0, 2, size=(1024, 1024), dtype=np.uint8))
    yield "rref 1024x1024", lambda: rank(A)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    backends = ["numba", "numpy"] if _jit.HAVE_NUMBA else ["numpy"]
    print(f"{'case':42s}" + "".join(f"{b:>12s}" for b in backends) + "     speedup")
    for name, fn in cases(np.random.default_rng(args.seed)):
        best = {}
        for b in backends:
            with _jit.using(b):
                fn()
                best[b] = min(timeit.repeat(fn, number=1, repeat=args.repeat)) * 1e3
        row = f"{name:42s}" + "".join(f"{best[b]:12.2f}" for b in backends)
        if len(best) == 2:
            row += f"{best['numpy'] / best['numba']:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
