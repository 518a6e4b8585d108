"""Numeric kernels, each as a numba ``@njit`` function plus a numpy twin.

The public name in each module dispatches on :func:`possim._jit.backend`.
The ``*_jit`` and ``*_np`` variants stay importable for benchmarks and for
the equivalence tests that pin the two paths together.
"""
