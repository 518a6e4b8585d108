"""Clifford+T circuit -> classical netlist whose output is always a possible outcome.

Pipeline: canonicalize, replace every T by a post-selected magic-state gadget,
push the input flips ``X^x`` through the resulting Clifford circuit to get the
a-vector table, pick one support string per magic-line outcome ``z``, then
emit three stages:

1. shared parities ``a^(i).x`` for the measured lines and, per ``z``, the
   candidate output ``parities XOR s^(z)`` (a NOT wherever ``s^(z)`` is 1);
2. selector parities ``z_k(x) = a^(n+k).x`` for the magic lines;
3. a one-hot decoder over the selector bits and an AND/OR multiplexer.

With no T gates the netlist is just stage 1 for the single support string.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import sv
from .bcir import BoolCircuit, Builder, depth, depth_from
from .f2 import F2Matrix, F2Vector, rank, rref, span
from .qcir import CircuitError, Gate, QuantumCircuit, canonicalize, circuit_depth
from .tableau import a_vectors, clifford_support_string


class CompileError(ValueError):
    pass


class EmptySupport(RuntimeError):
    pass


def gadgetize(qc: QuantumCircuit) -> QuantumCircuit:
    """Replace the k-th T on line q by ``CX(q, magic_k)``, magic_k post-selected to 0."""
    if any(g.kind == "Tdg" for g in qc.gates):
        raise CircuitError("gadgetize expects a canonicalized circuit (no Tdg)")
    t = qc.t_count
    if t == 0:
        return qc
    first = qc.n_qubits
    gates: list[Gate] = []
    k = 0
    for g in qc.gates:
        if g.kind == "T":
            gates.append(Gate("CX", (g.qubits[0], first + k)))
            k += 1
        else:
            gates.append(g)
    return QuantumCircuit(first + t, tuple(gates), n_inputs=qc.n_inputs, n_advice=qc.n_advice,
                          n_magic=qc.n_magic + t, measured=qc.measured,
                          postselect=qc.postselect + tuple((first + i, 0) for i in range(t)))


def z_string(j: int, t: int) -> str:
    """Selector bits for decoder index ``j``: character k is bit k of ``j``."""
    return "".join(str((j >> k) & 1) for k in range(t))


def precompute_supports(qcg: QuantumCircuit, tol: float = sv.DEFAULT_TOL) -> dict[str, str]:
    """Map each magic outcome ``z`` to the smallest possible measured string of ``psi_z``."""
    magic = qcg.magic_lines
    t = len(magic)
    base = tuple(p for p in qcg.postselect if p[0] not in magic)
    states = sv.simulate_batch(qcg, np.zeros((1, qcg.n_inputs), dtype=np.uint8))
    m = len(qcg.measured)
    out = {}
    for j in range(1 << t):
        z = z_string(j, t)
        view = qcg.replace(postselect=base + tuple(zip(magic, map(int, z))))
        hits = np.flatnonzero(sv.measured_support_mask(states, view, tol)[0])
        if hits.size == 0:
            raise EmptySupport(f"post-selected state for z={z} is numerically zero")
        out[z] = format(int(hits[0]), f"0{m}b") if m else ""
    return out


def image_enumerate(S: F2Matrix) -> list[tuple[F2Vector, F2Vector]]:
    """Every distinct ``S x`` with one preimage ``x``, sorted by little-endian value."""
    St = S.transpose()
    _, pivots = rref(S)
    cols = [St.row(c) for c in pivots]
    wits = [F2Vector.unit(S.cols, c) for c in pivots]
    pairs = list(zip(span(cols, S.rows), span(wits, S.cols)))
    return sorted(pairs, key=lambda p: p[0].to_int())


@dataclass
class DepthReport:
    n: int
    t: int
    d: int
    rank_s: int
    max_weight: int
    stage1: int
    stage2: int
    stage3: int
    total: int
    gates: int
    mux_leaves: int
    rank_refine: bool

    @property
    def bound(self) -> int:
        """Explicit-constant form of the O(d + t) depth bound."""
        return (3 * _clog2(max(self.max_weight, 1)) + _clog2(max(self.t, 1)) + self.t + 3)

    def lines(self) -> list[str]:
        return [f"n {self.n}", f"t {self.t}", f"d {self.d}", f"rank_S {self.rank_s}",
                f"max_weight {self.max_weight}", f"stage1_depth {self.stage1}",
                f"stage2_depth {self.stage2}", f"stage3_depth {self.stage3}",
                f"total_depth {self.total}", f"depth_bound {self.bound}",
                f"gate_count {self.gates}", f"mux_leaves {self.mux_leaves}",
                f"rank_refine {int(self.rank_refine)}"]

    def __str__(self) -> str:
        return "\n".join(self.lines()) + "\n"


@dataclass
class CompilationArtifacts:
    circuit: QuantumCircuit
    gadgetized: QuantumCircuit
    a_table: F2Matrix
    S: F2Matrix
    supports: dict[str, str]
    netlist: BoolCircuit
    report: DepthReport
    selectors: list[str] = field(default_factory=list)


def _clog2(v: int) -> int:
    return math.ceil(math.log2(v)) if v > 1 else 0


def compile_circuit(qc: QuantumCircuit, rank_refine: bool = False,
                    tol: float = sv.DEFAULT_TOL) -> CompilationArtifacts:
    if qc.postselect or qc.n_magic:
        raise CompileError("input circuit must not carry magic lines or post-selection")
    d = circuit_depth(qc)
    qcg = gadgetize(canonicalize(qc))
    t = qcg.n_magic
    n = qc.n_inputs
    table = a_vectors(qcg)
    magic = qcg.magic_lines
    S = table.submatrix(magic[0], magic[-1] + 1) if t else F2Matrix.zeros(0, n)
    if t == 0:
        supports = {"": clifford_support_string(qcg)}
    else:
        supports = precompute_supports(qcg, tol)

    if t and rank_refine:
        selectors = [str(z) for z, _ in image_enumerate(S)]
    else:
        selectors = [z_string(j, t) for j in range(1 << t)]

    bld = Builder(n)
    parities = [bld.build_parity(table.row(q)) for q in qc.measured]
    bundles = [[bld.not_(p) if s == "1" else p for p, s in zip(parities, supports[z])]
               for z in selectors]
    z_nodes = [bld.build_parity(table.row(q)) for q in magic]
    stage3_start = len(bld)
    if len(bundles) == 1:
        outputs = bundles[0]
    else:
        f = [bld.build_decoder(z_nodes, int(z[::-1], 2)) for z in selectors]
        outputs = bld.build_mux(bundles, f)
    netlist = bld.finish(outputs)

    levels = netlist.levels
    weights = [table.row(i).weight() for i in range(table.rows)]
    report = DepthReport(
        n=n, t=t, d=d, rank_s=rank(S) if t else 0, max_weight=max(weights, default=0),
        stage1=int(max((levels[c] for b in bundles for c in b), default=0)),
        stage2=int(max((levels[z] for z in z_nodes), default=0)),
        stage3=depth_from(netlist, stage3_start) if len(bundles) > 1 else 0,
        total=depth(netlist), gates=netlist.gate_count(), mux_leaves=len(bundles),
        rank_refine=rank_refine)
    return CompilationArtifacts(qc, qcg, table, S, supports, netlist, report, selectors)
