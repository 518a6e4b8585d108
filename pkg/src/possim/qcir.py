"""Quantum circuit IR over {H, S, Sdg, X, Y, Z, CX, CZ, T, Tdg}.

Line layout is fixed: the first ``n_inputs`` lines carry the variable input
``x``, then ``n_advice`` all-zero advice lines, then ``n_magic`` lines
prepared in the magic state (only produced by gadgetizing T gates).

Text format, one directive per line, ``#`` starts a comment::

    qubits 3
    inputs 2
    h 0
    t 1
    cx 0 1

Beyond ``qubits``/``inputs``/``advice`` the header may carry ``magic <k>``,
``measure <q> ...`` and ``postselect <q> <bit>``; they are emitted only when
they differ from the defaults, so plain files round-trip unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

ONE_QUBIT = ("H", "S", "Sdg", "X", "Y", "Z", "T", "Tdg")
TWO_QUBIT = ("CX", "CZ")
CLIFFORD = ("H", "S", "Sdg", "X", "Y", "Z", "CX", "CZ")

_MNEMONIC = {k.lower(): k for k in ONE_QUBIT + TWO_QUBIT}


class CircuitError(ValueError):
    pass


class ParseError(CircuitError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in _MNEMONIC.values():
            raise CircuitError(f"unknown gate kind {self.kind!r}")
        arity = 2 if self.kind in TWO_QUBIT else 1
        if len(self.qubits) != arity:
            raise CircuitError(f"{self.kind} takes {arity} qubit(s), got {len(self.qubits)}")
        if arity == 2 and self.qubits[0] == self.qubits[1]:
            raise CircuitError(f"{self.kind} on repeated qubit {self.qubits[0]}")
        if any(q < 0 for q in self.qubits):
            raise CircuitError("negative qubit index")

    def __str__(self) -> str:
        return " ".join([self.kind.lower(), *map(str, self.qubits)])


def gate(kind: str, *qubits: int) -> Gate:
    return Gate(_MNEMONIC.get(kind.lower(), kind), tuple(int(q) for q in qubits))


@dataclass(frozen=True)
class QuantumCircuit:
    n_qubits: int
    gates: tuple[Gate, ...] = ()
    n_inputs: int | None = None
    n_advice: int = 0
    n_magic: int = 0
    postselect: tuple[tuple[int, int], ...] = ()
    measured: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.n_qubits < 0:
            raise CircuitError("negative width")
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.n_inputs is None:
            object.__setattr__(self, "n_inputs", self.n_qubits - self.n_advice - self.n_magic)
        if min(self.n_inputs, self.n_advice, self.n_magic) < 0 or \
                self.n_inputs + self.n_advice + self.n_magic != self.n_qubits:
            raise CircuitError(
                f"inputs {self.n_inputs} + advice {self.n_advice} + magic {self.n_magic}"
                f" != qubits {self.n_qubits}")
        if self.measured is None:
            object.__setattr__(self, "measured", tuple(range(self.n_inputs)))
        object.__setattr__(self, "measured", tuple(int(q) for q in self.measured))
        object.__setattr__(self, "postselect", tuple((int(q), int(b)) for q, b in self.postselect))
        for g in self.gates:
            if max(g.qubits) >= self.n_qubits:
                raise CircuitError(f"gate '{g}' out of range for {self.n_qubits} qubits")
        lines = [q for q, _ in self.postselect] + list(self.measured)
        if any(not 0 <= q < self.n_qubits for q in lines):
            raise CircuitError("measured/postselect line out of range")
        if len(set(self.measured)) != len(self.measured):
            raise CircuitError("repeated measured line")
        ps = [q for q, _ in self.postselect]
        if len(set(ps)) != len(ps) or set(ps) & set(self.measured):
            raise CircuitError("postselect lines must be distinct and disjoint from measured lines")
        if any(b not in (0, 1) for _, b in self.postselect):
            raise CircuitError("postselect value must be 0 or 1")

    @classmethod
    def from_gates(cls, n_qubits: int, gates: Iterable, **kw) -> "QuantumCircuit":
        gs = [g if isinstance(g, Gate) else gate(*g) for g in gates]
        return cls(n_qubits, tuple(gs), **kw)

    @property
    def magic_lines(self) -> tuple[int, ...]:
        return tuple(range(self.n_qubits - self.n_magic, self.n_qubits))

    @property
    def t_count(self) -> int:
        return sum(g.kind in ("T", "Tdg") for g in self.gates)

    def is_clifford(self) -> bool:
        return all(g.kind in CLIFFORD for g in self.gates)

    def replace(self, **kw) -> "QuantumCircuit":
        fields = dict(n_qubits=self.n_qubits, gates=self.gates, n_inputs=self.n_inputs,
                      n_advice=self.n_advice, n_magic=self.n_magic,
                      postselect=self.postselect, measured=self.measured)
        fields.update(kw)
        return QuantumCircuit(**fields)

    def __add__(self, other: "QuantumCircuit") -> "QuantumCircuit":
        if other.n_qubits != self.n_qubits:
            raise CircuitError("width mismatch")
        return self.replace(gates=self.gates + other.gates)

    def __len__(self) -> int:
        return len(self.gates)

    def __str__(self) -> str:
        return serialize_circuit(self)


def parse_circuit(text: str) -> QuantumCircuit:
    header: dict[str, object] = {}
    measured = None
    postselect: list[tuple[int, int]] = []
    gates: list[Gate] = []
    n = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        op, *args = line.split()
        op = op.lower()
        try:
            vals = [int(a) for a in args]
        except ValueError:
            raise ParseError(lineno, f"non-integer argument in '{line}'") from None
        if n is None:
            if op != "qubits":
                raise ParseError(lineno, "missing 'qubits <N>' header")
            if len(vals) != 1 or vals[0] < 0:
                raise ParseError(lineno, "'qubits' takes one non-negative integer")
            n = vals[0]
            continue
        if op in ("inputs", "advice", "magic"):
            if gates:
                raise ParseError(lineno, f"'{op}' after the first gate")
            if len(vals) != 1 or vals[0] < 0:
                raise ParseError(lineno, f"'{op}' takes one non-negative integer")
            if op in header:
                raise ParseError(lineno, f"duplicate '{op}'")
            header[op] = vals[0]
        elif op == "measure":
            if gates or measured is not None:
                raise ParseError(lineno, "'measure' must appear once, before gates")
            measured = tuple(vals)
        elif op == "postselect":
            if gates:
                raise ParseError(lineno, "'postselect' after the first gate")
            if len(vals) != 2:
                raise ParseError(lineno, "'postselect' takes <line> <bit>")
            postselect.append((vals[0], vals[1]))
        elif op in _MNEMONIC:
            kind = _MNEMONIC[op]
            arity = 2 if kind in TWO_QUBIT else 1
            if len(vals) != arity:
                raise ParseError(lineno, f"'{op}' takes {arity} qubit index(es)")
            if any(not 0 <= q < n for q in vals):
                raise ParseError(lineno, f"qubit index out of range in '{line}' (width {n})")
            if arity == 2 and vals[0] == vals[1]:
                raise ParseError(lineno, f"repeated qubit in '{line}'")
            gates.append(Gate(kind, tuple(vals)))
        else:
            raise ParseError(lineno, f"unknown mnemonic '{op}'")
    if n is None:
        raise ParseError(0, "missing 'qubits <N>' header")
    advice = header.get("advice")
    magic = header.get("magic", 0)
    inputs = header.get("inputs")
    if advice is None:
        advice = n - magic - (inputs if inputs is not None else n - magic)
    try:
        return QuantumCircuit(n, tuple(gates), n_inputs=inputs, n_advice=advice, n_magic=magic,
                              postselect=tuple(postselect), measured=measured)
    except CircuitError as e:
        raise ParseError(0, str(e)) from None


def serialize_circuit(qc: QuantumCircuit) -> str:
    out = [f"qubits {qc.n_qubits}"]
    if qc.n_inputs != qc.n_qubits:
        out.append(f"inputs {qc.n_inputs}")
    if qc.n_advice:
        out.append(f"advice {qc.n_advice}")
    if qc.n_magic:
        out.append(f"magic {qc.n_magic}")
    if qc.measured != tuple(range(qc.n_inputs)):
        out.append(" ".join(["measure", *map(str, qc.measured)]))
    out += [f"postselect {q} {b}" for q, b in qc.postselect]
    out += [str(g) for g in qc.gates]
    return "\n".join(out) + "\n"


def circuit_depth(qc: QuantumCircuit) -> int:
    """ASAP layering: each gate lands one layer after the latest gate sharing a qubit."""
    level = [0] * qc.n_qubits
    for g in qc.gates:
        d = max(level[q] for q in g.qubits) + 1
        for q in g.qubits:
            level[q] = d
    return max(level, default=0)


def canonicalize(qc: QuantumCircuit) -> QuantumCircuit:
    """Rewrite Tdg -> (Sdg, T) and Y -> (Z, X); equal up to global phase."""
    out: list[Gate] = []
    for g in qc.gates:
        if g.kind == "Tdg":
            out += [Gate("Sdg", g.qubits), Gate("T", g.qubits)]
        elif g.kind == "Y":
            out += [Gate("Z", g.qubits), Gate("X", g.qubits)]
        else:
            out.append(g)
    return qc.replace(gates=tuple(out))


def random_circuit(rng: np.random.Generator, n_qubits: int, depth: int, t: int = 0,
                   one_qubit: Sequence[str] = ("H", "S", "Sdg", "X", "Y", "Z"),
                   two_qubit: Sequence[str] = TWO_QUBIT, idle: float = 0.2,
                   allow_tdg: bool = True, **kw) -> QuantumCircuit:
    """Layered random circuit with exactly ``t`` T/Tdg gates and depth <= ``depth``.

    Each layer pairs a random subset of qubits into two-qubit gates and fills
    the rest with one-qubit gates (or idles). T gates replace randomly chosen
    one-qubit slots; layers are redrawn until there are enough slots.
    """
    if t > depth * n_qubits:
        raise ValueError(f"depth {depth} on {n_qubits} qubits cannot hold {t} T gates")
    while True:
        layers, slots = _random_layers(rng, n_qubits, depth, one_qubit, two_qubit, idle)
        if len(slots) >= t:
            break
    for k in rng.choice(len(slots), size=t, replace=False):
        li, gi = slots[int(k)]
        kind = "Tdg" if allow_tdg and rng.random() < 0.5 else "T"
        layers[li][gi] = Gate(kind, layers[li][gi].qubits)
    return QuantumCircuit(n_qubits, tuple(g for layer in layers for g in layer), **kw)


def _random_layers(rng, n_qubits, depth, one_qubit, two_qubit, idle):
    layers: list[list[Gate]] = []
    slots: list[tuple[int, int]] = []
    for _ in range(depth):
        perm = [int(q) for q in rng.permutation(n_qubits)]
        layer: list[Gate] = []
        i = 0
        while i < len(perm):
            if two_qubit and i + 1 < len(perm) and rng.random() < 0.4:
                kind = two_qubit[rng.integers(len(two_qubit))]
                layer.append(Gate(kind, (perm[i], perm[i + 1])))
                i += 2
                continue
            if rng.random() >= idle:
                slots.append((len(layers), len(layer)))
                layer.append(Gate(one_qubit[rng.integers(len(one_qubit))], (perm[i],)))
            i += 1
        layers.append(layer)
    return layers, slots
