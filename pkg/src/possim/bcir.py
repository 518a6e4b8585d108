"""Boolean netlists over {NOT, AND, OR} with fan-in <= 2.

Nodes are numbered in creation order and operands always point backwards,
so a netlist is acyclic by construction. Depth counts gate nodes on the
longest input-to-output path; inputs and constants cost nothing.

Text format::

    inputs 2
    outputs 4
    0 INPUT 0
    1 INPUT 1
    2 OR 0 1
    3 AND 0 1
    4 NOT 3
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .f2 import F2Vector
from .kernels import f2 as _kf2
from .kernels import netlist as _k
from .kernels.netlist import AND, CONST, INPUT, NOT, OR

KIND_NAMES = {INPUT: "INPUT", CONST: "CONST", NOT: "NOT", AND: "AND", OR: "OR"}
_KIND_CODES = {v: k for k, v in KIND_NAMES.items()}


class NetlistError(ValueError):
    pass


class NetlistParseError(NetlistError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


class WidthError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class BoolCircuit:
    n_inputs: int
    kind: np.ndarray
    a: np.ndarray
    b: np.ndarray
    outputs: tuple[int, ...]

    def __post_init__(self):
        for arr in (self.kind, self.a, self.b):
            arr.flags.writeable = False
        validate(self)

    @property
    def n_nodes(self) -> int:
        return int(self.kind.shape[0])

    @cached_property
    def levels(self) -> np.ndarray:
        return _k.levels(self.kind, self.a, self.b)

    def gate_count(self) -> int:
        return int(np.count_nonzero(self.kind >= NOT))

    def count(self, kind: str) -> int:
        return int(np.count_nonzero(self.kind == _KIND_CODES[kind]))

    def node(self, i: int) -> tuple:
        k = int(self.kind[i])
        if k in (INPUT, CONST, NOT):
            return KIND_NAMES[k], int(self.a[i])
        return KIND_NAMES[k], int(self.a[i]), int(self.b[i])

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoolCircuit):
            return NotImplemented
        return (self.n_inputs == other.n_inputs and self.outputs == other.outputs
                and all(np.array_equal(u, v) for u, v in
                        ((self.kind, other.kind), (self.a, other.a), (self.b, other.b))))

    __hash__ = None

    def __str__(self) -> str:
        return serialize_netlist(self)


def validate(bc: BoolCircuit) -> None:
    """Structural checks: operand ranges, backward edges, fan-in, outputs."""
    n = bc.n_nodes
    if not (bc.a.shape == bc.b.shape == (n,)):
        raise NetlistError("node arrays differ in length")
    ids = np.arange(n)
    k = bc.kind
    if np.any((k < INPUT) | (k > OR)):
        raise NetlistError("unknown node kind")
    src = k == INPUT
    if np.any((bc.a[src] < 0) | (bc.a[src] >= bc.n_inputs)):
        raise NetlistError("input index out of range")
    if np.any((bc.a[k == CONST] < 0) | (bc.a[k == CONST] > 1)):
        raise NetlistError("constant must be 0 or 1")
    gates = k >= NOT
    if np.any((bc.a[gates] < 0) | (bc.a[gates] >= ids[gates])):
        raise NetlistError("operand must reference an earlier node")
    two = k >= AND
    if np.any((bc.b[two] < 0) | (bc.b[two] >= ids[two])):
        raise NetlistError("operand must reference an earlier node")
    if any(not 0 <= o < n for o in bc.outputs):
        raise NetlistError("output references a missing node")


class Builder:
    """Incremental netlist construction with constant folding and node sharing."""

    def __init__(self, n_inputs: int):
        self.n_inputs = n_inputs
        self._kind: list[int] = []
        self._a: list[int] = []
        self._b: list[int] = []
        self._memo: dict[tuple[int, int, int], int] = {}

    def __len__(self) -> int:
        return len(self._kind)

    def _add(self, kind: int, a: int, b: int = -1) -> int:
        if kind in (AND, OR) and a > b:
            a, b = b, a
        key = (kind, a, b)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        self._kind.append(kind)
        self._a.append(a)
        self._b.append(b)
        nid = len(self._kind) - 1
        self._memo[key] = nid
        return nid

    def const_value(self, nid: int) -> int | None:
        return self._a[nid] if self._kind[nid] == CONST else None

    def input(self, i: int) -> int:
        if not 0 <= i < self.n_inputs:
            raise IndexError(i)
        return self._add(INPUT, i)

    def const(self, bit: int) -> int:
        return self._add(CONST, int(bit) & 1)

    def not_(self, x: int) -> int:
        c = self.const_value(x)
        if c is not None:
            return self.const(1 - c)
        return self._add(NOT, x)

    def and_(self, x: int, y: int) -> int:
        cx, cy = self.const_value(x), self.const_value(y)
        if cx == 0 or cy == 0:
            return self.const(0)
        if cx == 1:
            return y
        if cy == 1:
            return x
        return self._add(AND, x, y)

    def or_(self, x: int, y: int) -> int:
        cx, cy = self.const_value(x), self.const_value(y)
        if cx == 1 or cy == 1:
            return self.const(1)
        if cx == 0:
            return y
        if cy == 0:
            return x
        return self._add(OR, x, y)

    def xor(self, x: int, y: int) -> int:
        """``(x or y) and not (x and y)``: four gates, depth 3."""
        cx, cy = self.const_value(x), self.const_value(y)
        if cx is not None:
            return self.not_(y) if cx else y
        if cy is not None:
            return self.not_(x) if cy else x
        return self.and_(self.or_(x, y), self.not_(self.and_(x, y)))

    def _tree(self, nodes: Sequence[int], op, empty: int) -> int:
        level = list(nodes)
        if not level:
            return self.const(empty)
        while len(level) > 1:
            nxt = [op(level[i], level[i + 1]) for i in range(0, len(level) - 1, 2)]
            if len(level) % 2:
                nxt.append(level[-1])
            level = nxt
        return level[0]

    def and_tree(self, nodes: Sequence[int]) -> int:
        return self._tree(nodes, self.and_, 1)

    def or_tree(self, nodes: Sequence[int]) -> int:
        return self._tree(nodes, self.or_, 0)

    def xor_tree(self, nodes: Sequence[int]) -> int:
        return self._tree(nodes, self.xor, 0)

    def build_parity(self, a: F2Vector) -> int:
        """Balanced XOR tree over the inputs selected by ``a``; depth <= 3*ceil(log2 |a|)."""
        if a.n != self.n_inputs:
            raise WidthError(f"parity vector has {a.n} bits, netlist has {self.n_inputs} inputs")
        return self.xor_tree([self.input(i) for i in a.support()])

    def build_decoder(self, z_nodes: Sequence[int], j: int) -> int:
        """1 iff the selector bits spell ``j``; ``z_nodes[k]`` is bit ``k`` of ``j``."""
        t = len(z_nodes)
        if not 0 <= j < (1 << t):
            raise ValueError(f"decoder index {j} out of range for {t} selector bits")
        lits = [z if (j >> k) & 1 else self.not_(z) for k, z in enumerate(z_nodes)]
        return self.and_tree(lits)

    def build_mux(self, candidates: Sequence[Sequence[int]], select: Sequence[int]) -> list[int]:
        """Per bit: OR over j of (candidate j AND select j)."""
        if len(candidates) != len(select):
            raise ValueError("one select line per candidate bundle")
        if not candidates:
            raise ValueError("mux needs at least one candidate")
        width = len(candidates[0])
        if any(len(c) != width for c in candidates):
            raise ValueError("candidate bundles differ in width")
        if len(candidates) == 1:
            return list(candidates[0])
        return [self.or_tree([self.and_(c[i], f) for c, f in zip(candidates, select)])
                for i in range(width)]

    def finish(self, outputs: Sequence[int]) -> BoolCircuit:
        return BoolCircuit(self.n_inputs, np.array(self._kind, dtype=np.int64),
                           np.array(self._a, dtype=np.int64), np.array(self._b, dtype=np.int64),
                           tuple(int(o) for o in outputs))


def depth(bc: BoolCircuit) -> int:
    if not bc.outputs:
        return 0
    return int(bc.levels[list(bc.outputs)].max())


def depth_from(bc: BoolCircuit, start: int) -> int:
    """Longest output path counting only gate nodes with id >= ``start``."""
    lev = np.zeros(bc.n_nodes, dtype=np.int64)
    kind, a, b = bc.kind, bc.a, bc.b
    for i in range(start, bc.n_nodes):
        if kind[i] == NOT:
            lev[i] = lev[a[i]] + 1
        elif kind[i] >= AND:
            lev[i] = max(lev[a[i]], lev[b[i]]) + 1
    return int(lev[list(bc.outputs)].max(initial=0))


def pack_inputs(xs: np.ndarray) -> np.ndarray:
    """``(batch, n)`` bits to ``(n, words)``: bit k of word w is row 64*w + k."""
    xs = np.asarray(xs, dtype=np.uint8)
    return _kf2.pack_rows(xs.T, xs.shape[0])


def evaluate_batch(bc: BoolCircuit, xs) -> np.ndarray:
    xs = np.atleast_2d(np.asarray(xs, dtype=np.uint8))
    if xs.shape[1] != bc.n_inputs:
        raise WidthError(f"inputs have {xs.shape[1]} bits, netlist expects {bc.n_inputs}")
    B = xs.shape[0]
    vals = _k.evaluate(bc.kind, bc.a, bc.b, np.ascontiguousarray(pack_inputs(xs)))
    outs = vals[list(bc.outputs)] if bc.outputs else np.zeros((0, vals.shape[1]), np.uint64)
    return _kf2.unpack_rows(outs, B).T.copy()


def evaluate(bc: BoolCircuit, x) -> str:
    if isinstance(x, str):
        x = [int(c) for c in x]
    x = np.asarray(list(x), dtype=np.uint8)
    if x.size != bc.n_inputs:
        raise WidthError(f"input has {x.size} bits, netlist expects {bc.n_inputs}")
    return "".join(str(int(v)) for v in evaluate_batch(bc, x[None, :])[0])


def serialize_netlist(bc: BoolCircuit) -> str:
    out = [f"inputs {bc.n_inputs}", " ".join(["outputs", *map(str, bc.outputs)])]
    for i in range(bc.n_nodes):
        out.append(" ".join([str(i), *map(str, bc.node(i))]))
    return "\n".join(out) + "\n"


def parse_netlist(text: str) -> BoolCircuit:
    n_inputs = None
    outputs = None
    ids: dict[int, int] = {}
    kind: list[int] = []
    a: list[int] = []
    b: list[int] = []
    raw_outputs: list[int] = []
    last = -1
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] == "inputs":
            if n_inputs is not None or len(tok) != 2:
                raise NetlistParseError(lineno, "expected a single 'inputs <n>' header")
            n_inputs = _int(tok[1], lineno)
            continue
        if tok[0] == "outputs":
            if outputs is not None:
                raise NetlistParseError(lineno, "duplicate 'outputs' header")
            outputs = [_int(t, lineno) for t in tok[1:]]
            continue
        if n_inputs is None or outputs is None:
            raise NetlistParseError(lineno, "'inputs' and 'outputs' headers must precede nodes")
        nid = _int(tok[0], lineno)
        if nid <= last:
            raise NetlistParseError(lineno, f"node id {nid} not strictly increasing")
        last = nid
        if len(tok) < 2 or tok[1] not in _KIND_CODES:
            raise NetlistParseError(lineno, f"unknown node kind in '{line}'")
        code = _KIND_CODES[tok[1]]
        args = [_int(t, lineno) for t in tok[2:]]
        arity = 2 if code in (AND, OR) else 1
        if len(args) != arity:
            raise NetlistParseError(lineno, f"{tok[1]} takes {arity} argument(s)")
        if code in (NOT, AND, OR):
            if any(x not in ids for x in args):
                raise NetlistParseError(lineno, "operand does not name an earlier node")
            args = [ids[x] for x in args]
        elif code == INPUT and not 0 <= args[0] < n_inputs:
            raise NetlistParseError(lineno, f"input index {args[0]} out of range")
        elif code == CONST and args[0] not in (0, 1):
            raise NetlistParseError(lineno, "constant must be 0 or 1")
        ids[nid] = len(kind)
        kind.append(code)
        a.append(args[0])
        b.append(args[1] if arity == 2 else -1)
    if n_inputs is None or outputs is None:
        raise NetlistParseError(0, "missing 'inputs'/'outputs' header")
    for o in outputs:
        if o not in ids:
            raise NetlistParseError(0, f"output {o} names no node")
        raw_outputs.append(ids[o])
    return BoolCircuit(n_inputs, np.array(kind, dtype=np.int64), np.array(a, dtype=np.int64),
                       np.array(b, dtype=np.int64), tuple(raw_outputs))


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise NetlistParseError(lineno, f"expected an integer, got {tok!r}") from None
