"""Possibilistic simulation of Clifford+T circuits by classical boolean circuits."""
from ._jit import backend, set_backend, using
from .bcir import BoolCircuit, Builder, depth, evaluate, evaluate_batch, parse_netlist, serialize_netlist
from .compiler import CompilationArtifacts, compile_circuit, gadgetize, image_enumerate, precompute_supports
from .f2 import F2Matrix, F2Vector, NoSolution, kernel_basis, matvec, rank, solve
from .hlf import HlfInstance, HlfSolution, gen_grid, gen_random, quadratic_form, solve_hlf, verify_hlf
from .qcir import Gate, QuantumCircuit, canonicalize, circuit_depth, parse_circuit, serialize_circuit
from .sv import Statevector, post_select, relation, simulate, support
from .tableau import PauliString, a_vectors, clifford_support_string, conjugate_pauli
from .verify import verify_netlist

__version__ = "0.1.0"
