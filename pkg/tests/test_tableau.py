import itertools

import numpy as np
import pytest

from oracles import circuit_unitary
from possim import sv
from possim.qcir import QuantumCircuit, random_circuit
from possim.tableau import (NonCliffordError, PauliString, PostselectImpossible, a_vectors,
                            clifford_support_string, conjugate_pauli, conjugate_paulis,
                            propagate_frame)


def circ(n, *gates):
    return QuantumCircuit.from_gates(n, gates)


def conj(qc, s):
    return str(conjugate_pauli(qc, PauliString.from_str(s)))


# conjugation U P U^dagger for H, S and CX (control 0)
GENERATOR_CASES = [
    (circ(1, ("h", 0)), "X", "+Z"), (circ(1, ("h", 0)), "Y", "-Y"), (circ(1, ("h", 0)), "Z", "+X"),
    (circ(1, ("s", 0)), "X", "+Y"), (circ(1, ("s", 0)), "Y", "-X"), (circ(1, ("s", 0)), "Z", "+Z"),
    (circ(2, ("cx", 0, 1)), "XI", "+XX"), (circ(2, ("cx", 0, 1)), "YI", "+YX"),
    (circ(2, ("cx", 0, 1)), "ZI", "+ZI"), (circ(2, ("cx", 0, 1)), "IX", "+IX"),
    (circ(2, ("cx", 0, 1)), "IY", "+ZY"), (circ(2, ("cx", 0, 1)), "IZ", "+ZZ"),
]


@pytest.mark.parametrize("qc,p,want", GENERATOR_CASES)
def test_generator_conjugation(backend, qc, p, want):
    assert conj(qc, p) == want


def _dense_conj(qc, P):
    U = circuit_unitary(qc)
    return U @ P.to_matrix() @ U.conj().T


def _all_paulis(n):
    for phase in range(4):
        for letters in itertools.product("IXYZ", repeat=n):
            yield PauliString.from_str(("", "i", "-", "-i")[phase] + "".join(letters))


@pytest.mark.parametrize("kind", ["H", "S", "Sdg", "X", "Y", "Z"])
def test_single_qubit_gates_match_dense(backend, kind):
    qc = QuantumCircuit.from_gates(1, [(kind, 0)])
    for P in _all_paulis(1):
        assert np.allclose(conjugate_pauli(qc, P).to_matrix(), _dense_conj(qc, P), atol=1e-12)


@pytest.mark.parametrize("kind,qubits", [("CX", (0, 1)), ("CX", (1, 0)), ("CZ", (0, 1))])
def test_two_qubit_gates_match_dense(backend, kind, qubits):
    qc = QuantumCircuit.from_gates(2, [(kind, *qubits)])
    for P in _all_paulis(2):
        assert np.allclose(conjugate_pauli(qc, P).to_matrix(), _dense_conj(qc, P), atol=1e-12)


def test_random_clifford_words_match_dense(backend):
    rng = np.random.default_rng(0)
    for _ in range(1000):
        qc = random_circuit(rng, 3, int(rng.integers(1, 8)))
        P = PauliString.from_str(("", "-")[rng.integers(2)] + "".join(rng.choice(list("IXYZ"), 3)))
        got = conjugate_pauli(qc, P)
        assert np.allclose(got.to_matrix(), _dense_conj(qc, P), atol=1e-10)


def test_group_action(backend):
    rng = np.random.default_rng(1)
    for _ in range(100):
        q1, q2 = random_circuit(rng, 4, 4), random_circuit(rng, 4, 4)
        P = PauliString.from_str("".join(rng.choice(list("IXYZ"), 4)))
        assert conjugate_pauli(q2, conjugate_pauli(q1, P)) == conjugate_pauli(q1 + q2, P)


def test_non_clifford_rejected():
    with pytest.raises(NonCliffordError):
        conj(circ(1, ("t", 0)), "X")


def test_a_vectors_identity():
    assert [str(r) for r in a_vectors(QuantumCircuit(2)).row_list()] == ["10", "01"]


def test_a_vectors_h_t_cx_gadget():
    qcg = QuantumCircuit.from_gates(3, [("h", 0), ("cx", 1, 2), ("cx", 0, 1)], n_magic=1,
                                    postselect=((2, 0),))
    assert [str(r) for r in a_vectors(qcg).row_list()] == ["00", "01", "01"]


def test_a_vectors_cx():
    # brute force: CX X_0 CX = X_0 X_1, CX X_1 CX = X_1
    assert [str(r) for r in a_vectors(circ(2, ("cx", 0, 1))).row_list()] == ["10", "11"]


def test_a_vectors_match_dense_flip_pattern():
    # a^(j)_i = 1 iff U X_i U^dagger carries X or Y on line j
    rng = np.random.default_rng(2)
    for _ in range(50):
        qc = random_circuit(rng, 3, 5)
        table = a_vectors(qc).to_array()
        for i in range(3):
            X_i = PauliString.single(3, i, "X")
            target = _dense_conj(qc, X_i)
            matches = [P for P in _all_paulis(3) if np.allclose(P.to_matrix(), target)]
            assert len(matches) == 1
            letters = matches[0].letters()
            assert [int(c in "XY") for c in letters] == list(table[:, i])


def test_lightcone_bound_on_random_circuits():
    rng = np.random.default_rng(3)
    from possim.qcir import circuit_depth
    for _ in range(200):
        n = int(rng.integers(2, 10))
        qc = random_circuit(rng, n, int(rng.integers(1, 7)))
        d = circuit_depth(qc)
        table = a_vectors(qc)
        assert all(r.weight() <= 2 ** d for r in table.row_list())


def test_support_string_examples(backend):
    assert clifford_support_string(circ(1, ("x", 0))) == "1"
    assert clifford_support_string(circ(2, ("h", 0), ("h", 1))) == "00"
    assert clifford_support_string(circ(2, ("h", 0), ("cx", 0, 1))) == "00"


def test_support_string_with_postselection(backend):
    bell = QuantumCircuit.from_gates(2, [("h", 0), ("cx", 0, 1)], n_inputs=1, n_advice=1,
                                     measured=(0,), postselect=((1, 1),))
    assert clifford_support_string(bell) == "1"
    flipped = QuantumCircuit.from_gates(2, [("x", 1)], n_inputs=1, n_advice=1,
                                        measured=(0,), postselect=((1, 0),))
    with pytest.raises(PostselectImpossible):
        clifford_support_string(flipped)


def test_support_string_lies_in_statevector_support(backend):
    rng = np.random.default_rng(4)
    for _ in range(150):
        n = int(rng.integers(1, 11))
        qc = random_circuit(rng, n, int(rng.integers(1, 8)))
        s = clifford_support_string(qc)
        supp = sv.support(sv.simulate(qc, "0" * n))
        assert s in supp
        assert s == min(supp)


def test_frame_kernels_agree():
    rng = np.random.default_rng(5)
    for _ in range(50):
        N = int(rng.integers(2, 12))
        qc = random_circuit(rng, N, 6)
        P = int(rng.integers(1, 150))
        xs = rng.integers(0, 2, size=(P, N)).astype(np.uint8)
        zs = rng.integers(0, 2, size=(P, N)).astype(np.uint8)
        from possim import _jit
        with _jit.using("numba"):
            a = propagate_frame(qc, xs, zs)
        with _jit.using("numpy"):
            b = propagate_frame(qc, xs, zs)
        for u, v in zip(a, b):
            assert np.array_equal(u, v)


def test_batch_matches_single(backend):
    rng = np.random.default_rng(6)
    qc = random_circuit(rng, 5, 6)
    ps = [PauliString.from_str("".join(rng.choice(list("IXYZ"), 5))) for _ in range(70)]
    assert conjugate_paulis(qc, ps) == [conjugate_pauli(qc, p) for p in ps]
