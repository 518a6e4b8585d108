import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from oracles import kernel_bruteforce, span_set
from possim import _jit
from possim.f2 import F2Matrix, F2Vector, NoSolution, kernel_basis, matvec, rank, solve, span
from possim.kernels import f2 as kf2


def M(*rows):
    return F2Matrix.from_rows(list(rows))


def V(s):
    return F2Vector.from_str(s)


def bit_matrices(max_rows=12, max_cols=12):
    return st.tuples(st.integers(1, max_rows), st.integers(1, max_cols)).flatmap(
        lambda rc: arrays(np.uint8, rc, elements=st.integers(0, 1)))


class TestVector:
    def test_string_round_trip(self):
        assert str(V("0110")) == "0110"
        assert V("10")[0] == 1 and V("10")[1] == 0

    def test_tail_bits_are_cleared(self):
        v = F2Vector(3, np.array([0xFF], dtype=np.uint64))
        assert v.to_int() == 0b111
        assert v == V("111")

    def test_multiword(self):
        v = F2Vector.unit(130, 129) ^ F2Vector.unit(130, 0)
        assert v.weight() == 2
        assert v.support() == [0, 129]
        assert v.dot(F2Vector.unit(130, 129)) == 1

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            V("10") ^ V("101")


class TestExamples:
    def test_kernel_of_identity_is_trivial(self, backend):
        assert kernel_basis(F2Matrix.identity(2)) == []

    def test_kernel_of_zero_is_canonical_basis(self, backend):
        assert kernel_basis(F2Matrix.zeros(2, 2)) == [V("10"), V("01")]

    def test_kernel_of_all_ones(self, backend):
        # enumeration of F2^2: only 00 and 11 satisfy Av = 0
        assert kernel_basis(M("11", "11")) == [V("11")]

    def test_solve_identity(self, backend):
        assert solve(F2Matrix.identity(2), V("10")) == V("10")

    def test_solve_underdetermined_sets_free_vars_to_zero(self, backend):
        # solutions of z0 + z1 = 1 are 10 and 01; free var z1 = 0 picks 10
        assert solve(M("11"), V("1")) == V("10")

    def test_solve_inconsistent(self, backend):
        with pytest.raises(NoSolution):
            solve(M("10", "10"), V("10"))

    def test_rank(self, backend):
        assert rank(F2Matrix.identity(3)) == 3
        assert rank(F2Matrix.zeros(3, 4)) == 0
        assert rank(M("11", "11")) == 1

    def test_matvec(self, backend):
        assert matvec(F2Matrix.identity(4), V("1011")) == V("1011")
        assert matvec(M("11", "11"), V("11")) == V("00")
        assert matvec(M("10", "01", "11"), V("10")) == V("101")

    def test_shape_errors(self):
        with pytest.raises(ValueError):
            matvec(M("10"), V("101"))
        with pytest.raises(ValueError):
            solve(M("10"), V("11"))


@settings(max_examples=150, deadline=None)
@given(bit_matrices())
def test_kernel_basis_spans_the_kernel(A):
    basis = kernel_basis(F2Matrix.from_array(A))
    assert len(basis) == A.shape[1] - rank(F2Matrix.from_array(A))
    for v in basis:
        assert not np.any((A.astype(int) @ v.bits()) % 2)
    if A.shape[1] <= 10:
        assert span_set([v.bits() for v in basis], A.shape[1]) == kernel_bruteforce(A.astype(int))


@settings(max_examples=150, deadline=None)
@given(bit_matrices(), st.data())
def test_solve_consistent_systems(E, data):
    z0 = data.draw(arrays(np.uint8, E.shape[1], elements=st.integers(0, 1)))
    Em = F2Matrix.from_array(E)
    c = F2Vector.from_bits((E.astype(int) @ z0) % 2)
    z = solve(Em, c)
    assert matvec(Em, z) == c


@settings(max_examples=50, deadline=None)
@given(bit_matrices())
def test_kernel_basis_is_deterministic(A):
    assert kernel_basis(F2Matrix.from_array(A)) == kernel_basis(F2Matrix.from_array(A.copy()))


def test_matvec_matches_naive_loop(backend):
    rng = np.random.default_rng(7)
    for _ in range(1000):
        r, c = rng.integers(1, 20, size=2)
        A = rng.integers(0, 2, size=(r, c))
        x = rng.integers(0, 2, size=c)
        naive = [sum(int(A[i, j]) * int(x[j]) for j in range(c)) % 2 for i in range(r)]
        got = matvec(F2Matrix.from_array(A), F2Vector.from_bits(x))
        assert list(got) == naive


def test_wide_matrices_cross_word_boundaries(backend):
    rng = np.random.default_rng(3)
    A = rng.integers(0, 2, size=(70, 150)).astype(np.uint8)
    Am = F2Matrix.from_array(A)
    basis = kernel_basis(Am)
    assert len(basis) == 150 - rank(Am)
    for v in basis:
        assert matvec(Am, v).weight() == 0


def test_rref_kernels_agree():
    rng = np.random.default_rng(11)
    for _ in range(200):
        r, c = rng.integers(1, 90, size=2)
        data = kf2.pack_rows(rng.integers(0, 2, size=(r, c)).astype(np.uint8), c)
        d1, d2 = data.copy(), data.copy()
        p1 = kf2.rref_jit(d1, c)
        p2 = kf2.rref_np(d2, c)
        assert np.array_equal(p1, p2)
        assert np.array_equal(d1, d2)


def test_span_enumerates_every_combination():
    basis = [V("1100"), V("0110")]
    assert {str(v) for v in span(basis, 4)} == {"0000", "1100", "0110", "1010"}
    assert [str(v) for v in span([], 3)] == ["000"]


def test_transpose_and_array_round_trip():
    A = np.array([[1, 0, 1], [0, 1, 1]], dtype=np.uint8)
    m = F2Matrix.from_array(A)
    assert np.array_equal(m.to_array(), A)
    assert np.array_equal(m.transpose().to_array(), A.T)
