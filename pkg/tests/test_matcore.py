import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spdecomp import matcore as mc
from spdecomp.dihedral import dihedral_dense

from conftest import EXAMPLE_FILE, U12, U_EXAMPLE

I2 = np.eye(2)
Z = np.diag([1, -1])


def test_mat_mul_identity_and_dihedral_product():
    assert np.array_equal(mc.mat_mul(I2, I2), I2)
    # X Z
    assert np.array_equal(mc.mat_mul(dihedral_dense(2), dihedral_dense(4)), [[0, -1], [1, 0]])
    A = mc.haar_random(3, 11)
    assert np.array_equal(mc.mat_mul(A, np.eye(3)), A)


def test_mat_mul_dimension_mismatch():
    with pytest.raises(mc.DimensionError):
        mc.mat_mul(np.eye(2), np.eye(3))


def test_dagger():
    assert np.array_equal(mc.dagger(np.eye(3)), np.eye(3))
    assert np.array_equal(mc.dagger([[0, -1], [1, 0]]), [[0, 1], [-1, 0]])
    assert mc.dagger([[1j]])[0, 0] == -1j


def test_dagger_does_not_alias_input():
    A = np.array([[1, 2j], [3, 4]], dtype=complex)
    B = mc.dagger(A)
    B[0, 0] = 99
    assert A[0, 0] == 1


def test_trace():
    assert mc.trace(np.eye(4)) == 4
    # exact diagonal sum of the integer form: (8 - 2i + 6 + 9i) / 12
    diag = sum(U12[k, k] for k in range(4))
    assert diag == 14 + 7j
    assert abs(mc.trace(U_EXAMPLE) - (14 + 7j) / 12) < 1e-15
    assert mc.trace(dihedral_dense(2)) == 0


def _kron_oracle(A, B):
    A, B = np.asarray(A), np.asarray(B)
    n, m = A.shape[0], B.shape[0]
    out = np.zeros((n * m, n * m), dtype=complex)
    for i in range(n):
        for j in range(n):
            for k in range(m):
                for l in range(m):
                    out[i * m + k, j * m + l] = A[i, j] * B[k, l]
    return out


def test_kron():
    assert np.array_equal(mc.kron(I2, I2), np.eye(4))
    assert np.array_equal(mc.kron(Z, I2), np.diag([1, 1, -1, -1]))
    assert np.array_equal(_kron_oracle(Z, Z), np.diag([1, -1, -1, 1]))
    assert np.array_equal(mc.kron(Z, Z), np.diag([1, -1, -1, 1]))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32))
def test_kron_associative_on_integer_matrices(seed):
    rng = np.random.default_rng(seed)
    A, B, C = (rng.integers(-3, 4, (2, 2)) + 1j * rng.integers(-3, 4, (2, 2)) for _ in range(3))
    assert np.array_equal(mc.kron(mc.kron(A, B), C), mc.kron(A, mc.kron(B, C)))
    assert np.array_equal(mc.kron(A, B), _kron_oracle(A, B))


def test_hs_inner():
    assert mc.hs_inner(np.eye(4), np.eye(4)) == 4
    assert mc.hs_inner(np.eye(4), -np.eye(4)) == -4
    S30 = np.fliplr(np.diag([1, -1, -1, 1]))
    assert mc.hs_inner(np.eye(4), S30) == 0
    with pytest.raises(mc.DimensionError):
        mc.hs_inner(np.eye(2), np.eye(4))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([1, 2, 3, 4, 8]))
def test_hs_inner_self_is_frobenius(seed, n):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    v = mc.hs_inner(A, A)
    assert abs(v.imag) < 1e-12
    assert math.isclose(v.real, np.linalg.norm(A) ** 2, rel_tol=1e-12)
    U = mc.haar_random(n, seed)
    assert abs(mc.hs_inner(U, U) - n) < 1e-12


def test_is_unitary():
    assert mc.is_unitary(np.eye(8), 1e-10) == (True, 0.0)
    ok, res = mc.is_unitary(U_EXAMPLE, 1e-10)
    assert ok and res < 1e-15
    ok, res = mc.is_unitary(2 * np.eye(2), 1e-10)
    assert not ok and res == 3.0
    with pytest.raises(ValueError):
        mc.is_unitary(np.eye(2), 0)


def test_haar_small_cases():
    z = mc.haar_random(1, 5)
    assert z.shape == (1, 1) and abs(abs(z[0, 0]) - 1) < 1e-15
    assert np.array_equal(mc.haar_random(4, 42), mc.haar_random(4, 42))
    assert not np.array_equal(mc.haar_random(4, 42), mc.haar_random(4, 43))
    assert mc.is_unitary(mc.haar_random(8, 7), 1e-10)[0]


@pytest.mark.parametrize("n", [2, 4, 8, 16])
def test_haar_outputs_unitary(n):
    for seed in range(100):
        assert mc.is_unitary(mc.haar_random(n, seed), 1e-10)[0]


def test_haar_phase_distribution_is_not_biased():
    # Without the R-diagonal correction the diagonal of Q is biased toward
    # positive reals; for Haar it has mean 0.
    diag = np.array([mc.haar_random(2, s)[0, 0] for s in range(4000)])
    assert abs(np.mean(diag)) < 0.05


def test_digits_round_trip():
    assert mc.to_digits(6, 3) == (1, 1, 0)
    assert mc.from_digits((1, 1, 0)) == 6
    assert mc.to_digits(5, 2, 3) == (1, 2)
    for v in range(27):
        assert mc.from_digits(mc.to_digits(v, 3, 3), 3) == v
    with pytest.raises(ValueError):
        mc.to_digits(8, 3)
    with pytest.raises(ValueError):
        mc.from_digits((2,), 2)


def test_parse_example_file():
    U = mc.load_matrix(EXAMPLE_FILE)
    assert U[1, 1] == -2j / 12
    assert np.array_equal(U, U_EXAMPLE)


@settings(max_examples=50, deadline=None)
@given(
    st.lists(
        st.floats(allow_nan=False, allow_infinity=False, width=64),
        min_size=18,
        max_size=18,
    )
)
def test_round_trip_bit_exact(vals):
    A = np.array(vals[0::2], dtype=float) + 1j * np.array(vals[1::2], dtype=float)
    A = A.reshape(3, 3)
    B = mc.parse_matrix(mc.serialize_matrix(A))
    # identical bit patterns, signed zeros included
    assert A.view(np.uint64).tobytes() == B.view(np.uint64).tobytes()


@pytest.mark.parametrize(
    "doc",
    [
        '{"n": 4, "entries": [[[1,0],[0,0],[0,0],[0,0]],[[0,0],[1,0],[0,0],[0,0]],[[0,0],[0,0],[1,0],[0,0]]]}',
        '{"n": 0, "entries": []}',
        '{"n": -1, "entries": []}',
        '{"entries": [[[1, 0]]]}',
        '{"n": 1}',
        '{"n": 2, "entries": [[[1,0],[0,0]],[[0,0]]]}',
        '{"n": 1, "entries": [[[NaN, 0]]]}',
        '{"n": 1, "entries": [[[1, Infinity]]]}',
        '{"n": 1, "entries": [[[1e400, 0]]]}',
        '{"n": 1, "entries": [[[1]]]}',
        '{"n": 1, "entries": [[["1", 0]]]}',
        '{"n": 1, "entries": [[[true, 0]]]}',
        '{"n": 1.0, "entries": [[[1, 0]]]}',
        '[1, 2]',
        'not json',
    ],
)
def test_parse_rejects_malformed(doc):
    with pytest.raises(mc.MatrixFormatError):
        mc.parse_matrix(doc)


def test_serialize_layout():
    doc = json.loads(mc.serialize_matrix([[1, 1j], [0.1, -2]]))
    assert doc == {"n": 2, "entries": [[[1.0, 0.0], [0.0, 1.0]], [[0.1, 0.0], [-2.0, 0.0]]]}
