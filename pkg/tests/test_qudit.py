import cmath
import itertools

import numpy as np
import pytest

from spdecomp import decomposer as dc
from spdecomp import qudit as qd
from spdecomp import sigperm as sp
from spdecomp.matcore import DimensionError, NotUnitaryError, haar_random, hs_inner

from conftest import U_EXAMPLE


def w_of(p):
    return cmath.exp(2j * cmath.pi / p)


def prime_entry_oracle(p, w, j, k, l):
    """Direct formula with omega from cmath, digits MSB-first."""
    d, rest = j % p, j // p
    b = [(rest // p**i) % p for i in range(w)]
    a = [(rest // p ** (w + i)) % p for i in range(w)]
    kd = [(k // p ** (w - 1 - i)) % p for i in range(w)]
    ld = [(l // p ** (w - 1 - i)) % p for i in range(w)]
    if any((ai + ki) % p != li for ai, ki, li in zip(a, kd, ld)):
        return 0
    return w_of(p) ** (d + sum(x * y for x, y in zip(b, kd)))


def test_primality_and_caps():
    assert [p for p in range(20) if qd.is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19]
    for bad in (1, 4, 9, 17):
        with pytest.raises(ValueError):
            qd.check_prime(bad)
    with pytest.raises(ValueError):
        qd.check_prime(3, 7)
    qd.check_prime(3, 6)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_root_of_unity(p):
    om = qd.RootOfUnity(p)
    assert abs(om.value - w_of(p)) < 1e-15
    assert abs(om.value**p - 1) < 1e-14
    assert abs(om.powers.sum()) < 1e-13
    assert om(p + 1) == om.value and om(0) == 1
    assert np.max(np.abs(om.powers - w_of(p) ** np.arange(p))) < 1e-14


def test_root_of_unity_two_is_exact():
    assert list(qd.omega_powers(2)) == [1, -1]


def test_generators_fixtures():
    X, Z = qd.qudit_generators(2)
    assert np.array_equal(X, [[0, 1], [1, 0]])
    assert np.array_equal(Z, np.diag([1, -1]))
    X, Z = qd.qudit_generators(3)
    assert np.array_equal(X, [[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    with pytest.raises(ValueError):
        qd.qudit_generators(6)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_generators_commutation(p):
    X, Z = qd.qudit_generators(p)
    assert np.max(np.abs(X @ Z - w_of(p) * Z @ X)) < 1e-14
    I = np.eye(p)
    assert np.max(np.abs(np.linalg.matrix_power(X, p) - I)) == 0
    assert np.max(np.abs(np.linalg.matrix_power(Z, p) - I)) < 1e-13


def test_index_round_trip():
    for p, w in ((3, 1), (3, 2), (5, 1)):
        for j in range(p ** (2 * w + 1)):
            g = qd.PrimeGroupIndex.from_index(p, w, j)
            assert g.j == j
    with pytest.raises(ValueError):
        qd.PrimeGroupIndex.from_index(3, 1, 27)
    with pytest.raises(ValueError):
        qd.PrimeGroupIndex(3, 1, (3,), (0,), 0)
    with pytest.raises(ValueError):
        qd.PrimeGroupIndex(4, 1, (0,), (0,), 0)
    g = qd.PrimeGroupIndex(3, 2, (1, 2), (0, 1), 2)
    assert g.to_json() == {"p": 3, "w": 2, "j": g.j, "b": [1, 2], "a": [0, 1], "d": 2}


def test_entry_fixtures():
    g0 = qd.PrimeGroupIndex.from_index(3, 2, 0)
    assert all(qd.prime_entry(g0, k, l) == (k == l) for k in range(9) for l in range(9))
    _, Z = qd.qudit_generators(3)
    zg = qd.PrimeGroupIndex(3, 1, (1,), (0,), 0)
    assert np.array_equal(qd.prime_dense(zg), Z)
    with pytest.raises(IndexError):
        qd.prime_entry(g0, 9, 0)


@pytest.mark.parametrize("p,w", [(3, 1), (3, 2), (5, 1)])
def test_entry_and_dense_against_oracle(p, w):
    n = p**w
    for j in range(p ** (2 * w + 1)):
        g = qd.PrimeGroupIndex.from_index(p, w, j)
        C = qd.prime_dense(g)
        want = np.array([[prime_entry_oracle(p, w, j, k, l) for l in range(n)] for k in range(n)])
        assert np.max(np.abs(C - want)) < 1e-13
        k = j % n
        assert abs(qd.prime_entry(g, k, int(np.argmax(np.abs(C[k])))) - want[k].sum()) < 1e-13


@pytest.mark.parametrize("w", [1, 2])
def test_p2_entries_match_sigperm(w):
    n = 2**w
    for j in range(2 ** (2 * w + 1)):
        g, s = qd.PrimeGroupIndex.from_index(2, w, j), sp.GroupIndex.from_index(w, j)
        assert (g.b, g.a, g.d) == (s.b, s.a, s.d)
        for k in range(n):
            for l in range(n):
                assert qd.prime_entry(g, k, l) == sp.entry(s, k, l)


def test_compose_law_exhaustive_p3():
    els = [qd.PrimeGroupIndex.from_index(3, 1, j) for j in range(27)]
    for g1, g2 in itertools.product(els, els):
        prod = qd.prime_dense(g1) @ qd.prime_dense(g2)
        assert np.max(np.abs(qd.prime_dense(qd.prime_compose(g1, g2)) - prod)) < 1e-13


def test_compose_sampled_p5_w2():
    rng = np.random.default_rng(0)
    for j1, j2 in rng.integers(0, 5**5, (200, 2)):
        g1, g2 = qd.PrimeGroupIndex.from_index(5, 2, int(j1)), qd.PrimeGroupIndex.from_index(5, 2, int(j2))
        prod = qd.prime_dense(g1) @ qd.prime_dense(g2)
        assert np.max(np.abs(qd.prime_dense(qd.prime_compose(g1, g2)) - prod)) < 1e-12


def test_adjoint():
    for j in range(27):
        g = qd.PrimeGroupIndex.from_index(3, 1, j)
        assert np.max(np.abs(qd.prime_dense(qd.prime_adjoint(g)) - qd.prime_dense(g).conj().T)) < 1e-13
        assert qd.prime_compose(g, qd.prime_adjoint(g)).j == 0


def test_order_by_closure():
    X, Z = qd.qudit_generators(3)
    key = lambda M: tuple(np.round(M.ravel(), 8).tolist())
    seen = {key(np.eye(3)): np.eye(3, dtype=complex)}
    frontier = list(seen.values())
    while frontier:
        nxt = []
        for M in frontier:
            for G in (X, Z):
                P = M @ G
                if key(P) not in seen:
                    seen[key(P)] = P
                    nxt.append(P)
        frontier = nxt
    assert len(seen) == 27
    ours = {key(qd.prime_dense(qd.PrimeGroupIndex.from_index(3, 1, j))) for j in range(27)}
    assert ours == set(seen)


def test_pair_inner_fixtures():
    g = qd.PrimeGroupIndex(3, 2, (1, 0), (2, 1), 0)
    assert qd.prime_pair_inner(g, g) == 9
    h = qd.PrimeGroupIndex(3, 2, (1, 0), (2, 1), 1)
    want = hs_inner(qd.prime_dense(g), qd.prime_dense(h))
    assert abs(qd.prime_pair_inner(g, h) - want) < 1e-12
    assert abs(want - w_of(3) * 9) < 1e-12
    other = qd.PrimeGroupIndex(3, 2, (1, 0), (2, 2), 0)
    assert qd.prime_pair_inner(g, other) == 0
    with pytest.raises(DimensionError):
        qd.prime_pair_inner(g, qd.PrimeGroupIndex.from_index(3, 1, 0))


@pytest.mark.parametrize("p,w", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_gram(p, w):
    G = qd.prime_gram(p, w)
    assert np.max(np.abs(G - p**w * np.eye(p ** (2 * w)))) < 1e-12
    reps = [qd.prime_dense(qd.PrimeGroupIndex.from_index(p, w, j)).ravel() for j in range(0, p ** (2 * w + 1), p)]
    V = np.array(reps)
    assert np.max(np.abs(V.conj() @ V.T - p**w * np.eye(len(reps)))) < 1e-12


@pytest.mark.parametrize("p,w", [(3, 1), (3, 2), (5, 1), (7, 1)])
def test_trace_table_and_parseval(p, w):
    U = haar_random(p**w, 40 + p + w)
    T = qd.prime_trace_table(U, p)
    want = [np.trace(qd.prime_dense(qd.PrimeGroupIndex.from_index(p, w, j)).conj().T @ U) for j in range(0, p ** (2 * w + 1), p)]
    assert np.max(np.abs(T - np.array(want))) < 1e-12
    assert abs(np.sum(np.abs(T) ** 2) - p ** (2 * w)) < 1e-10


def test_identity_decompositions():
    g = qd.prime_decompose_projective(np.eye(3), 3)
    assert abs(g.weights[0] - 1) < 1e-15 and np.max(np.abs(g.weights[1:])) < 1e-15
    for p, w in ((3, 1), (3, 2), (5, 1)):
        h = qd.prime_decompose_group(np.eye(p**w), p)
        assert abs(h.weights[0] - 1) < 1e-14 and np.max(np.abs(h.weights[1:])) < 1e-14


@pytest.mark.parametrize("p,w", [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1)])
def test_haar_decompositions(p, w):
    for seed in range(5):
        U = haar_random(p**w, 300 + 10 * seed + w)
        g = qd.prime_decompose_projective(U, p)
        h = qd.prime_decompose_group(U, p)
        assert len(g.weights) == p ** (2 * w) and len(h.weights) == p ** (2 * w + 1)
        assert g.residual <= 1e-11 and h.residual <= 1e-11
        assert abs(g.norm_sq - 1) < 1e-12
        assert abs(h.weight_sum - 1) < 1e-12
        assert abs(h.norm_sq - 1) < 1e-12
        assert abs(g.weight_sum - U[0].sum()) < 1e-12
        assert np.max(np.abs(dc.g_to_h(g).weights - h.weights)) < 1e-12
        assert np.max(np.abs(dc.h_to_g(h).weights - g.weights)) < 1e-12


def test_prime_reconstruct_matches_dense_sum():
    U = haar_random(9, 2)
    h = qd.prime_decompose_group(U, 3)
    want = sum(c * qd.prime_dense(g) for g, c in h.items())
    assert np.max(np.abs(qd.prime_reconstruct(h) - want)) < 1e-12


def test_p2_equivalence(u_example):
    for U in (u_example, haar_random(2, 1), haar_random(8, 2)):
        a = qd.prime_decompose_projective(U, 2)
        b = dc.decompose_projective(U, fast=False)
        assert np.array_equal(a.weights, b.weights)
        a = qd.prime_decompose_group(U, 2)
        b = dc.decompose_group(U, fast=False)
        assert np.array_equal(a.weights, b.weights)
        assert np.array_equal(qd.prime_reconstruct(a), dc.reconstruct(b))
    g = qd.prime_decompose_projective(U_EXAMPLE, 2)
    assert abs(g.weight(30) - (6 + 11j) / 48) < 1e-12


def test_errors():
    with pytest.raises(DimensionError):
        qd.prime_decompose_projective(np.eye(4), 3)
    with pytest.raises(DimensionError):
        qd.prime_decompose_group(np.eye(9), 3, w=1)
    with pytest.raises(NotUnitaryError):
        qd.prime_decompose_group(2 * np.eye(3), 3)
    with pytest.raises(ValueError):
        qd.prime_decompose_group(np.eye(4), 4)


def test_document_round_trip_p3():
    h = qd.prime_decompose_group(haar_random(3, 9), 3)
    text = dc.serialize_decomposition(h)
    rows = dc.decomposition_to_document(h)["weights"]
    assert set(rows[5]) == {"j", "re", "im", "b", "a", "d"}
    back = dc.parse_decomposition(text)
    assert back.p == 3 and np.array_equal(back.weights, h.weights)
    assert np.max(np.abs(dc.reconstruct(back) - qd.prime_reconstruct(h))) == 0


@pytest.mark.parametrize("w", [1, 2, 3])
def test_p2_equivalence_many_seeds(w):
    for seed in range(30):
        U = haar_random(2**w, seed)
        assert np.array_equal(qd.prime_decompose_group(U, 2).weights, dc.decompose_group(U, fast=False).weights)
        assert np.array_equal(qd.prime_decompose_projective(U, 2).weights, dc.decompose_projective(U, fast=False).weights)
