"""Qudit generalization: E+_{p^(2w+1)} as complex permutation matrices for prime ``p``.

With ``omega = exp(2 pi i / p)`` the element ``(b, a, d)`` (digit vectors over
Z_p and one digit ``d``) is

    C[k, l] = omega^(d + b.k) * [l == a + k]

with digit-wise addition mod ``p``. Labels follow the qubit convention::

    j = d + p * sum_i b_i p^i + p^(w+1) * sum_i a_i p^i

Inner products and weights use the adjoint ``C^dagger``; for ``p = 2`` this is
the plain transpose and everything agrees with :mod:`spdecomp.sigperm` and
:mod:`spdecomp.decomposer`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .matcore import DEFAULT_TOL, DimensionError, NotUnitaryError, as_matrix, is_unitary
from .decomposer import Decomposition, width_of

__all__ = [
    "MAX_PRIME",
    "MAX_SIDE",
    "check_prime",
    "is_prime",
    "RootOfUnity",
    "omega_powers",
    "PrimeGroupIndex",
    "qudit_generators",
    "prime_entry",
    "prime_dense",
    "prime_compose",
    "prime_adjoint",
    "prime_pair_inner",
    "prime_trace_table",
    "prime_decompose_projective",
    "prime_decompose_group",
    "prime_reconstruct",
    "prime_gram",
]

MAX_PRIME = 13
MAX_SIDE = 2048


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, int(p**0.5) + 1))


def check_prime(p: int, w: int | None = None) -> None:
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if p > MAX_PRIME:
        raise ValueError(f"p={p} exceeds the supported maximum {MAX_PRIME}")
    if w is not None and p**w > MAX_SIDE:
        raise ValueError(f"p^w = {p**w} exceeds the supported maximum side {MAX_SIDE}")


@lru_cache(maxsize=None)
def _powers(p: int) -> tuple[complex, ...]:
    out = [1 + 0j] + [complex(np.exp(2j * np.pi * q / p)) for q in range(1, p)]
    if p == 2:
        out[1] = -1 + 0j
    return tuple(out)


def omega_powers(p: int) -> np.ndarray:
    """``[omega^0, ..., omega^(p-1)]``; exactly ``[1, -1]`` for ``p = 2``."""
    return np.array(_powers(p), dtype=np.complex128)


@dataclass(frozen=True)
class RootOfUnity:
    p: int

    def __post_init__(self):
        check_prime(self.p)

    @property
    def value(self) -> complex:
        return _powers(self.p)[1 % self.p]

    @property
    def powers(self) -> np.ndarray:
        return omega_powers(self.p)

    def __call__(self, q: int) -> complex:
        return _powers(self.p)[q % self.p]


def _pack_lsb(digits, p):
    return sum(int(x) * p**i for i, x in enumerate(digits))


def _row(digits, p):
    v = 0
    for x in digits:
        v = v * p + int(x)
    return v


@dataclass(frozen=True)
class PrimeGroupIndex:
    p: int
    w: int
    b: tuple[int, ...]
    a: tuple[int, ...]
    d: int = 0

    def __post_init__(self):
        check_prime(self.p)
        if self.w < 1:
            raise ValueError("width must be >= 1")
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        if len(self.b) != self.w or len(self.a) != self.w:
            raise ValueError(f"b and a must have length {self.w}")
        if any(not 0 <= x < self.p for x in self.b + self.a + (self.d,)):
            raise ValueError(f"parameters must be digits mod {self.p}")

    @classmethod
    def from_index(cls, p: int, w: int, j: int) -> "PrimeGroupIndex":
        order = p ** (2 * w + 1)
        if not 0 <= j < order:
            raise ValueError(f"index {j} out of range for p={p}, w={w} (order {order})")
        d, rest = j % p, j // p
        b = []
        for _ in range(w):
            rest, r = divmod(rest, p)
            b.append(r)
        a = []
        for _ in range(w):
            rest, r = divmod(rest, p)
            a.append(r)
        return cls(p, w, tuple(b), tuple(a), d)

    @property
    def j(self) -> int:
        p, w = self.p, self.w
        return self.d + p * _pack_lsb(self.b, p) + p ** (w + 1) * _pack_lsb(self.a, p)

    def to_json(self) -> dict:
        return {"p": self.p, "w": self.w, "j": self.j, "b": list(self.b), "a": list(self.a), "d": self.d}


def qudit_generators(p: int) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic shift ``X[k, (k+1) % p] = 1`` and clock ``Z = diag(omega^k)``."""
    check_prime(p)
    X = np.zeros((p, p), dtype=np.complex128)
    X[np.arange(p), (np.arange(p) + 1) % p] = 1
    return X, np.diag(omega_powers(p))


def _digit_table(p: int, w: int) -> np.ndarray:
    """Row ``k`` holds the digits of ``k``, most significant first."""
    k = np.arange(p**w)
    return np.stack([(k // p ** (w - 1 - i)) % p for i in range(w)], axis=1)


def _from_digit_table(D: np.ndarray, p: int) -> np.ndarray:
    w = D.shape[-1]
    weights = p ** np.arange(w - 1, -1, -1)
    return D @ weights


def prime_entry(g: PrimeGroupIndex, k: int, l: int) -> complex:
    n = g.p**g.w
    if not (0 <= k < n and 0 <= l < n):
        raise IndexError(f"({k}, {l}) out of range for side {n}")
    p, w = g.p, g.w
    kd = [(k // p ** (w - 1 - i)) % p for i in range(w)]
    target = _row([(x + y) % p for x, y in zip(g.a, kd)], p)
    if l != target:
        return 0j
    return _powers(p)[(g.d + sum(x * y for x, y in zip(g.b, kd))) % p]


def prime_dense(g: PrimeGroupIndex) -> np.ndarray:
    p, w = g.p, g.w
    n = p**w
    K = _digit_table(p, w)
    cols = _from_digit_table((K + np.array(g.a)) % p, p)
    expo = (g.d + K @ np.array(g.b)) % p
    C = np.zeros((n, n), dtype=np.complex128)
    C[np.arange(n), cols] = omega_powers(p)[expo]
    return C


def _check_pair(g1, g2):
    if (g1.p, g1.w) != (g2.p, g2.w):
        raise DimensionError(f"(p, w) mismatch: {(g1.p, g1.w)} vs {(g2.p, g2.w)}")


def prime_compose(g1: PrimeGroupIndex, g2: PrimeGroupIndex) -> PrimeGroupIndex:
    """Index of ``prime_dense(g1) @ prime_dense(g2)``."""
    _check_pair(g1, g2)
    p = g1.p
    b = tuple((x + y) % p for x, y in zip(g1.b, g2.b))
    a = tuple((x + y) % p for x, y in zip(g1.a, g2.a))
    d = (g1.d + g2.d + sum(x * y for x, y in zip(g2.b, g1.a))) % p
    return PrimeGroupIndex(p, g1.w, b, a, d)


def prime_adjoint(g: PrimeGroupIndex) -> PrimeGroupIndex:
    p = g.p
    ba = sum(x * y for x, y in zip(g.b, g.a))
    return PrimeGroupIndex(p, g.w, tuple(-x % p for x in g.b), tuple(-x % p for x in g.a), (ba - g.d) % p)


def prime_pair_inner(g1: PrimeGroupIndex, g2: PrimeGroupIndex) -> complex:
    """``Tr(C1^dagger C2)``: ``omega^(d2-d1) p^w`` when ``(b, a)`` agree, else 0."""
    _check_pair(g1, g2)
    if g1.b != g2.b or g1.a != g2.a:
        return 0j
    return _powers(g1.p)[(g2.d - g1.d) % g1.p] * g1.p**g1.w


def _prepare(U, p, w, tol, check_unitary):
    check_prime(p)
    U = as_matrix(U)
    n = U.shape[0]
    inferred = width_of(n, p)
    if inferred < 1:
        raise DimensionError("need at least one qudit")
    if w is not None and w != inferred:
        raise DimensionError(f"side {n} does not match p^w = {p}^{w}")
    check_prime(p, inferred)
    if check_unitary:
        ok, res = is_unitary(U, tol)
        if not ok:
            raise NotUnitaryError(f"matrix is not unitary (residual {res:.3g} > {tol:.3g})")
    return U, inferred


def prime_trace_table(U, p: int) -> np.ndarray:
    """``T[m] = Tr(C_(m p)^dagger U)`` for the ``d = 0`` labels, ascending."""
    U = as_matrix(U)
    w = width_of(U.shape[0], p)
    n = p**w
    K = _digit_table(p, w)
    # F[a_row, k] = U[k, a + k]
    cols = _from_digit_table((K[None, :, :] + K[:, None, :]) % p, p)
    F = U[np.arange(n)[None, :], cols]
    # W[k, b_row] = omega^-(b.k)
    W = omega_powers(p).conj()[(K @ K.T) % p]
    T = F @ W
    # table index [a_row, b_row] -> label position b_pack + p^w a_pack
    pack = _from_digit_table(K[:, ::-1], p)
    out = np.empty(n * n, dtype=np.complex128)
    out[(pack[None, :] + n * pack[:, None]).ravel()] = T.ravel()
    return out


def prime_decompose_projective(
    U, p: int, w: int | None = None, *, tol: float = DEFAULT_TOL, check_unitary: bool = True, residual: bool = True
) -> Decomposition:
    U, w = _prepare(U, p, w, tol, check_unitary)
    dec = Decomposition("projective", p, w, prime_trace_table(U, p) / p**w)
    return dec.with_residual(U) if residual else dec


def prime_decompose_group(
    U, p: int, w: int | None = None, *, tol: float = DEFAULT_TOL, check_unitary: bool = True, residual: bool = True
) -> Decomposition:
    U, w = _prepare(U, p, w, tol, check_unitary)
    T = prime_trace_table(U, p)
    om = omega_powers(p).conj()
    # Tr(C_(m,d)^dagger U) = omega^-d T[m]
    h = (T[:, None] * om[None, :]).ravel() / p ** (w + 1)
    # identity coset: delta_j0 - Tr(C^dagger) / p^(w+1), folded into one shift
    # so that p = 2 rounds exactly like the dedicated qubit path
    shift = -om / p
    shift[0] += 1
    h[:p] += shift
    dec = Decomposition("group", p, w, h)
    return dec.with_residual(U) if residual else dec


def prime_reconstruct(dec: Decomposition) -> np.ndarray:
    p, w = dec.p, dec.w
    n = p**w
    if n > MAX_SIDE:
        raise ValueError(f"side {n} exceeds the supported maximum {MAX_SIDE}")
    K = _digit_table(p, w)
    om = omega_powers(p)
    out = np.zeros((n, n), dtype=np.complex128)
    rows = np.arange(n)
    for j, c in zip(dec.labels.tolist(), dec.weights.tolist()):
        if c == 0:
            continue
        g = PrimeGroupIndex.from_index(p, w, j)
        cols = _from_digit_table((K + np.array(g.a)) % p, p)
        expo = (g.d + K @ np.array(g.b)) % p
        out[rows, cols] += c * om[expo]
    return out


def prime_gram(p: int, w: int) -> np.ndarray:
    """Gram matrix of ``prime_pair_inner`` over the ``d = 0`` labels."""
    reps = [PrimeGroupIndex.from_index(p, w, j) for j in range(0, p ** (2 * w + 1), p)]
    return np.array([[prime_pair_inner(x, y) for y in reps] for x in reps])
