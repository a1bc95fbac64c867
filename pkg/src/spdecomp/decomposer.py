"""Weighted signed-permutation decompositions of a unitary ``U`` of side ``2^w``.

Two schemes are provided:

``projective``
    ``U = sum_m g_{2m} S_{2m}`` over the ``4^w`` elements with ``d = 0``, with
    ``g_{2m} = 2^-w Tr(S_{2m}^T U)``. The weights satisfy ``sum |g|^2 = 1`` and
    ``sum g`` equals the sum of the first row of ``U``.

``group``
    ``U = sum_j h_j S_j`` over all ``2^(2w+1)`` elements, with
    ``h_j = Tr(S_j^T U) / 2^(w+1)`` plus ``1/2`` on ``j = 0`` and ``j = 1``.
    Both ``sum h = 1`` and ``sum |h|^2 = 1`` hold.

All traces ``Tr(S^T U)`` for the ``d = 0`` elements come from one table,
computed either entry by entry (``O(8^w)``) or with one Walsh-Hadamard
transform per X-stack (``O(4^w w)``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import _backend
from .matcore import DEFAULT_TOL, DimensionError, MatrixFormatError, NotUnitaryError, as_matrix, is_unitary
from .sigperm import DENSE_CAP, GroupIndex, even_label_table

__all__ = [
    "FAST_AUTO_WIDTH",
    "Decomposition",
    "DistanceReport",
    "width_of",
    "trace_table",
    "naive_weights",
    "fast_weights",
    "decompose_projective",
    "decompose_group",
    "g_to_h",
    "h_to_g",
    "reconstruct",
    "distance_report",
    "parse_decomposition",
    "serialize_decomposition",
]

FAST_AUTO_WIDTH = 5
SCHEMES = ("projective", "group")


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Weights for every label of a scheme, in ascending label order.

    ``weights[i]`` belongs to label ``labels[i]``; the projective scheme
    carries only the ``d = 0`` labels (multiples of ``p``).
    """

    scheme: str
    p: int
    w: int
    weights: np.ndarray
    residual: float | None = field(default=None)

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}")
        weights = np.array(self.weights, dtype=np.complex128)
        weights.setflags(write=False)
        if weights.shape != (len(self.labels),):
            raise ValueError(f"expected {len(self.labels)} weights, got {weights.shape}")
        object.__setattr__(self, "weights", weights)

    @property
    def labels(self) -> np.ndarray:
        order = self.p ** (2 * self.w + 1)
        step = self.p if self.scheme == "projective" else 1
        return np.arange(0, order, step, dtype=np.int64)

    @property
    def n(self) -> int:
        return self.p**self.w

    def weight(self, j: int) -> complex:
        step = self.p if self.scheme == "projective" else 1
        if j % step or not 0 <= j < self.p ** (2 * self.w + 1):
            raise KeyError(j)
        return complex(self.weights[j // step])

    def element(self, j: int):
        if self.p == 2:
            return GroupIndex.from_index(self.w, j)
        from .qudit import PrimeGroupIndex

        return PrimeGroupIndex.from_index(self.p, self.w, j)

    def items(self) -> Iterator[tuple[object, complex]]:
        for j, c in zip(self.labels, self.weights):
            yield self.element(int(j)), complex(c)

    @property
    def weight_sum(self) -> complex:
        return complex(np.sum(self.weights))

    @property
    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.weights) ** 2))

    def with_residual(self, U) -> "Decomposition":
        res = float(np.max(np.abs(reconstruct(self) - as_matrix(U))))
        return Decomposition(self.scheme, self.p, self.w, self.weights, res)


@dataclass(frozen=True, eq=False)
class DistanceReport:
    """``D(S_j, U) = 1 - |Tr(S_j^T U)|^2 / n^2`` for every even label ``j``."""

    labels: np.ndarray
    distances: np.ndarray

    @property
    def min(self) -> float:
        return float(np.min(self.distances))

    @property
    def max(self) -> float:
        return float(np.max(self.distances))


def width_of(n: int, p: int = 2) -> int:
    """``w`` with ``p**w == n``, or raise :class:`DimensionError`."""
    w, m = 0, 1
    while m < n:
        m *= p
        w += 1
    if m != n or n < 1:
        raise DimensionError(f"side {n} is not a power of {p}")
    return w


def _prepare(U, w, tol, check_unitary):
    U = np.ascontiguousarray(as_matrix(U))
    n = U.shape[0]
    inferred = width_of(n, 2)
    if w is not None and w != inferred:
        raise DimensionError(f"side {n} does not match w={w}")
    if inferred < 1:
        raise DimensionError("need at least one qubit")
    if check_unitary:
        ok, res = is_unitary(U, tol)
        if not ok:
            raise NotUnitaryError(f"matrix is not unitary (residual {res:.3g} > {tol:.3g})")
    return U, inferred


def trace_table(U, fast: bool = False) -> np.ndarray:
    """``T[a_row, b_row] = Tr(S^T U)`` for ``S = (b, a, d=0)``."""
    U = np.ascontiguousarray(U, dtype=np.complex128)
    return _backend.traces_fast(U) if fast else _backend.traces_naive(U)


def _label_ordered(T: np.ndarray, w: int) -> np.ndarray:
    out = np.empty(T.size, dtype=np.complex128)
    out[even_label_table(w).ravel() // 2] = T.ravel()
    return out


def naive_weights(U, w: int | None = None) -> np.ndarray:
    """Projective weights by direct summation, ascending even label order."""
    U, w = _prepare(U, w, DEFAULT_TOL, False)
    return _label_ordered(trace_table(U, fast=False), w) / 2**w


def fast_weights(U, w: int | None = None) -> np.ndarray:
    """Projective weights via fast Walsh-Hadamard transforms."""
    U, w = _prepare(U, w, DEFAULT_TOL, False)
    return _label_ordered(trace_table(U, fast=True), w) / 2**w


def _use_fast(fast, w):
    return w >= FAST_AUTO_WIDTH if fast is None else bool(fast)


def decompose_projective(
    U,
    w: int | None = None,
    *,
    tol: float = DEFAULT_TOL,
    fast: bool | None = None,
    check_unitary: bool = True,
    residual: bool = True,
) -> Decomposition:
    U, w = _prepare(U, w, tol, check_unitary)
    T = trace_table(U, fast=_use_fast(fast, w))
    dec = Decomposition("projective", 2, w, _label_ordered(T, w) / 2**w)
    return dec.with_residual(U) if residual and w <= DENSE_CAP else dec


def decompose_group(
    U,
    w: int | None = None,
    *,
    tol: float = DEFAULT_TOL,
    fast: bool | None = None,
    check_unitary: bool = True,
    residual: bool = True,
) -> Decomposition:
    U, w = _prepare(U, w, tol, check_unitary)
    t = _label_ordered(trace_table(U, fast=_use_fast(fast, w)), w) / 2 ** (w + 1)
    h = np.empty(2 * t.size, dtype=np.complex128)
    # Tr(S_{2m+1}^T U) = -Tr(S_{2m}^T U)
    h[0::2] = t
    h[1::2] = -t
    h[0] += 0.5
    h[1] += 0.5
    dec = Decomposition("group", 2, w, h)
    return dec.with_residual(U) if residual and w <= DENSE_CAP else dec


def g_to_h(dec: Decomposition) -> Decomposition:
    if dec.scheme != "projective":
        raise ValueError("g_to_h expects a projective decomposition")
    p = dec.p
    if p == 2:
        g = dec.weights
        h = np.empty(2 * g.size, dtype=np.complex128)
        h[0::2] = g / 2
        h[1::2] = -g / 2
        h[0] = (1 + g[0]) / 2
        h[1] = (1 - g[0]) / 2
    else:
        from .qudit import omega_powers

        # label m*p + d carries omega^-d g_m / p; the identity coset is shifted
        om = omega_powers(p).conj()
        h = (dec.weights[:, None] * om[None, :] / p).ravel()
        h[:p] = om * (dec.weights[0] - 1) / p
        h[0] += 1
    return Decomposition("group", p, dec.w, h, dec.residual)


def h_to_g(dec: Decomposition) -> Decomposition:
    if dec.scheme != "group":
        raise ValueError("h_to_g expects a group decomposition")
    p = dec.p
    if p == 2:
        h = dec.weights
        # g_0 = 2 h_0 - 1 = h_0 - h_1 and g_2m = 2 h_2m = h_2m - h_2m+1
        g = h[0::2] - h[1::2]
    else:
        from .qudit import omega_powers

        om = omega_powers(p)
        g = (dec.weights.reshape(-1, p) * om[None, :]).sum(axis=1)
    return Decomposition("projective", p, dec.w, g, dec.residual)


def _bad_rows(dec: Decomposition) -> np.ndarray:
    w = dec.w
    labels = dec.labels
    d = labels & 1
    m = labels >> 1
    n = 2**w
    bpack = m % n
    apack = m // n
    rev = np.zeros(n, dtype=np.int64)
    for i in range(w):
        rev |= ((np.arange(n) >> i) & 1) << (w - 1 - i)
    return np.ascontiguousarray(np.stack([rev[bpack], rev[apack], d], axis=1), dtype=np.int64)


def reconstruct(dec: Decomposition, cap: int = DENSE_CAP) -> np.ndarray:
    """Dense ``sum_j weight_j * S_j``."""
    if dec.p != 2:
        from .qudit import prime_reconstruct

        return prime_reconstruct(dec)
    if dec.w > cap:
        raise ValueError(f"width {dec.w} exceeds the dense cap {cap}")
    return _backend.weighted_signed_sum(2**dec.w, _bad_rows(dec), np.ascontiguousarray(dec.weights))


def distance_report(U, w: int | None = None, *, tol: float = DEFAULT_TOL, check_unitary: bool = True) -> DistanceReport:
    U, w = _prepare(U, w, tol, check_unitary)
    T = _label_ordered(trace_table(U, fast=_use_fast(None, w)), w)
    n = 2**w
    D = 1.0 - np.abs(T) ** 2 / n**2
    return DistanceReport(np.arange(0, 2 * T.size, 2, dtype=np.int64), D)


# -- file format ---------------------------------------------------------------


def decomposition_to_document(dec: Decomposition, prune: float | None = None) -> dict:
    rows = []
    for j, c in zip(dec.labels.tolist(), dec.weights.tolist()):
        if prune is not None and abs(c) <= prune:
            continue
        row = {"j": j, "re": float(c.real), "im": float(c.imag)}
        if dec.p != 2:
            el = dec.element(j)
            row.update(b=list(el.b), a=list(el.a), d=el.d)
        rows.append(row)
    return {"scheme": dec.scheme, "p": dec.p, "w": dec.w, "weights": rows}


def serialize_decomposition(dec: Decomposition, prune: float | None = None) -> str:
    return json.dumps(decomposition_to_document(dec, prune), allow_nan=False)


def _int_field(doc, key):
    if key not in doc:
        raise MatrixFormatError(f"missing field {key!r}")
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise MatrixFormatError(f"{key!r} must be an integer")
    return v


def _real_field(row, key):
    v = row.get(key, None)
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not np.isfinite(v):
        raise MatrixFormatError(f"weight field {key!r} must be a finite number")
    return float(v)


def _reject_constant(name):
    raise MatrixFormatError(f"non-finite number {name!r}")


def decomposition_from_document(doc) -> Decomposition:
    if not isinstance(doc, dict):
        raise MatrixFormatError("decomposition document must be a JSON object")
    scheme = doc.get("scheme")
    if scheme not in SCHEMES:
        raise MatrixFormatError(f"scheme must be one of {SCHEMES}, got {scheme!r}")
    p = _int_field(doc, "p")
    w = _int_field(doc, "w")
    if w < 1:
        raise MatrixFormatError("'w' must be >= 1")
    if p != 2:
        from .qudit import check_prime

        try:
            check_prime(p, w)
        except ValueError as exc:
            raise MatrixFormatError(str(exc)) from None
    rows = doc.get("weights")
    if not isinstance(rows, list):
        raise MatrixFormatError("'weights' must be a list")
    order = p ** (2 * w + 1)
    step = p if scheme == "projective" else 1
    weights = np.zeros(order // step, dtype=np.complex128)
    seen = set()
    for row in rows:
        if not isinstance(row, dict):
            raise MatrixFormatError("each weight must be an object")
        j = _int_field(row, "j")
        if not 0 <= j < order:
            raise MatrixFormatError(f"label {j} out of range 0..{order - 1}")
        if j % step:
            raise MatrixFormatError(f"label {j} is not a d=0 label, not allowed in a projective decomposition")
        if j in seen:
            raise MatrixFormatError(f"duplicate label {j}")
        seen.add(j)
        if any(k in row for k in ("b", "a", "d")):
            if p == 2:
                expected = GroupIndex.from_index(w, j).to_json()
            else:
                from .qudit import PrimeGroupIndex

                expected = PrimeGroupIndex.from_index(p, w, j).to_json()
            for k in ("b", "a", "d"):
                if k in row and row[k] != expected[k]:
                    raise MatrixFormatError(f"field {k!r} of label {j} disagrees with j")
        weights[j // step] = complex(_real_field(row, "re"), _real_field(row, "im"))
    return Decomposition(scheme, p, w, weights)


def parse_decomposition(text: str) -> Decomposition:
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"invalid JSON: {exc}") from None
    return decomposition_from_document(doc)
