"""Dense complex matrix kernel and the JSON matrix file format.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. No function here
mutates its arguments; every result is a fresh array.

Rows and columns are numbered from 0, and an index ``k`` of a ``p**w`` sided
matrix is read as a digit vector ``(k_0, ..., k_{w-1})`` with ``k_0`` the most
significant digit (:func:`to_digits`).
"""

from __future__ import annotations

import json
import math
from typing import Sequence

import numpy as np

__all__ = [
    "DEFAULT_TOL",
    "MatrixFormatError",
    "DimensionError",
    "NotUnitaryError",
    "as_matrix",
    "mat_mul",
    "dagger",
    "trace",
    "kron",
    "hs_inner",
    "is_unitary",
    "haar_random",
    "to_digits",
    "from_digits",
    "parse_matrix",
    "serialize_matrix",
    "load_matrix",
    "save_matrix",
]

DEFAULT_TOL = 1e-10


class MatrixFormatError(ValueError):
    """A matrix document is malformed."""


class DimensionError(ValueError):
    """Operand shapes do not fit the operation."""


class NotUnitaryError(ValueError):
    """Input matrix fails the unitarity gate."""


def as_matrix(A) -> np.ndarray:
    """Coerce ``A`` to a square complex128 array (copying), or raise."""
    M = np.array(A, dtype=np.complex128)
    if M.ndim == 0:
        M = M.reshape(1, 1)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise DimensionError(f"expected a non-empty square matrix, got shape {M.shape}")
    return M


def _same_side(A: np.ndarray, B: np.ndarray) -> None:
    if A.shape != B.shape:
        raise DimensionError(f"dimension mismatch: {A.shape[0]} vs {B.shape[0]}")


def mat_mul(A, B) -> np.ndarray:
    A, B = as_matrix(A), as_matrix(B)
    _same_side(A, B)
    return A @ B


def dagger(A) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(A).conj().T.copy()


def trace(A) -> complex:
    return complex(np.trace(as_matrix(A)))


def kron(A, B) -> np.ndarray:
    """Kronecker product; block ``(j, k)`` of the result is ``A[j, k] * B``."""
    return np.kron(as_matrix(A), as_matrix(B))


def hs_inner(A, B) -> complex:
    """Hilbert-Schmidt inner product ``Tr(A^dagger B)``."""
    A, B = as_matrix(A), as_matrix(B)
    _same_side(A, B)
    # Tr(A^H B) = sum conj(A) * B, without forming the product
    return complex(np.vdot(A, B))


def is_unitary(A, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Return ``(ok, residual)`` with residual the max-entry norm of ``A^H A - I``."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    A = as_matrix(A)
    R = A.conj().T @ A - np.eye(A.shape[0])
    residual = float(np.max(np.abs(R)))
    return residual <= tol, residual


def haar_random(n: int, seed: int) -> np.ndarray:
    """Haar-distributed ``n x n`` unitary, deterministic in ``seed``.

    QR of a complex Ginibre matrix drawn from a Philox counter-based generator,
    with each column of Q rotated by the phase of the matching R diagonal entry.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.Generator(np.random.Philox(seed))
    G = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2.0)
    Q, R = np.linalg.qr(G)
    d = np.diagonal(R)
    return Q * (d / np.abs(d))


def to_digits(value: int, w: int, p: int = 2) -> tuple[int, ...]:
    """Base-``p`` digits of ``value``, most significant first, length ``w``."""
    if not 0 <= value < p**w:
        raise ValueError(f"{value} out of range for {w} base-{p} digits")
    out = []
    for _ in range(w):
        value, r = divmod(value, p)
        out.append(r)
    return tuple(reversed(out))


def from_digits(digits: Sequence[int], p: int = 2) -> int:
    value = 0
    for x in digits:
        if not 0 <= x < p:
            raise ValueError(f"digit {x} out of range for base {p}")
        value = value * p + int(x)
    return value


def _reject_constant(name):
    raise MatrixFormatError(f"non-finite number {name!r}")


def _number(x, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise MatrixFormatError(f"{where}: expected a number, got {x!r}")
    x = float(x)
    if not math.isfinite(x):
        raise MatrixFormatError(f"{where}: non-finite number")
    return x


def matrix_from_document(doc) -> np.ndarray:
    if not isinstance(doc, dict):
        raise MatrixFormatError("matrix document must be a JSON object")
    for key in ("n", "entries"):
        if key not in doc:
            raise MatrixFormatError(f"missing field {key!r}")
    n = doc["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n <= 0:
        raise MatrixFormatError(f"'n' must be a positive integer, got {n!r}")
    rows = doc["entries"]
    if not isinstance(rows, list) or len(rows) != n:
        got = len(rows) if isinstance(rows, list) else type(rows).__name__
        raise MatrixFormatError(f"expected {n} rows, got {got}")
    M = np.empty((n, n), dtype=np.complex128)
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise MatrixFormatError(f"row {r} must hold {n} entries")
        for c, z in enumerate(row):
            if not isinstance(z, list) or len(z) != 2:
                raise MatrixFormatError(f"entry ({r},{c}) must be a [re, im] pair")
            M[r, c] = complex(_number(z[0], f"entry ({r},{c})"), _number(z[1], f"entry ({r},{c})"))
    return M


def matrix_to_document(A) -> dict:
    A = as_matrix(A)
    return {
        "n": int(A.shape[0]),
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in A],
    }


def parse_matrix(text: str) -> np.ndarray:
    """Parse a ``{"n": ..., "entries": [[[re, im], ...], ...]}`` document."""
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"invalid JSON: {exc}") from None
    return matrix_from_document(doc)


def serialize_matrix(A) -> str:
    # float repr is the shortest string that round-trips exactly
    return json.dumps(matrix_to_document(A), allow_nan=False)


def load_matrix(path) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def save_matrix(A, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_matrix(A))
        fh.write("\n")
