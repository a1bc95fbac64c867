"""Single-qubit theory: the order-8 dihedral group generated by X and Z.

The eight matrices are indexed ``j = 4*b + 2*a + d`` and equal
``Z**b @ X**a @ (-I)**d``::

    M0 = I     M1 = -I
    M2 = X     M3 = -X
    M4 = Z     M5 = -Z
    M6 = ZX    M7 = XZ = -ZX

Any 2x2 unitary ``U`` is a weighted sum ``sum_j c_j M_j`` with
``sum |c_j|^2 = 1``; the four free unit phases ``u`` (one per one-dimensional
irrep) fix the remaining freedom, and ``u[0] = 1`` forces ``sum c_j = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matcore import DEFAULT_TOL, NotUnitaryError, as_matrix, is_unitary

__all__ = [
    "DihedralElement",
    "DihedralSolution",
    "CHARACTER_TABLE",
    "dihedral_dense",
    "all_dense",
    "solve_c",
    "compact_c",
    "projective_reduce",
    "NotUnitaryError",
]


_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
_I = np.eye(2, dtype=np.complex128)


@dataclass(frozen=True)
class DihedralElement:
    j: int

    def __post_init__(self):
        if not 0 <= self.j < 8:
            raise ValueError(f"dihedral index must be in 0..7, got {self.j}")

    @classmethod
    def from_exponents(cls, b: int, a: int, d: int) -> "DihedralElement":
        return cls(4 * b + 2 * a + d)

    @property
    def exponents(self) -> tuple[int, int, int]:
        """``(b, a, d)`` with ``M_j = Z^b X^a (-I)^d``."""
        return (self.j >> 2) & 1, (self.j >> 1) & 1, self.j & 1


def dihedral_dense(e) -> np.ndarray:
    if not isinstance(e, DihedralElement):
        e = DihedralElement(int(e))
    b, a, d = e.exponents
    M = np.linalg.matrix_power(_Z, b) @ np.linalg.matrix_power(_X, a)
    return 0 - M if d else M


def all_dense() -> np.ndarray:
    """Stack of shape ``(8, 2, 2)`` holding ``M_0 .. M_7``."""
    return np.stack([dihedral_dense(j) for j in range(8)])


# Irrep dimensions and characters, rows = irreps R1..R5, columns = M0..M7.
# R1 is the defining 2-dim representation.
CHARACTER_TABLE = {
    "dims": (2, 1, 1, 1, 1),
    "characters": np.array(
        [
            [2, -2, 0, 0, 0, 0, 0, 0],
            [1, 1, 1, 1, 1, 1, 1, 1],
            [1, 1, -1, -1, 1, 1, -1, -1],
            [1, 1, 1, 1, -1, -1, -1, -1],
            [1, 1, -1, -1, -1, -1, 1, 1],
        ],
        dtype=np.int64,
    ),
}


@dataclass(frozen=True)
class DihedralSolution:
    c: tuple[complex, ...]
    u: tuple[complex, ...] = (1, 1, 1, 1)

    def reconstruct(self) -> np.ndarray:
        return np.tensordot(np.array(self.c), all_dense(), axes=1)

    @property
    def weight_sum(self) -> complex:
        return complex(sum(self.c))

    @property
    def norm_sq(self) -> float:
        return float(sum(abs(x) ** 2 for x in self.c))


def _check_unitary_2x2(U, tol):
    U = as_matrix(U)
    if U.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got {U.shape}")
    ok, res = is_unitary(U, tol)
    if not ok:
        raise NotUnitaryError(f"matrix is not unitary (residual {res:.3g} > {tol:.3g})")
    return U


def solve_c(U, u=(1, 1, 1, 1), tol: float = DEFAULT_TOL) -> DihedralSolution:
    """Closed-form solution of the eight-equation system for the weights ``c_j``.

    ``u`` are the unit-modulus values assigned to the four one-dimensional
    irreps R2..R5, in that order.
    """
    U = _check_unitary_2x2(U, tol)
    u = tuple(complex(x) for x in u)
    if len(u) != 4:
        raise ValueError("expected four phases")
    if any(abs(abs(x) - 1) > tol for x in u):
        raise ValueError("phases must have unit modulus")
    u2, u3, u4, u5 = u
    minus = (
        (U[0, 0] + U[1, 1]) / 4,
        (U[0, 1] + U[1, 0]) / 4,
        (U[0, 0] - U[1, 1]) / 4,
        (U[0, 1] - U[1, 0]) / 4,
    )
    plus = (
        (u2 + u3 + u4 + u5) / 8,
        (u2 - u3 + u4 - u5) / 8,
        (u2 + u3 - u4 - u5) / 8,
        (u2 - u3 - u4 + u5) / 8,
    )
    c = []
    for m, q in zip(minus, plus):
        c += [complex(q + m), complex(q - m)]
    return DihedralSolution(tuple(c), u)


def compact_c(U, tol: float = DEFAULT_TOL) -> DihedralSolution:
    """``c_j = delta_j0 + Tr(M_j^dagger U)/4 - chi_j/4``; equals ``solve_c`` with all phases 1."""
    U = _check_unitary_2x2(U, tol)
    chi = CHARACTER_TABLE["characters"][0]
    M = all_dense()
    c = [
        complex((j == 0) + np.vdot(M[j], U) / 4 - chi[j] / 4)
        for j in range(8)
    ]
    return DihedralSolution(tuple(c))


def projective_reduce(s: DihedralSolution) -> tuple[complex, complex, complex, complex]:
    """Weights on ``(M0, M2, M4, M6)`` obtained by folding ``M_{2i+1} = -M_{2i}``."""
    c = s.c
    return tuple(complex(c[2 * i] - c[2 * i + 1]) for i in range(4))
