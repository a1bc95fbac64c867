"""The group DS(2^w) of D stacks, isomorphic to the extraspecial group E+_{2^(2w+1)}.

An element is ``S = (-1)^d * Zstack(b) @ Xstack(a)`` with entries

    S[k, l] = (-1)^(d + b.k) * [l == a XOR k]

where ``b`` and ``a`` are length-``w`` bit vectors over the qubits (qubit 0 is
the most significant bit of a row index) and ``d`` is a single bit.

Integer labels ``j`` run over ``0 .. 2^(2w+1)-1`` and read the transversal
``(-I, Z_0, ..., Z_{w-1}, X_0, ..., X_{w-1})`` as a little-endian binary
number::

    j = d + 2 * sum_i b_i 2^i + 2^(w+1) * sum_i a_i 2^i

so even ``j`` are the ``d = 0`` half, ``S_{2m+1} = -S_{2m}``, and at ``w = 2``
``S_2 = Z (x) I``, ``S_4 = I (x) Z`` and ``S_30`` is the signed anti-diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import _backend
from .matcore import DimensionError

__all__ = [
    "DENSE_CAP",
    "GroupIndex",
    "entry",
    "dense",
    "compose",
    "transpose",
    "inverse",
    "group_trace",
    "pair_inner",
    "factorize",
    "z_stack",
    "x_stack",
    "elements",
    "even_label_table",
    "Census",
    "census",
    "determinant",
    "gram_even",
]

DENSE_CAP = 12
CENSUS_CAP = 6


def _bits_value_lsb(bits) -> int:
    return sum(int(x) << i for i, x in enumerate(bits))


def _row_value(bits) -> int:
    """Bits as a row-aligned integer (qubit 0 = most significant)."""
    v = 0
    for x in bits:
        v = (v << 1) | int(x)
    return v


def _bits_of_row(v: int, w: int) -> tuple[int, ...]:
    return tuple((v >> (w - 1 - i)) & 1 for i in range(w))


@dataclass(frozen=True)
class GroupIndex:
    """One element of DS(2^w), stored as its ``(b, a, d)`` parameters."""

    w: int
    b: tuple[int, ...]
    a: tuple[int, ...]
    d: int = 0

    def __post_init__(self):
        if self.w < 1:
            raise ValueError("width must be >= 1")
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        if len(self.b) != self.w or len(self.a) != self.w:
            raise ValueError(f"b and a must have length {self.w}")
        if any(x not in (0, 1) for x in self.b + self.a) or self.d not in (0, 1):
            raise ValueError("parameters must be bits")

    @classmethod
    def from_index(cls, w: int, j: int) -> "GroupIndex":
        if w < 1:
            raise ValueError("width must be >= 1")
        if not 0 <= j < 2 ** (2 * w + 1):
            raise ValueError(f"index {j} out of range for w={w} (order {2 ** (2 * w + 1)})")
        d = j & 1
        b = tuple((j >> (1 + i)) & 1 for i in range(w))
        a = tuple((j >> (1 + w + i)) & 1 for i in range(w))
        return cls(w, b, a, d)

    @classmethod
    def from_rows(cls, w: int, b_row: int, a_row: int, d: int = 0) -> "GroupIndex":
        return cls(w, _bits_of_row(b_row, w), _bits_of_row(a_row, w), d)

    @classmethod
    def identity(cls, w: int) -> "GroupIndex":
        return cls(w, (0,) * w, (0,) * w, 0)

    @property
    def j(self) -> int:
        return self.d + 2 * _bits_value_lsb(self.b) + 2 ** (self.w + 1) * _bits_value_lsb(self.a)

    @property
    def b_row(self) -> int:
        return _row_value(self.b)

    @property
    def a_row(self) -> int:
        return _row_value(self.a)

    def negated(self) -> "GroupIndex":
        return GroupIndex(self.w, self.b, self.a, 1 - self.d)

    def to_json(self) -> dict:
        return {"w": self.w, "j": self.j, "b": list(self.b), "a": list(self.a), "d": self.d}

    @classmethod
    def from_json(cls, doc: dict) -> "GroupIndex":
        g = cls.from_index(int(doc["w"]), int(doc["j"]))
        expected = g.to_json()
        for key in ("b", "a", "d"):
            if key in doc and doc[key] != expected[key]:
                raise ValueError(f"field {key!r} disagrees with j={g.j}")
        return g


def _check_same_width(g1: GroupIndex, g2: GroupIndex) -> None:
    if g1.w != g2.w:
        raise DimensionError(f"width mismatch: {g1.w} vs {g2.w}")


def _dot(x, y) -> int:
    return sum(p * q for p, q in zip(x, y)) & 1


def entry(g: GroupIndex, k: int, l: int) -> int:
    n = 2**g.w
    if not (0 <= k < n and 0 <= l < n):
        raise IndexError(f"({k}, {l}) out of range for side {n}")
    if l != g.a_row ^ k:
        return 0
    return -1 if (g.d + bin(g.b_row & k).count("1")) & 1 else 1


def dense(g: GroupIndex, cap: int = DENSE_CAP) -> np.ndarray:
    if g.w > cap:
        raise ValueError(f"width {g.w} exceeds the dense cap {cap}")
    return _backend.signed_perm_dense(2**g.w, g.b_row, g.a_row, g.d).astype(np.complex128)


def compose(g1: GroupIndex, g2: GroupIndex) -> GroupIndex:
    """Index of ``dense(g1) @ dense(g2)``."""
    _check_same_width(g1, g2)
    b = tuple(x ^ y for x, y in zip(g1.b, g2.b))
    a = tuple(x ^ y for x, y in zip(g1.a, g2.a))
    # moving Z^b2 left across X^a1 picks up (-1)^(b2.a1)
    d = (g1.d + g2.d + _dot(g2.b, g1.a)) & 1
    return GroupIndex(g1.w, b, a, d)


def transpose(g: GroupIndex) -> GroupIndex:
    return GroupIndex(g.w, g.b, g.a, (g.d + _dot(g.b, g.a)) & 1)


# real orthogonal matrices: the transpose is the inverse
inverse = transpose


def group_trace(g: GroupIndex) -> int:
    if any(g.b) or any(g.a):
        return 0
    return -(2**g.w) if g.d else 2**g.w


def pair_inner(g1: GroupIndex, g2: GroupIndex) -> int:
    """``Tr(S1^T S2)``: ``+-2^w`` when the ``(b, a)`` agree, else 0."""
    _check_same_width(g1, g2)
    if g1.b != g2.b or g1.a != g2.a:
        return 0
    return -(2**g1.w) if g1.d != g2.d else 2**g1.w


def z_stack(b) -> np.ndarray:
    """Diagonal matrix with entries ``(-1)^(b.k)``."""
    w = len(b)
    return dense(GroupIndex(w, b, (0,) * w, 0))


def x_stack(a) -> np.ndarray:
    """Permutation matrix with entries ``[l == a XOR k]``."""
    w = len(a)
    return dense(GroupIndex(w, (0,) * w, a, 0))


def factorize(g: GroupIndex) -> tuple[tuple[int, ...], tuple[int, ...], int]:
    """``(b, a, d)`` such that ``dense(g) == z_stack(b) @ x_stack(a) * (-1)**d``."""
    return g.b, g.a, g.d


def elements(w: int) -> Iterator[GroupIndex]:
    for j in range(2 ** (2 * w + 1)):
        yield GroupIndex.from_index(w, j)


def _bitrev(x: np.ndarray, w: int) -> np.ndarray:
    out = np.zeros_like(x)
    for i in range(w):
        out |= ((x >> i) & 1) << (w - 1 - i)
    return out


def even_label_table(w: int) -> np.ndarray:
    """``L[a_row, b_row]`` = the even label ``j`` of ``(b, a, d=0)``."""
    n = 2**w
    r = _bitrev(np.arange(n, dtype=np.int64), w)
    return 2 * r[None, :] + 2 ** (w + 1) * r[:, None]


@dataclass(frozen=True)
class Census:
    w: int
    order: int
    all_plus: int
    all_minus: int
    half_half: int
    other: int
    determinants: tuple[int, ...]
    trace_sq_sum: int

    @property
    def all_unit_determinant(self) -> bool:
        return all(x == 1 for x in self.determinants)


def _perm_parity(perm: np.ndarray) -> int:
    seen = np.zeros(len(perm), dtype=bool)
    parity = 0
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        parity ^= (length - 1) & 1
    return parity


def _signed_perm_det(S: np.ndarray) -> int:
    n = S.shape[0]
    cols = np.argmax(S != 0, axis=1)
    vals = S.real[np.arange(n), cols]
    return (-1 if _perm_parity(cols) else 1) * int(np.prod(vals))


def determinant(g: GroupIndex) -> int:
    """Exact determinant: permutation sign times the product of the signs."""
    return _signed_perm_det(dense(g))


def census(w: int) -> Census:
    """Enumerate all dense elements and bucket them by sign pattern."""
    if not 1 <= w <= CENSUS_CAP:
        raise ValueError(f"census supports 1 <= w <= {CENSUS_CAP}")
    n = 2**w
    plus = minus = half = other = 0
    dets = []
    tr2 = 0
    seen = set()
    for g in elements(w):
        S = dense(g).real
        cols = np.argmax(S != 0, axis=1)
        vals = S[np.arange(n), cols]
        if np.count_nonzero(S) != n or len(set(cols.tolist())) != n or not np.all(np.abs(vals) == 1):
            raise AssertionError(f"element {g.j} is not a signed permutation matrix")
        seen.add(S.tobytes())
        npos = int(np.sum(vals > 0))
        if npos == n:
            plus += 1
        elif npos == 0:
            minus += 1
        elif 2 * npos == n:
            half += 1
        else:
            other += 1
        dets.append(_signed_perm_det(S))
        tr2 += int(round(np.trace(S))) ** 2
    return Census(w, len(seen), plus, minus, half, other, tuple(dets), tr2)


def gram_even(w: int) -> np.ndarray:
    """Gram matrix of ``pair_inner`` over the even labels, in label order."""
    evens = [GroupIndex.from_index(w, j) for j in range(0, 2 ** (2 * w + 1), 2)]
    return np.array([[pair_inner(x, y) for y in evens] for x in evens], dtype=np.int64)
