"""Linear algebra over GF(q): canonical subspaces in reduced echelon form."""

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from distantline.core.rings import galois_field_of_order

logger = logging.getLogger(__name__)

Row = Tuple[int, ...]


def _field(q: int):
    return galois_field_of_order(q)


def row_reduce(q: int, rows: Sequence[Sequence[int]], width: int) -> Tuple[Row, ...]:
    """Reduced row echelon form with zero rows dropped.

    Args:
        q: Field order.
        rows: Row vectors as integer encodings of GF(q) elements.
        width: Row length (needed when rows is empty).

    Returns:
        The nonzero rows of the reduced echelon form.
    """
    if len(rows) == 0:
        return ()
    GF = _field(q)
    reduced = GF(np.array(rows, dtype=np.int64).reshape(len(rows), width)).row_reduce()
    out = []
    for row in reduced.view(np.ndarray).tolist():
        if any(row):
            out.append(tuple(int(v) for v in row))
    return tuple(out)


def rank(q: int, rows: Sequence[Sequence[int]], width: int) -> int:
    return len(row_reduce(q, rows, width))


def null_space(q: int, rows: Sequence[Sequence[int]], width: int) -> Tuple[Row, ...]:
    """Basis of {y : M y^T = 0}, in reduced echelon form."""
    GF = _field(q)
    if len(rows) == 0:
        return tuple(tuple(int(i == j) for j in range(width)) for i in range(width))
    kernel = GF(np.array(rows, dtype=np.int64).reshape(len(rows), width)).null_space()
    return row_reduce(q, kernel.view(np.ndarray).tolist(), width)


def left_null_space(q: int, rows: Sequence[Sequence[int]], width: int) -> Tuple[Row, ...]:
    """Basis of {x : x M = 0}."""
    GF = _field(q)
    kernel = GF(np.array(rows, dtype=np.int64).reshape(len(rows), width)).left_null_space()
    return tuple(tuple(int(v) for v in r) for r in kernel.view(np.ndarray).tolist())


def mat_mul(q: int, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> List[List[int]]:
    GF = _field(q)
    return (GF(np.array(A, dtype=np.int64)) @ GF(np.array(B, dtype=np.int64))).view(np.ndarray).tolist()


def mat_inv(q: int, A: Sequence[Sequence[int]]) -> List[List[int]]:
    GF = _field(q)
    return np.linalg.inv(GF(np.array(A, dtype=np.int64))).view(np.ndarray).tolist()


def is_invertible(q: int, A: Sequence[Sequence[int]]) -> bool:
    return rank(q, A, len(A[0])) == len(A)


@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(q)^ambient_dim held by its reduced echelon basis."""

    q: int
    ambient_dim: int
    basis: Tuple[Row, ...]

    @classmethod
    def from_rows(cls, q: int, ambient_dim: int, rows: Iterable[Sequence[int]]) -> "Subspace":
        return cls(q, ambient_dim, row_reduce(q, list(rows), ambient_dim))

    @classmethod
    def zero(cls, q: int, ambient_dim: int) -> "Subspace":
        return cls(q, ambient_dim, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def pivots(self) -> Tuple[int, ...]:
        return tuple(next(j for j, v in enumerate(row) if v) for row in self.basis)

    def contains(self, other: "Subspace") -> bool:
        """Whether ``other`` is a subspace of this one."""
        if other.dim > self.dim:
            return False
        if other.dim == 0:
            return True
        return rank(self.q, self.basis + other.basis, self.ambient_dim) == self.dim

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace.from_rows(self.q, self.ambient_dim, self.basis + other.basis)

    def dim_intersection(self, other: "Subspace") -> int:
        if self.dim == 0 or other.dim == 0:
            return 0
        return self.dim + other.dim - rank(self.q, self.basis + other.basis, self.ambient_dim)

    def intersection(self, other: "Subspace") -> "Subspace":
        """Intersection via the left kernel of the stacked bases."""
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.q, self.ambient_dim)
        kernel = left_null_space(self.q, self.basis + other.basis, self.ambient_dim)
        if not kernel:
            return Subspace.zero(self.q, self.ambient_dim)
        coefficients = [row[: self.dim] for row in kernel]
        vectors = mat_mul(self.q, coefficients, self.basis)
        return Subspace.from_rows(self.q, self.ambient_dim, vectors)

    def is_complement(self, other: "Subspace") -> bool:
        return self.dim + other.dim == self.ambient_dim and self.dim_intersection(other) == 0

    def image(self, G: Sequence[Sequence[int]]) -> "Subspace":
        """Row space of basis * G."""
        if self.dim == 0:
            return self
        return Subspace.from_rows(self.q, self.ambient_dim, mat_mul(self.q, self.basis, G))

    def span_of(self, coefficients: Sequence[Sequence[int]]) -> "Subspace":
        """Subspace spanned by the given combinations of the basis."""
        return Subspace.from_rows(self.q, self.ambient_dim, mat_mul(self.q, coefficients, self.basis))

    def to_json(self) -> dict:
        return {"q": self.q, "ambient_dim": self.ambient_dim, "basis": [list(r) for r in self.basis]}


def annihilator(X: Subspace) -> Subspace:
    """All linear forms vanishing on X.

    The dual of GF(q)^m is identified with column vectors under the dot
    product, so X^perp is the right kernel of X's basis, written as rows.
    """
    return Subspace(X.q, X.ambient_dim, null_space(X.q, X.basis, X.ambient_dim))


@lru_cache(maxsize=None)
def enumerate_subspaces(q: int, dim: int, ambient: int) -> Tuple[Subspace, ...]:
    """All dim-dimensional subspaces of GF(q)^ambient, by echelon enumeration.

    Builds every reduced echelon matrix directly from pivot patterns, without
    row reduction, so it doubles as an independent counting oracle.
    """
    if dim == 0:
        return (Subspace.zero(q, ambient),)
    result = []
    for pivots in itertools.combinations(range(ambient), dim):
        free_slots = [
            (i, j) for i, p in enumerate(pivots) for j in range(p + 1, ambient) if j not in pivots
        ]
        for values in itertools.product(range(q), repeat=len(free_slots)):
            rows = [[0] * ambient for _ in range(dim)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, j), v in zip(free_slots, values):
                rows[i][j] = v
            result.append(Subspace(q, ambient, tuple(tuple(r) for r in rows)))
    return tuple(sorted(result, key=lambda s: s.basis))


def gaussian_binomial(m: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of GF(q)^m."""
    if k < 0 or k > m:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def count_gl(n: int, q: int) -> int:
    """Order of GL_n(q)."""
    order = 1
    for i in range(n):
        order *= q**n - q**i
    return order
