"""Sparse term-weight vectors and the arithmetic the clustering code needs.

A :class:`SparseVector` stores its nonzero entries as two parallel arrays
(term ids strictly increasing, float64 weights) plus the dimension of the
term space.  Values are immutable once built.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SparseVector:
    indices: np.ndarray
    values: np.ndarray
    dim: int

    def __post_init__(self):
        idx = np.ascontiguousarray(self.indices, dtype=np.int64)
        val = np.ascontiguousarray(self.values, dtype=np.float64)
        if idx.ndim != 1 or idx.shape != val.shape:
            raise ValueError("indices and values must be 1-D arrays of equal length")
        if self.dim < 0:
            raise ValueError("dim must be nonnegative")
        if idx.size:
            if idx[0] < 0 or idx[-1] >= self.dim:
                raise ValueError(f"term id out of range for dim={self.dim}")
            if np.any(np.diff(idx) <= 0):
                raise ValueError("term ids must be strictly increasing")
            if np.any(val == 0.0):
                raise ValueError("stored weights must be nonzero")
        idx.flags.writeable = False
        val.flags.writeable = False
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "values", val)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, float]], dim: int) -> "SparseVector":
        """Build from ``(term_id, weight)`` pairs in any order.

        Duplicate term ids are summed and exact zeros dropped.
        """
        acc: dict[int, float] = {}
        for t, w in pairs:
            acc[int(t)] = acc.get(int(t), 0.0) + float(w)
        items = sorted((t, w) for t, w in acc.items() if w != 0.0)
        idx = np.array([t for t, _ in items], dtype=np.int64)
        val = np.array([w for _, w in items], dtype=np.float64)
        return cls(idx, val, dim)

    @classmethod
    def from_dense(cls, dense) -> "SparseVector":
        dense = np.asarray(dense, dtype=np.float64)
        idx = np.flatnonzero(dense)
        return cls(idx, dense[idx], dense.shape[0])

    @property
    def nnz(self) -> int:
        return int(self.indices.size)

    def pairs(self) -> list[tuple[int, float]]:
        return list(zip(self.indices.tolist(), self.values.tolist()))

    def norm(self) -> float:
        return math.sqrt(float(np.dot(self.values, self.values)))

    def scale(self, factor: float) -> "SparseVector":
        if factor == 0.0:
            return SparseVector(np.empty(0, np.int64), np.empty(0), self.dim)
        return SparseVector(self.indices, self.values * factor, self.dim)

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.dim)
        out[self.indices] = self.values
        return out

    def __eq__(self, other):
        if not isinstance(other, SparseVector):
            return NotImplemented
        return (
            self.dim == other.dim
            and np.array_equal(self.indices, other.indices)
            and np.array_equal(self.values, other.values)
        )

    def __repr__(self):
        return f"SparseVector({self.pairs()!r}, dim={self.dim})"


class DenseAccumulator:
    """Single-owner dense buffer for summing sparse vectors."""

    def __init__(self, dim: int):
        self.values = np.zeros(dim)

    @property
    def dim(self) -> int:
        return self.values.shape[0]

    def add(self, v: SparseVector, factor: float = 1.0) -> None:
        _check_dims(self.dim, v.dim)
        self.values[v.indices] += factor * v.values

    def to_sparse(self) -> SparseVector:
        return SparseVector.from_dense(self.values)


def _check_dims(da: int, db: int) -> None:
    if da != db:
        raise DimensionMismatch(f"dimension mismatch: {da} != {db}")


def dot(a: SparseVector, b: SparseVector) -> float:
    """Inner product by a two-finger merge over the sorted term ids."""
    _check_dims(a.dim, b.dim)
    ia, va = a.indices.tolist(), a.values.tolist()
    ib, vb = b.indices.tolist(), b.values.tolist()
    i = j = 0
    na, nb = len(ia), len(ib)
    total = 0.0
    while i < na and j < nb:
        ta, tb = ia[i], ib[j]
        if ta == tb:
            total += va[i] * vb[j]
            i += 1
            j += 1
        elif ta < tb:
            i += 1
        else:
            j += 1
    return total


def cosine(a: SparseVector, b: SparseVector) -> float:
    _check_dims(a.dim, b.dim)
    na, nb = a.norm(), b.norm()
    if na == 0.0 or nb == 0.0:
        raise ValueError("cosine is undefined for a zero vector")
    return dot(a, b) / (na * nb)


def euclidean(a: SparseVector, b: SparseVector) -> float:
    # Direct subtraction rather than sqrt(2 - 2 cos): exact for non-unit inputs.
    _check_dims(a.dim, b.dim)
    diff = DenseAccumulator(a.dim)
    diff.add(a)
    diff.add(b, -1.0)
    return math.sqrt(float(np.dot(diff.values, diff.values)))


def normalize(a: SparseVector) -> SparseVector:
    n = a.norm()
    if n == 0.0:
        raise ValueError("cannot normalize a zero vector")
    return SparseVector(a.indices, a.values / n, a.dim)


def composite(vs: Sequence[SparseVector]) -> SparseVector:
    """Elementwise sum of the vectors."""
    if len(vs) == 0:
        raise ValueError("composite of an empty list")
    acc = DenseAccumulator(vs[0].dim)
    for v in vs:
        acc.add(v)
    return acc.to_sparse()


def centroid(vs: Sequence[SparseVector]) -> SparseVector:
    if len(vs) == 0:
        raise ValueError("centroid of an empty list")
    total = composite(vs)
    return SparseVector(total.indices, total.values / len(vs), total.dim)


def to_csr(docs, dim: int | None = None) -> sp.csr_matrix:
    """Stack documents into a CSR matrix (rows are documents).

    A CSR matrix passes through unchanged.
    """
    if sp.issparse(docs):
        return sp.csr_matrix(docs, dtype=np.float64)
    docs = list(docs)
    if dim is None:
        if not docs:
            raise ValueError("cannot infer dimension of an empty document list")
        dim = docs[0].dim
    for d in docs:
        _check_dims(dim, d.dim)
    indptr = np.zeros(len(docs) + 1, dtype=np.int64)
    indptr[1:] = np.cumsum([d.nnz for d in docs])
    indices = np.concatenate([d.indices for d in docs]) if docs else np.empty(0, np.int64)
    data = np.concatenate([d.values for d in docs]) if docs else np.empty(0)
    return sp.csr_matrix((data, indices, indptr), shape=(len(docs), dim))


def from_csr(matrix: sp.csr_matrix) -> list[SparseVector]:
    m = sp.csr_matrix(matrix)
    m.sort_indices()
    m.eliminate_zeros()
    out = []
    for i in range(m.shape[0]):
        lo, hi = m.indptr[i], m.indptr[i + 1]
        out.append(SparseVector(m.indices[lo:hi], m.data[lo:hi], m.shape[1]))
    return out
