"""Internal criterion T = sum_r sum_{d in S_r} cos(d, C_r) and single-move deltas.

For unit-length documents the criterion collapses to the sum of the norms of
the cluster composite vectors, which is what :class:`ClusteringSolution`
maintains.  :func:`criterion_value` evaluates the cosine sum directly and is
kept as an independent check on that bookkeeping.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from . import sparse as spv
from .sparse import SparseVector


class InconsistentSolution(ValueError):
    pass


def _row(docs, i: int) -> tuple[np.ndarray, np.ndarray]:
    if sp.issparse(docs):
        lo, hi = docs.indptr[i], docs.indptr[i + 1]
        return docs.indices[lo:hi], docs.data[lo:hi]
    d = docs[i]
    return d.indices, d.values


def _dim(docs) -> int:
    if sp.issparse(docs):
        return docs.shape[1]
    return docs[0].dim if len(docs) else 0


class ClusteringSolution:
    """Assignment of documents to ``k`` clusters with dense composite vectors.

    Mutated in place by :func:`apply_move`; not safe to share between writers.
    """

    def __init__(self, assignment, k: int, composites, sizes, norms=None):
        self.assignment = np.asarray(assignment, dtype=np.int64)
        self.k = int(k)
        self.composites = np.asarray(composites, dtype=np.float64)
        self.sizes = np.asarray(sizes, dtype=np.int64)
        if norms is None:
            norms = np.sqrt(np.einsum("ij,ij->i", self.composites, self.composites))
        self.norms = np.asarray(norms, dtype=np.float64)
        self.cached_t = float(self.norms.sum())

    @classmethod
    def from_assignment(cls, docs, assignment, k: int) -> "ClusteringSolution":
        assignment = np.asarray(assignment, dtype=np.int64)
        n = assignment.shape[0]
        if sp.issparse(docs):
            if docs.shape[0] != n:
                raise ValueError("assignment length differs from number of documents")
        elif len(docs) != n:
            raise ValueError("assignment length differs from number of documents")
        if n and (assignment.min() < 0 or assignment.max() >= k):
            raise ValueError("cluster index out of range")
        m = _dim(docs)
        if n:
            X = docs if sp.issparse(docs) else spv.to_csr(docs, m)
            member = sp.csr_matrix(
                (np.ones(n), (assignment, np.arange(n))), shape=(k, n)
            )
            composites = (member @ X).toarray()
        else:
            composites = np.zeros((k, m))
        sizes = np.bincount(assignment, minlength=k)
        return cls(assignment, k, composites, sizes)

    @property
    def n_docs(self) -> int:
        return int(self.assignment.shape[0])

    def copy(self) -> "ClusteringSolution":
        return ClusteringSolution(
            self.assignment.copy(), self.k, self.composites.copy(),
            self.sizes.copy(), self.norms.copy(),
        )

    def members(self, r: int) -> np.ndarray:
        return np.flatnonzero(self.assignment == r)

    def check(self, docs, atol_composite: float = 1e-7, atol_t: float = 1e-6) -> None:
        """Recompute everything from scratch and raise on any disagreement."""
        if np.any(self.assignment < 0) or np.any(self.assignment >= self.k):
            raise InconsistentSolution("cluster index out of range")
        sizes = np.bincount(self.assignment, minlength=self.k)
        if not np.array_equal(sizes, self.sizes):
            raise InconsistentSolution("cluster sizes disagree with assignment")
        if np.any(self.sizes < 1):
            raise InconsistentSolution("empty cluster")
        fresh = ClusteringSolution.from_assignment(docs, self.assignment, self.k)
        if not np.allclose(fresh.composites, self.composites, rtol=0, atol=atol_composite):
            raise InconsistentSolution("composite vectors drifted from their members")
        if abs(fresh.cached_t - self.cached_t) > atol_t:
            raise InconsistentSolution(
                f"cached criterion {self.cached_t!r} != recomputed {fresh.cached_t!r}"
            )


def composite_norm_sum(sol: ClusteringSolution) -> float:
    """Closed-form criterion for unit documents: sum of composite norms."""
    return float(np.sqrt(np.einsum("ij,ij->i", sol.composites, sol.composites)).sum())


def criterion_value(docs: Sequence[SparseVector], sol: ClusteringSolution) -> float:
    """Sum over clusters of the cosine between each member and its centroid.

    Evaluated member by member from sparse centroids, independently of the
    composites cached on ``sol``.
    """
    if not sp.issparse(docs):
        docs = list(docs)
    else:
        docs = spv.from_csr(docs)
    total = 0.0
    for r in range(sol.k):
        members = [docs[i] for i in np.flatnonzero(sol.assignment == r)]
        if not members:
            continue
        c = spv.centroid(members)
        if c.norm() == 0.0:
            raise ValueError(f"cluster {r} has a zero composite vector")
        total += sum(spv.cosine(d, c) for d in members)
    return total


def _validate_move(sol: ClusteringSolution, doc: int, to: int) -> int:
    if not 0 <= to < sol.k:
        raise IndexError(f"target cluster {to} out of range [0, {sol.k})")
    if not 0 <= doc < sol.n_docs:
        raise IndexError(f"document {doc} out of range")
    src = int(sol.assignment[doc])
    if src == to:
        raise ValueError("document is already in the target cluster")
    if sol.sizes[src] < 2:
        raise ValueError("cannot move the sole member of a cluster")
    return src


def _norm_change(norm: float, proj: float, dd: float, sign: float) -> float:
    # ||D + s*d|| - ||D|| written as a ratio to avoid cancellation.
    num = sign * 2.0 * proj + dd
    new = math.sqrt(max(norm * norm + num, 0.0))
    den = new + norm
    return num / den if den > 0.0 else 0.0


def move_delta(docs, sol: ClusteringSolution, doc: int, to: int) -> float:
    """Change in T if ``doc`` moved to cluster ``to`` (positive means better)."""
    src = _validate_move(sol, doc, to)
    idx, val = _row(docs, doc)
    dd = float(np.dot(val, val))
    p_from = float(np.dot(sol.composites[src, idx], val))
    p_to = float(np.dot(sol.composites[to, idx], val))
    return (_norm_change(sol.norms[to], p_to, dd, 1.0)
            + _norm_change(sol.norms[src], p_from, dd, -1.0))


def apply_move(docs, sol: ClusteringSolution, doc: int, to: int) -> ClusteringSolution:
    """Move ``doc`` into cluster ``to``, updating ``sol`` in place."""
    src = _validate_move(sol, doc, to)
    idx, val = _row(docs, doc)
    sol.composites[src, idx] -= val
    sol.composites[to, idx] += val
    sol.sizes[src] -= 1
    sol.sizes[to] += 1
    sol.assignment[doc] = to
    for r in (src, to):
        row = sol.composites[r]
        sol.norms[r] = math.sqrt(float(np.dot(row, row)))
    sol.cached_t = float(sol.norms.sum())
    return sol
