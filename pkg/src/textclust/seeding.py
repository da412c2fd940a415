"""Distance-based seed selection and nearest-seed initial clustering.

The first seed is a uniformly random document, the second is the document
farthest from it.  Every later seed comes from a two-stage filter: rank the
remaining documents by their summed distance to the current seeds, keep the
top ``r``, and take the one with the smallest summed *squared* distance.

Random draws use numpy's PCG64 bit generator; the first seed is
``Generator(PCG64(rng_seed)).integers(n)`` (Lemire's bounded rejection
method), so a given ``rng_seed`` picks the same document on every platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from . import sparse as spv
from .criterion import ClusteringSolution

# Scores closer than this are ties, resolved toward the lower index.
TIE_TOL = 1e-12


@dataclass(frozen=True)
class SeedSet:
    seeds: tuple[int, ...]
    r_param: int
    rng_seed: int | None = None

    def __len__(self):
        return len(self.seeds)


@dataclass(frozen=True)
class SeedStep:
    candidates: tuple[int, ...]
    dist_sums: tuple[float, ...]
    sq_dist_sums: tuple[float, ...]
    chosen: int


@dataclass
class SeedTrace:
    steps: list[SeedStep] = field(default_factory=list)


def make_rng(rng_seed) -> np.random.Generator:
    if isinstance(rng_seed, np.random.Generator):
        return rng_seed
    return np.random.Generator(np.random.PCG64(rng_seed))


def default_r(n_docs: int, k: int) -> int:
    """Candidate-pool size heuristic: one tenth of the average cluster size."""
    return max(1, math.ceil(n_docs / (10 * k)))


def _as_matrix(docs) -> sp.csr_matrix:
    return docs if sp.isspmatrix_csr(docs) else spv.to_csr(docs)


def _distances_to(X: sp.csr_matrix, sqnorms: np.ndarray, j: int) -> np.ndarray:
    row = X.getrow(j)
    dots = np.asarray((X @ row.T).todense()).ravel()
    return np.sqrt(np.maximum(sqnorms + sqnorms[j] - 2.0 * dots, 0.0))


def _best(scores: np.ndarray, candidates: np.ndarray, maximize: bool) -> int:
    """Index into ``candidates`` of the best score; near-ties go to the lowest doc id."""
    vals = scores[candidates]
    target = vals.max() if maximize else vals.min()
    close = candidates[np.abs(vals - target) <= TIE_TOL]
    return int(close.min())


def select_seeds(docs, k: int, r: int | None = None, rng_seed=None, first: int | None = None):
    """Pick ``k`` seed documents.

    Parameters
    ----------
    docs : list of SparseVector or CSR matrix
        Unit-length document vectors.
    k : int
        Number of seeds, ``2 <= k <= n``.
    r : int, optional
        Candidate-pool size; defaults to :func:`default_r`.
    rng_seed : int or numpy Generator
        Source of the random first seed.
    first : int, optional
        Use this document as the first seed instead of drawing one.

    Returns
    -------
    (SeedSet, SeedTrace)
    """
    X = _as_matrix(docs)
    n = X.shape[0]
    if k < 2:
        raise ValueError("k must be at least 2")
    if k > n:
        raise ValueError(f"k={k} exceeds the number of documents ({n})")
    if r is None:
        r = default_r(n, k)
    if not 1 <= r <= n:
        raise ValueError(f"r must lie in [1, {n}], got {r}")

    sqnorms = np.asarray(X.multiply(X).sum(axis=1)).ravel()
    if first is None:
        first = int(make_rng(rng_seed).integers(n))
    elif not 0 <= first < n:
        raise IndexError("first seed out of range")

    is_seed = np.zeros(n, dtype=bool)
    dist_sum = np.zeros(n)
    sq_sum = np.zeros(n)
    seeds: list[int] = []
    trace = SeedTrace()

    def add(j: int) -> None:
        seeds.append(j)
        is_seed[j] = True
        dj = _distances_to(X, sqnorms, j)
        dist_sum[:] += dj
        sq_sum[:] += dj * dj

    add(first)
    rest = np.flatnonzero(~is_seed)
    add(_best(dist_sum, rest, maximize=True))

    while len(seeds) < k:
        pool = np.flatnonzero(~is_seed)
        top: list[int] = []
        for _ in range(min(r, pool.size)):
            j = _best(dist_sum, pool, maximize=True)
            top.append(j)
            pool = pool[pool != j]
        top_arr = np.array(top, dtype=np.int64)
        chosen = _best(sq_sum, top_arr, maximize=False)
        trace.steps.append(SeedStep(
            candidates=tuple(top),
            dist_sums=tuple(dist_sum[top_arr].tolist()),
            sq_dist_sums=tuple(sq_sum[top_arr].tolist()),
            chosen=chosen,
        ))
        add(chosen)

    seed_int = rng_seed if isinstance(rng_seed, (int, np.integer)) else None
    return SeedSet(tuple(seeds), int(r), seed_int), trace


def nearest_seed(docs, seeds) -> np.ndarray:
    """Cluster index of the nearest seed for every document (ties to the lower index)."""
    X = _as_matrix(docs)
    seeds = np.asarray(seeds, dtype=np.int64)
    sqnorms = np.asarray(X.multiply(X).sum(axis=1)).ravel()
    S = X[seeds]
    dots = np.asarray((X @ S.T).todense())
    d2 = np.maximum(sqnorms[:, None] + sqnorms[seeds][None, :] - 2.0 * dots, 0.0)
    dist = np.sqrt(d2)
    best = dist.min(axis=1, keepdims=True)
    # First column within tolerance of the minimum.
    assignment = np.argmax(dist - best <= TIE_TOL, axis=1).astype(np.int64)
    assignment[seeds] = np.arange(seeds.size)
    return assignment


def assign_to_seeds(docs, seed_set) -> ClusteringSolution:
    """Initial clustering: each seed founds a cluster, every other document joins its nearest seed."""
    seeds = seed_set.seeds if isinstance(seed_set, SeedSet) else tuple(seed_set)
    if len(set(seeds)) != len(seeds):
        raise ValueError("seed indices must be distinct")
    X = _as_matrix(docs)
    assignment = nearest_seed(X, seeds)
    return ClusteringSolution.from_assignment(X, assignment, len(seeds))
