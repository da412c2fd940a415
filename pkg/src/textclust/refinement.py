"""Greedy single-document refinement and the two full clustering pipelines."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .criterion import ClusteringSolution, InconsistentSolution, apply_move
from .seeding import _as_matrix, assign_to_seeds, make_rng, select_seeds

log = logging.getLogger(__name__)

METHODS = ("proposed", "baseline")

# Smallest criterion gain that counts as an improvement.
MIN_GAIN = 1e-12


@dataclass
class RefinementStats:
    iterations: int = 0
    moves_accepted: int = 0
    t_initial: float = 0.0
    t_history: list[float] = field(default_factory=list)
    converged: bool = False
    seeds: tuple[int, ...] = ()


def refine(
    docs,
    sol: ClusteringSolution,
    rng_seed=None,
    max_iters: int = 500,
    min_gain: float = MIN_GAIN,
    audit_every: int | None = None,
) -> tuple[ClusteringSolution, RefinementStats]:
    """Move documents one at a time while the criterion strictly improves.

    Each iteration visits every document once in a fresh random order and
    moves it to whichever other cluster gives the largest gain above
    ``min_gain`` (ties go to the lower cluster index).  Documents that are
    alone in their cluster stay put, so no cluster ever empties.  Stops after
    an iteration with no moves, or after ``max_iters`` iterations, in which
    case ``stats.converged`` is False.

    ``sol`` is updated in place and also returned.
    """
    X = _as_matrix(docs)
    n = X.shape[0]
    if sol.n_docs != n:
        raise InconsistentSolution("solution and documents differ in size")
    if np.any(sol.sizes < 1) or not np.array_equal(
        np.bincount(sol.assignment, minlength=sol.k), sol.sizes
    ):
        raise InconsistentSolution("solution sizes are inconsistent or a cluster is empty")

    rng = make_rng(rng_seed)
    indptr, indices, data = X.indptr, X.indices, X.data
    stats = RefinementStats(t_initial=sol.cached_t)
    composites, norms = sol.composites, sol.norms

    while stats.iterations < max_iters:
        stats.iterations += 1
        moved = 0
        for i in rng.permutation(n):
            src = sol.assignment[i]
            if sol.sizes[src] < 2:
                continue
            lo, hi = indptr[i], indptr[i + 1]
            idx, val = indices[lo:hi], data[lo:hi]
            proj = composites[:, idx] @ val
            dd = float(val @ val)
            num_to = 2.0 * proj + dd
            gain_to = num_to / (np.sqrt(np.maximum(norms * norms + num_to, 0.0)) + norms)
            num_from = dd - 2.0 * proj[src]
            nf = norms[src]
            change_from = num_from / (np.sqrt(max(nf * nf + num_from, 0.0)) + nf)
            delta = gain_to + change_from
            delta[src] = -np.inf
            best = int(np.argmax(delta))
            if delta[best] > min_gain:
                before = sol.cached_t
                apply_move(X, sol, i, best)
                if sol.cached_t < before:
                    log.debug("criterion fell by %.3g on move of doc %d", before - sol.cached_t, i)
                moved += 1
                stats.moves_accepted += 1
                if audit_every and stats.moves_accepted % audit_every == 0:
                    sol.check(X)
        stats.t_history.append(sol.cached_t)
        log.debug("iteration %d: %d moves, T=%.9f", stats.iterations, moved, sol.cached_t)
        if moved == 0:
            stats.converged = True
            break
    if not stats.converged:
        log.warning("refinement hit the iteration cap (%d) before converging", max_iters)
    return sol, stats


def random_initial(docs, k: int, rng_seed=None) -> ClusteringSolution:
    """Baseline start: ``k`` distinct random documents as seeds, nearest-seed assignment."""
    X = _as_matrix(docs)
    n = X.shape[0]
    if k < 2:
        raise ValueError("k must be at least 2")
    if k > n:
        raise ValueError(f"k={k} exceeds the number of documents ({n})")
    return assign_to_seeds(X, _random_seeds(n, k, rng_seed))


def _random_seeds(n: int, k: int, rng_seed) -> list[int]:
    return [int(s) for s in make_rng(rng_seed).choice(n, size=k, replace=False)]


def _streams(rng_seed) -> tuple[np.random.Generator, np.random.Generator]:
    init, ref = np.random.SeedSequence(rng_seed).spawn(2)
    return np.random.Generator(np.random.PCG64(init)), np.random.Generator(np.random.PCG64(ref))


def cluster(
    docs,
    k: int,
    r: int | None = None,
    rng_seed: int = 0,
    method: str = "proposed",
    max_iters: int = 500,
) -> tuple[ClusteringSolution, RefinementStats]:
    """Initial clustering followed by refinement.

    ``method="proposed"`` seeds with :func:`select_seeds`; ``"baseline"``
    uses :func:`random_initial`.  The seed sequence built from ``rng_seed``
    is split into one stream for initialisation and one for the refinement
    visit orders, so both methods share the refinement randomness for a
    given seed.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    X = _as_matrix(docs)
    init_rng, refine_rng = _streams(rng_seed)
    if method == "proposed":
        seed_set, _ = select_seeds(X, k, r, init_rng)
        sol = assign_to_seeds(X, seed_set)
        seeds = seed_set.seeds
    else:
        if not 2 <= k <= X.shape[0]:
            raise ValueError(f"k must lie in [2, {X.shape[0]}], got {k}")
        seeds = _random_seeds(X.shape[0], k, init_rng)
        sol = assign_to_seeds(X, seeds)
    sol, stats = refine(X, sol, refine_rng, max_iters=max_iters)
    stats.seeds = tuple(int(s) for s in seeds)
    return sol, stats
