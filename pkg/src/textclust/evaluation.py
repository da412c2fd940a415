"""Entropy of a clustering against ground-truth class labels."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .criterion import ClusteringSolution


@dataclass(frozen=True)
class ClusterEntropy:
    cluster: int
    size: int
    entropy: float
    class_counts: dict[str, int]


@dataclass(frozen=True)
class EntropyReport:
    per_cluster: list[ClusterEntropy]
    total: float
    q: int
    n: int

    def lines(self) -> list[str]:
        out = [f"clusters={len(self.per_cluster)} docs={self.n} classes={self.q}"]
        for c in self.per_cluster:
            counts = " ".join(f"{k}:{v}" for k, v in sorted(c.class_counts.items()))
            out.append(f"cluster {c.cluster} size={c.size} entropy={c.entropy:.6f} {counts}")
        out.append(f"total entropy={self.total:.6f}")
        return out


def cluster_entropy(class_counts: Mapping[str, int] | Sequence[int], q: int, base: float | None = None) -> float:
    """Normalised entropy of one cluster's class distribution.

    ``-(1/log q) * sum_i p_i log p_i`` with ``0 log 0 = 0``.  ``base`` only
    changes the logarithm used; the normalisation makes it cancel.
    """
    if q < 2:
        raise ValueError("entropy needs at least two classes (log q would be 0)")
    counts = list(class_counts.values()) if isinstance(class_counts, Mapping) else list(class_counts)
    if any(c < 0 for c in counts):
        raise ValueError("class counts must be nonnegative")
    total = sum(counts)
    if total < 1:
        raise ValueError("cluster is empty")
    log = math.log if base is None else (lambda x: math.log(x, base))
    h = 0.0
    for c in counts:
        if c:
            p = c / total
            h -= p * log(p)
    return h / log(q)


def total_entropy(sol, labels: Sequence[str], q: int | None = None) -> EntropyReport:
    """Size-weighted entropy over all clusters.

    ``sol`` is a :class:`ClusteringSolution` or a plain assignment array.
    ``q`` defaults to the number of distinct labels.
    """
    assignment = sol.assignment if isinstance(sol, ClusteringSolution) else np.asarray(sol)
    labels = list(labels)
    if len(labels) != len(assignment):
        raise ValueError(f"{len(labels)} labels for {len(assignment)} documents")
    if q is None:
        q = len(set(labels))
    n = len(labels)
    groups: dict[int, Counter] = {}
    for a, lab in zip(assignment.tolist(), labels):
        groups.setdefault(a, Counter())[lab] += 1
    per_cluster = []
    total = 0.0
    for r in sorted(groups):
        counts = groups[r]
        size = sum(counts.values())
        e = cluster_entropy(counts, q)
        per_cluster.append(ClusterEntropy(r, size, e, dict(counts)))
        total += size / n * e
    return EntropyReport(per_cluster, total, q, n)
