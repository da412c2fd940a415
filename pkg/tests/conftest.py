import math

import numpy as np
import pytest

from textclust.sparse import SparseVector


def random_unit_docs(rng, n, m, density=0.5, signed=False):
    """``n`` random unit sparse vectors in ``m`` dimensions, none empty."""
    docs = []
    for _ in range(n):
        dense = rng.random(m) * (rng.random(m) < density)
        if signed:
            dense *= rng.choice([-1.0, 1.0], size=m)
        if not dense.any():
            dense[rng.integers(m)] = 1.0
        dense /= np.linalg.norm(dense)
        docs.append(SparseVector.from_dense(dense))
    return docs


def angle_docs(degrees):
    out = []
    for deg in degrees:
        t = math.radians(deg)
        out.append(SparseVector.from_pairs([(0, math.cos(t)), (1, math.sin(t))], 2))
    return out


def dense_T(docs, assignment):
    """Brute-force criterion: sum of cos(member, centroid) with dense numpy."""
    D = np.array([d.to_dense() for d in docs])
    total = 0.0
    for r in set(assignment):
        members = D[np.asarray(assignment) == r]
        c = members.mean(axis=0)
        total += float((members @ c).sum() / np.linalg.norm(c))
    return total


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def angles():
    # Document order fixes the tie-break: 0 deg, 10 deg, 90 deg, 100 deg.
    return angle_docs([0, 10, 90, 100])
