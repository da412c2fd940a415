import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from textclust.evaluation import cluster_entropy, total_entropy


def test_pure_is_zero():
    assert cluster_entropy({"a": 7}, q=5) == 0.0


@pytest.mark.parametrize("q", [2, 3, 13, 25])
def test_uniform_is_one(q):
    assert cluster_entropy([4] * q, q) == pytest.approx(1.0, abs=1e-9)


def test_three_one():
    expected = -(0.75 * math.log(0.75) + 0.25 * math.log(0.25)) / math.log(2)
    assert expected == pytest.approx(0.811278, abs=1e-6)
    assert cluster_entropy({"a": 3, "b": 1}, 2) == pytest.approx(expected, abs=1e-12)


def test_zero_counts_ignored():
    assert cluster_entropy([3, 0, 1], 3) == pytest.approx(cluster_entropy([3, 1], 3))


def test_errors():
    with pytest.raises(ValueError):
        cluster_entropy([3], 1)
    with pytest.raises(ValueError):
        cluster_entropy([0, 0], 2)
    with pytest.raises(ValueError):
        cluster_entropy([-1, 2], 2)


def test_weighted_total():
    # cluster 0: 3 of A, 1 of B (0.811278); cluster 1: 12 of A (0).
    assignment = [0] * 4 + [1] * 12
    labels = ["A", "A", "A", "B"] + ["A"] * 12
    rep = total_entropy(assignment, labels)
    assert rep.total == pytest.approx(0.25 * 0.8112781244591328, abs=1e-12)
    assert rep.total == pytest.approx(0.202820, abs=1e-6)
    assert [c.size for c in rep.per_cluster] == [4, 12]
    assert rep.per_cluster[0].class_counts == {"A": 3, "B": 1}
    assert rep.q == 2 and rep.n == 16


def test_all_pure():
    assert total_entropy([0, 0, 1, 1, 2], ["x", "x", "y", "y", "z"]).total == 0.0


def test_single_cluster_is_global_entropy():
    labels = ["a"] * 5 + ["b"] * 3 + ["c"] * 2
    rep = total_entropy([0] * 10, labels)
    assert rep.total == pytest.approx(cluster_entropy([5, 3, 2], 3))


def test_label_count_mismatch():
    with pytest.raises(ValueError):
        total_entropy([0, 1], ["a"])


def test_merging_pure_same_class_clusters():
    labels = ["a", "a", "b", "b"]
    assert total_entropy([0, 1, 2, 2], labels).total == 0.0
    assert total_entropy([0, 0, 2, 2], labels).total == 0.0


def test_split_along_class_lines_never_increases():
    rng = np.random.default_rng(3)
    for _ in range(30):
        labels = rng.choice(list("abcd"), size=30).tolist()
        assignment = rng.integers(3, size=30)
        before = total_entropy(assignment, labels).total
        # Split cluster 0 by class: each (0, class) pair becomes its own cluster.
        split = [a if a != 0 else 10 + "abcd".index(l) for a, l in zip(assignment.tolist(), labels)]
        assert total_entropy(split, labels, q=len(set(labels))).total <= before + 1e-12


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 50), min_size=2, max_size=8).filter(lambda c: sum(c) > 0))
def test_base_invariance_and_range(counts):
    q = len(counts)
    e = cluster_entropy(counts, q)
    assert 0.0 <= e <= 1.0 + 1e-12
    assert cluster_entropy(counts, q, base=10) == pytest.approx(e, abs=1e-9)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 4), st.sampled_from("pqr")), min_size=3, max_size=40),
       st.permutations(range(5)))
def test_relabelling_clusters_keeps_total(pairs, perm):
    assignment = [a for a, _ in pairs]
    labels = [l for _, l in pairs]
    if len(set(labels)) < 2:
        return
    rep = total_entropy(assignment, labels)
    rep2 = total_entropy([perm[a] for a in assignment], labels)
    assert rep2.total == pytest.approx(rep.total, abs=1e-12)
    assert sum(c.size for c in rep.per_cluster) == rep.n
    assert 0.0 <= rep.total <= 1.0 + 1e-12
