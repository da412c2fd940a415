import csv

import numpy as np
import pytest

from textclust.bench import BenchConfig, aggregate_path, run_bench, write_csv
from textclust.cli import main
from textclust.datasets import SyntheticSpec, generate_synthetic
from textclust.sparse import to_csr
from textclust.vectorizer import unit_vectors


@pytest.fixture(scope="module")
def small():
    m = generate_synthetic(SyntheticSpec(n_classes=4, docs_per_class=10, vocab_per_class=40,
                                         shared_vocab=30, doc_length=30, noise_fraction=0.2))
    vecs, rejected = unit_vectors(m)
    assert not rejected
    return to_csr(vecs), m.labels


def test_counts_and_order(small):
    X, labels = small
    cfg = BenchConfig("s", k_values=(2, 4, 6), trials=3)
    res = run_bench(X, labels, cfg, workers=1)
    assert len(res.rows) == 2 * 3 * 3 and len(res.aggregates) == 6
    keys = [(r.method, r.k, r.trial) for r in res.rows]
    assert keys == [(m, k, t) for m in ("proposed", "baseline") for k in (2, 4, 6) for t in range(3)]
    for a in res.aggregates:
        vals = [r.entropy for r in res.rows if r.method == a.method and r.k == a.k]
        assert a.mean_entropy == pytest.approx(np.mean(vals), abs=1e-12)
        assert a.std_entropy == pytest.approx(np.std(vals), abs=1e-12)


def test_paired_seeds(small):
    X, labels = small
    res = run_bench(X, labels, BenchConfig("s", k_values=(3,), trials=4, base_seed=100), workers=1)
    by = {}
    for r in res.rows:
        by.setdefault(r.method, []).append(r.rng_seed)
    assert by["proposed"] == by["baseline"] == [100, 101, 102, 103]


def test_failures_are_recorded(small):
    X, labels = small
    res = run_bench(X, labels, BenchConfig("s", k_values=(3, 999), trials=1), workers=1)
    assert [r.k for r in res.failed] == [999, 999]
    assert all("ValueError" in r.error for r in res.failed)
    assert len(res.rows) == 4


def test_parallel_matches_serial(small, tmp_path):
    X, labels = small
    cfg = BenchConfig("s", k_values=(3, 5), trials=2)
    a = run_bench(X, labels, cfg, workers=1)
    b = run_bench(X, labels, cfg, workers=2)
    write_csv(a, tmp_path / "a.csv")
    write_csv(b, tmp_path / "b.csv")
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_csv_layout(small, tmp_path):
    X, labels = small
    res = run_bench(X, labels, BenchConfig("s", k_values=(3,), trials=2), workers=1)
    trials, agg = write_csv(res, tmp_path / "r.csv", timings=True)
    assert agg == aggregate_path(tmp_path / "r.csv") == tmp_path / "r_aggregate.csv"
    rows = list(csv.DictReader(trials.open()))
    assert len(rows) == 4 and "wall_time_ms" in rows[0]
    assert rows[0]["entropy"].count(".") == 1 and len(rows[0]["entropy"].split(".")[1]) == 6
    arows = list(csv.DictReader(agg.open()))
    assert [r["method"] for r in arows] == ["proposed", "baseline"]


@pytest.mark.parametrize("kwargs", [dict(trials=0), dict(k_values=()), dict(k_values=(1,)),
                                    dict(methods=("kmeans",))])
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        BenchConfig("x", **kwargs)


def test_cli_bench(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("TEXTCLUST_THREADS", "1")
    out = tmp_path / "bench.csv"
    args = ["bench", "--synthetic", "--classes", "3", "--docs-per-class", "8", "--noise", "0.2",
            "--k-list", "2,3", "--trials", "2", "--out", str(out)]
    assert main(args) == 0
    first = out.read_bytes(), aggregate_path(out).read_bytes()
    assert main(args) == 0
    assert (out.read_bytes(), aggregate_path(out).read_bytes()) == first
    assert len(out.read_text().splitlines()) == 1 + 2 * 2 * 2
    assert "mean_entropy" in capsys.readouterr().out


def test_cli_bench_bad_k_list(tmp_path):
    with pytest.raises(SystemExit) as e:
        main(["bench", "--synthetic", "--k-list", "1,2", "--out", str(tmp_path / "x.csv")])
    assert e.value.code == 2
