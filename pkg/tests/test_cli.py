import math

import numpy as np
import pytest

from conftest import angle_docs
from textclust.cli import main
from textclust.datasets import SyntheticSpec, generate_synthetic, load_cluto, write_cluto
from textclust.refinement import _streams
from textclust.seeding import select_seeds
from textclust.vectorizer import DocTermMatrix


@pytest.fixture
def tiny(tmp_path):
    m = generate_synthetic(SyntheticSpec(n_classes=3, docs_per_class=8, vocab_per_class=30,
                                         shared_vocab=20, doc_length=40, noise_fraction=0.1))
    p = tmp_path / "tiny.mat"
    write_cluto(m, p)
    return p


@pytest.fixture
def angle_mat(tmp_path):
    docs = angle_docs([0, 10, 90, 100])
    m = DocTermMatrix(docs=docs, n_terms=2, doc_ids=["a0", "a10", "a90", "a100"], labels=list("xxyy"))
    p = tmp_path / "angles.mat"
    write_cluto(m, p)
    return p


def read_assign(path):
    return [line.split() for line in path.read_text().splitlines()]


def test_cluster_deterministic(tiny, tmp_path, capsys):
    out1, out2 = tmp_path / "a1", tmp_path / "a2"
    assert main(["cluster", "--input", str(tiny), "--k", "3", "--seed", "42", "--out", str(out1)]) == 0
    assert main(["cluster", "--input", str(tiny), "--k", "3", "--seed", "42", "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    rows = read_assign(out1)
    assert len(rows) == 24 and {r[1] for r in rows} == {"0", "1", "2"}
    text = capsys.readouterr().out
    assert "T=" in text and "total entropy=" in text


def test_cluster_baseline(tiny, tmp_path, capsys):
    out = tmp_path / "b"
    assert main(["cluster", "--input", str(tiny), "--k", "3", "--method", "baseline", "--out", str(out)]) == 0
    assert "method=baseline" in capsys.readouterr().out


def _seed_with_first_draw(n, want):
    for s in range(1000):
        init, _ = _streams(s)
        if int(init.integers(n)) == want:
            return s
    raise AssertionError("no seed found")


@pytest.mark.parametrize("k", [2, 3])
def test_cluster_angles_r1(angle_mat, tmp_path, capsys, k):
    seed = _seed_with_first_draw(4, 0)
    out = tmp_path / "ang"
    rc = main(["cluster", "--input", str(angle_mat), "--k", str(k), "--r", "1", "--seed", str(seed),
               "--no-tfidf", "--out", str(out)])
    assert rc == 0
    expected, _ = select_seeds(angle_docs([0, 10, 90, 100]), k, 1, first=0)
    ids = ["a0", "a10", "a90", "a100"]
    line = next(l for l in capsys.readouterr().out.splitlines() if l.startswith("seeds:"))
    assert line.split()[1:] == [ids[s] for s in expected.seeds]
    if k == 2:
        assert line.split()[1:] == ["a0", "a100"]


def test_usage_errors(tiny):
    with pytest.raises(SystemExit) as e:
        main(["cluster", "--input", str(tiny), "--k", "1"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["cluster", "--k", "2"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["cluster", "--input", str(tiny), "--k", "999"])
    assert e.value.code == 2


def test_zero_norm_documents(tmp_path, capsys):
    corpus = tmp_path / "c"
    for lab, docs in {"p": {"d1": "same words", "d2": "same words here"}, "q": {"d3": "same words"}}.items():
        (corpus / lab).mkdir(parents=True)
        for name, text in docs.items():
            (corpus / lab / f"{name}.txt").write_text(text)
    out = tmp_path / "asg"
    assert main(["cluster", "--corpus", str(corpus), "--k", "2", "--out", str(out)]) == 1
    assert "d1" in capsys.readouterr().err
    # Dropping leaves one document, too few for k=2.
    with pytest.raises(SystemExit):
        main(["cluster", "--corpus", str(corpus), "--k", "2", "--drop-empty", "--out", str(out)])


def test_eval(tmp_path, capsys):
    asg = tmp_path / "asg"
    asg.write_text("".join(f"d{i} {0 if i < 4 else 1}\n" for i in range(16)))
    rcl = tmp_path / "rclass"
    rcl.write_text("A\nA\nA\nB\n" + "A\n" * 12)
    csv_out = tmp_path / "rep.csv"
    assert main(["eval", str(asg), str(rcl), "--csv", str(csv_out)]) == 0
    assert "total entropy=0.202820" in capsys.readouterr().out
    assert csv_out.read_text().splitlines()[-1] == "total,16,0.202820"


def test_eval_pure_and_single(tmp_path, capsys):
    rcl = tmp_path / "rclass"
    rcl.write_text("a\na\nb\nb\nc\n")
    asg = tmp_path / "asg"
    asg.write_text("0 0\n1 0\n2 1\n3 1\n4 2\n")
    assert main(["eval", str(asg), str(rcl)]) == 0
    assert "total entropy=0.000000" in capsys.readouterr().out
    asg.write_text("0 0\n1 0\n2 0\n3 0\n4 0\n")
    assert main(["eval", str(asg), str(rcl)]) == 0
    g = -(2 * 0.4 * math.log(0.4) + 0.2 * math.log(0.2)) / math.log(3)
    assert f"total entropy={g:.6f}" in capsys.readouterr().out


def test_eval_count_mismatch(tmp_path):
    (tmp_path / "asg").write_text("0 0\n1 1\n")
    (tmp_path / "rc").write_text("a\nb\nc\n")
    assert main(["eval", str(tmp_path / "asg"), str(tmp_path / "rc")]) == 1


def _text_corpus(root):
    texts = {
        "sport": ["ball goal match ball", "goal keeper match team", "team ball score"],
        "art": ["paint canvas brush", "canvas museum paint", "brush colour museum"],
    }
    for lab, docs in texts.items():
        (root / lab).mkdir(parents=True)
        for i, t in enumerate(docs):
            (root / lab / f"{lab}{i}.txt").write_text(t)


def test_vectorize_round_trip_and_idempotent(tmp_path):
    _text_corpus(tmp_path / "corpus")
    a, b = tmp_path / "a.mat", tmp_path / "b.mat"
    assert main(["vectorize", "--corpus", str(tmp_path / "corpus"), "--out", str(a)]) == 0
    assert main(["vectorize", "--corpus", str(tmp_path / "corpus"), "--out", str(b)]) == 0
    for suffix in ("", ".rclass", ".clabel", ".rlabel"):
        assert (tmp_path / f"a.mat{suffix}").read_bytes() == (tmp_path / f"b.mat{suffix}").read_bytes()
    m = load_cluto(a)
    assert m.n_docs == 6 and sorted(set(m.labels)) == ["art", "sport"]
    for d in m.docs:
        assert d.norm() == pytest.approx(1.0, abs=1e-12)
    again = tmp_path / "c.mat"
    write_cluto(m, again)
    assert again.read_bytes() == a.read_bytes()


def test_vectorize_no_tfidf(tmp_path):
    src = tmp_path / "raw.mat"
    src.write_text("2 3 4\n1 3 2 4\n2 1 3 1\n")
    out = tmp_path / "out.mat"
    assert main(["vectorize", "--input", str(src), "--no-tfidf", "--out", str(out)]) == 0
    m = load_cluto(out)
    np.testing.assert_allclose(m.docs[0].values, [0.6, 0.8])
    np.testing.assert_allclose(m.docs[1].values, [1 / math.sqrt(2)] * 2)


def test_vectorize_stopwords(tmp_path):
    _text_corpus(tmp_path / "corpus")
    stop = tmp_path / "stop.txt"
    stop.write_text("ball\nMUSEUM\n")
    out = tmp_path / "s.mat"
    assert main(["vectorize", "--corpus", str(tmp_path / "corpus"), "--stopwords", str(stop),
                 "--out", str(out)]) == 0
    terms = (tmp_path / "s.mat.clabel").read_text().split()
    assert "ball" not in terms and "museum" not in terms


def test_vectorize_missing_input(tmp_path):
    assert main(["vectorize", "--input", str(tmp_path / "nope.mat"), "--out", str(tmp_path / "o.mat")]) == 1
