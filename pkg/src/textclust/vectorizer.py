"""Raw text to unit-length tf-idf document vectors."""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .sparse import SparseVector

_TOKEN_RE = re.compile(r"[^\W\d_]+")


def tokenize(text: str) -> list[str]:
    """Lowercased runs of letters, dropping tokens shorter than two characters."""
    return [t for t in _TOKEN_RE.findall(text.lower()) if len(t) >= 2]


@dataclass
class DocTermMatrix:
    """Raw term-frequency vectors for a corpus.

    ``vocab`` maps term strings to term ids; it is empty when the matrix was
    read from a numeric file with no term names.
    """

    docs: list[SparseVector]
    n_terms: int
    doc_ids: list[str]
    vocab: dict[str, int] = field(default_factory=dict)
    labels: list[str] | None = None

    def __post_init__(self):
        if len(self.docs) != len(self.doc_ids):
            raise ValueError("docs and doc_ids differ in length")
        if self.labels is not None and len(self.labels) != len(self.docs):
            raise ValueError("labels and docs differ in length")
        for d in self.docs:
            if d.dim != self.n_terms:
                raise ValueError(f"document dim {d.dim} != n_terms {self.n_terms}")

    @property
    def n_docs(self) -> int:
        return len(self.docs)

    def subset(self, keep: Sequence[int]) -> "DocTermMatrix":
        keep = list(keep)
        return DocTermMatrix(
            docs=[self.docs[i] for i in keep],
            n_terms=self.n_terms,
            doc_ids=[self.doc_ids[i] for i in keep],
            vocab=dict(self.vocab),
            labels=None if self.labels is None else [self.labels[i] for i in keep],
        )


@dataclass(frozen=True)
class TfIdfModel:
    doc_freq: np.ndarray
    n_docs: int

    def idf(self) -> np.ndarray:
        """Natural-log idf per term; never-seen terms get 0."""
        out = np.zeros(self.doc_freq.shape[0])
        seen = self.doc_freq > 0
        out[seen] = np.log(self.n_docs / self.doc_freq[seen])
        return out


def build_matrix(
    docs: Iterable[tuple[str, str]],
    labels: Sequence[str] | None = None,
    stopwords: Iterable[str] = (),
) -> DocTermMatrix:
    """Count terms per document, assigning term ids in first-appearance order."""
    stop = set(stopwords)
    vocab: dict[str, int] = {}
    counts: list[Counter] = []
    doc_ids: list[str] = []
    seen_ids: set[str] = set()
    for doc_id, text in docs:
        if doc_id in seen_ids:
            raise ValueError(f"duplicate doc_id {doc_id!r}")
        seen_ids.add(doc_id)
        doc_ids.append(doc_id)
        c: Counter = Counter()
        for tok in tokenize(text):
            if tok in stop:
                continue
            tid = vocab.setdefault(tok, len(vocab))
            c[tid] += 1
        counts.append(c)
    m = len(vocab)
    vectors = [SparseVector.from_pairs(c.items(), m) for c in counts]
    return DocTermMatrix(
        docs=vectors,
        n_terms=m,
        doc_ids=doc_ids,
        vocab=vocab,
        labels=None if labels is None else list(labels),
    )


def fit_idf(matrix: DocTermMatrix) -> TfIdfModel:
    if matrix.n_docs == 0:
        raise ValueError("cannot fit idf on an empty matrix")
    df = np.zeros(matrix.n_terms, dtype=np.int64)
    for d in matrix.docs:
        df[d.indices[d.values > 0]] += 1
    return TfIdfModel(doc_freq=df, n_docs=matrix.n_docs)


def transform(
    matrix: DocTermMatrix, model: TfIdfModel | None = None
) -> tuple[list[SparseVector], list[int]]:
    """Weight each document by tf*idf and scale it to unit length.

    With ``model=None`` only the unit normalisation is applied (raw counts).

    Returns ``(vectors, rejected)``.  Documents whose weighted norm is zero
    (every term has idf 0) cannot be normalised; they are left out of
    ``vectors`` and their row positions are listed in ``rejected``.
    """
    if model is not None and model.doc_freq.shape[0] != matrix.n_terms:
        raise ValueError("model and matrix disagree on the number of terms")
    idf = None if model is None else model.idf()
    out: list[SparseVector] = []
    rejected: list[int] = []
    for i, d in enumerate(matrix.docs):
        w = d.values if idf is None else d.values * idf[d.indices]
        keep = w != 0.0
        idx, w = d.indices[keep], w[keep]
        n = math.sqrt(float(np.dot(w, w)))
        if n == 0.0:
            rejected.append(i)
            continue
        out.append(SparseVector(idx, w / n, matrix.n_terms))
    return out, rejected


def read_corpus_dir(root, stopwords: Iterable[str] = ()) -> DocTermMatrix:
    """Read ``<root>/<class_label>/<doc_id>.txt`` files in sorted order."""
    root = Path(root)
    if not root.is_dir():
        raise FileNotFoundError(f"corpus directory not found: {root}")
    docs: list[tuple[str, str]] = []
    labels: list[str] = []
    for class_dir in sorted(p for p in root.iterdir() if p.is_dir()):
        for f in sorted(class_dir.glob("*.txt")):
            text = f.read_bytes().decode("utf-8", errors="replace")
            docs.append((f.stem, text))
            labels.append(class_dir.name)
    return build_matrix(docs, labels, stopwords=stopwords)


def read_stopwords(path) -> set[str]:
    text = Path(path).read_text(encoding="utf-8", errors="replace")
    return {w.lower() for w in text.split()}


def unit_vectors(matrix: DocTermMatrix, tfidf: bool = True) -> tuple[list[SparseVector], list[int]]:
    """Fit idf on ``matrix`` (unless ``tfidf`` is False) and return unit vectors."""
    return transform(matrix, fit_idf(matrix) if tfidf else None)
