"""CLUTO sparse-matrix files and a labelled synthetic corpus generator.

CLUTO ``.mat`` dialect::

    n_rows n_cols n_nonzeros
    col val col val ...        <- one line per row, columns 1-based

Companion files share the matrix path as prefix: ``.rclass`` (one class
label per row), ``.rlabel`` (one row id per row) and ``.clabel`` (one term
per column).  Only ``.rclass`` is required for evaluation; the others are
read when present.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .sparse import SparseVector
from .vectorizer import DocTermMatrix


class ClutoFormatError(ValueError):
    def __init__(self, path, lineno, msg):
        super().__init__(f"{path}:{lineno}: {msg}")
        self.path = path
        self.lineno = lineno


@dataclass
class ClutoMatrix:
    n_rows: int
    n_cols: int
    n_nonzeros: int
    rows: list[list[tuple[int, float]]]
    row_classes: list[str] | None = None


def _companion(mat_path, suffix: str) -> Path:
    return Path(str(mat_path) + suffix)


def _read_lines(path) -> list[str]:
    return Path(path).read_text(encoding="utf-8", errors="replace").splitlines()


def read_cluto_mat(mat_path) -> ClutoMatrix:
    lines = _read_lines(mat_path)
    if not lines:
        raise ClutoFormatError(mat_path, 1, "missing header")
    header = lines[0].split()
    if len(header) != 3:
        raise ClutoFormatError(mat_path, 1, "header must be 'n_rows n_cols n_nonzeros'")
    try:
        n_rows, n_cols, nnz = (int(x) for x in header)
    except ValueError:
        raise ClutoFormatError(mat_path, 1, f"non-integer header {lines[0]!r}") from None

    body = lines[1:]
    # Trailing blank lines are padding; blank lines inside the body are empty rows.
    while len(body) > n_rows and not body[-1].strip():
        body.pop()
    if len(body) != n_rows:
        raise ClutoFormatError(
            mat_path, len(lines) + 1, f"header declares {n_rows} rows, found {len(body)}"
        )
    rows = []
    seen = 0
    for lineno, line in enumerate(body, start=2):
        tok = line.split()
        if len(tok) % 2:
            raise ClutoFormatError(mat_path, lineno, "odd number of fields (expected col/value pairs)")
        row = []
        cols = set()
        for c, v in zip(tok[0::2], tok[1::2]):
            try:
                col, val = int(c), float(v)
            except ValueError:
                raise ClutoFormatError(mat_path, lineno, f"bad pair {c!r} {v!r}") from None
            if not 1 <= col <= n_cols:
                raise ClutoFormatError(mat_path, lineno, f"column {col} outside 1..{n_cols}")
            if col in cols:
                raise ClutoFormatError(mat_path, lineno, f"column {col} repeated")
            cols.add(col)
            row.append((col - 1, val))
        seen += len(row)
        rows.append(row)
    if seen != nnz:
        raise ClutoFormatError(mat_path, 1, f"header declares {nnz} nonzeros, found {seen}")
    return ClutoMatrix(n_rows, n_cols, nnz, rows)


def _read_list(path, expected: int, what: str) -> list[str]:
    items = [ln.strip() for ln in _read_lines(path)]
    while items and not items[-1]:
        items.pop()
    if len(items) != expected:
        raise ValueError(f"{path}: {len(items)} {what} for {expected} rows")
    return items


def load_cluto(mat_path, rclass_path=None) -> DocTermMatrix:
    """Read a CLUTO matrix (plus labels) into a :class:`DocTermMatrix`.

    ``rclass_path`` defaults to ``<mat_path>.rclass`` when that file exists.
    """
    mat = read_cluto_mat(mat_path)
    if rclass_path is None and _companion(mat_path, ".rclass").exists():
        rclass_path = _companion(mat_path, ".rclass")
    labels = None
    if rclass_path is not None:
        labels = _read_list(rclass_path, mat.n_rows, "class labels")
    rlabel = _companion(mat_path, ".rlabel")
    doc_ids = (_read_list(rlabel, mat.n_rows, "row labels") if rlabel.exists()
               else [str(i) for i in range(mat.n_rows)])
    clabel = _companion(mat_path, ".clabel")
    vocab = {}
    if clabel.exists():
        terms = _read_list(clabel, mat.n_cols, "column labels")
        vocab = {t: i for i, t in enumerate(terms)}
    docs = [SparseVector.from_pairs(r, mat.n_cols) for r in mat.rows]
    return DocTermMatrix(docs=docs, n_terms=mat.n_cols, doc_ids=doc_ids, vocab=vocab, labels=labels)


def format_value(v: float) -> str:
    """Integral values print as integers, everything else as the shortest round-trip repr."""
    if float(v).is_integer():
        return str(int(v))
    return repr(float(v))


def write_cluto(matrix: DocTermMatrix, mat_path, vectors: Sequence[SparseVector] | None = None) -> None:
    """Write ``matrix`` (or replacement ``vectors`` for its rows) as CLUTO files.

    Writes ``.rclass`` when labels exist, ``.clabel`` when a vocabulary
    exists, and ``.rlabel`` unless the doc ids are just row numbers.
    """
    rows = matrix.docs if vectors is None else list(vectors)
    if len(rows) != matrix.n_docs:
        raise ValueError("vectors and matrix differ in row count")
    nnz = sum(v.nnz for v in rows)
    out = [f"{len(rows)} {matrix.n_terms} {nnz}"]
    for v in rows:
        out.append(" ".join(f"{t + 1} {format_value(w)}" for t, w in v.pairs()))
    mat_path = Path(mat_path)
    mat_path.write_text("\n".join(out) + "\n", encoding="utf-8")
    if matrix.labels is not None:
        _companion(mat_path, ".rclass").write_text("".join(f"{x}\n" for x in matrix.labels), encoding="utf-8")
    if matrix.vocab:
        terms = sorted(matrix.vocab, key=matrix.vocab.__getitem__)
        _companion(mat_path, ".clabel").write_text("".join(f"{t}\n" for t in terms), encoding="utf-8")
    if matrix.doc_ids != [str(i) for i in range(matrix.n_docs)]:
        _companion(mat_path, ".rlabel").write_text("".join(f"{x}\n" for x in matrix.doc_ids), encoding="utf-8")


def find_cluto_dataset(name: str, search=None) -> Path | None:
    """Locate ``<name>.mat`` in ``$TEXTCLUST_DATA`` or the usual local spots."""
    dirs = list(search or [])
    if os.environ.get("TEXTCLUST_DATA"):
        dirs.append(os.environ["TEXTCLUST_DATA"])
    dirs += ["data", "datasets", Path.home() / "datasets"]
    for d in dirs:
        for cand in (Path(d) / f"{name}.mat", Path(d) / "datasets" / f"{name}.mat"):
            if cand.exists() and _companion(cand, ".rclass").exists():
                return cand
    return None


@dataclass(frozen=True)
class SyntheticSpec:
    """Shape of a generated corpus.

    Each class owns a private block of ``vocab_per_class`` terms; every
    token of a document is drawn from the shared block with probability
    ``noise_fraction`` and from its class block otherwise, uniformly within
    the block.  Defaults mirror 15 classes of 100 documents.
    """

    n_classes: int = 15
    docs_per_class: int = 100
    vocab_per_class: int = 200
    shared_vocab: int = 500
    doc_length: int = 80
    noise_fraction: float = 0.0
    rng_seed: int = 0

    def __post_init__(self):
        for name in ("n_classes", "docs_per_class", "vocab_per_class", "shared_vocab", "doc_length"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")
        if not 0.0 <= self.noise_fraction < 1.0:
            raise ValueError("noise_fraction must lie in [0, 1)")


def generate_synthetic(spec: SyntheticSpec = SyntheticSpec()) -> DocTermMatrix:
    rng = np.random.Generator(np.random.PCG64(spec.rng_seed))
    V, S = spec.vocab_per_class, spec.shared_vocab
    m = spec.n_classes * V + S
    width = len(str(spec.n_classes - 1))
    dwidth = len(str(spec.docs_per_class - 1))
    docs, ids, labels = [], [], []
    for c in range(spec.n_classes):
        label = f"class{c:0{width}d}"
        for j in range(spec.docs_per_class):
            shared = rng.random(spec.doc_length) < spec.noise_fraction
            terms = np.where(
                shared,
                spec.n_classes * V + rng.integers(S, size=spec.doc_length),
                c * V + rng.integers(V, size=spec.doc_length),
            )
            counts = np.bincount(terms, minlength=m)
            idx = np.flatnonzero(counts)
            docs.append(SparseVector(idx, counts[idx].astype(np.float64), m))
            ids.append(f"{label}_{j:0{dwidth}d}")
            labels.append(label)
    vocab = {f"c{t // V}_w{t % V}" if t < spec.n_classes * V else f"shared_w{t - spec.n_classes * V}": t
             for t in range(m)}
    return DocTermMatrix(docs=docs, n_terms=m, doc_ids=ids, vocab=vocab, labels=labels)
