"""
Documents as unit tf-idf vectors
================================

Tokenise a handful of short texts, weight them by tf-idf, and look at the
cosine / Euclidean geometry the clustering code works in.
"""

# %%
import math

from textclust import build_matrix, cosine, euclidean, fit_idf, transform

corpus = [
    ("g1", "the striker scored a late goal and the crowd cheered the goal"),
    ("g2", "the keeper saved a penalty late in the match"),
    ("a1", "the gallery hung a new canvas by a young painter"),
    ("a2", "critics praised the painter and the canvas colours"),
]
matrix = build_matrix(corpus, labels=["sport", "sport", "art", "art"])
print(f"{matrix.n_docs} documents, {matrix.n_terms} terms")

# %%
# "the" occurs everywhere, so its idf is log(4/4) = 0 and it disappears.
model = fit_idf(matrix)
idf = model.idf()
print("idf(the) =", idf[matrix.vocab["the"]])
print("idf(canvas) =", round(idf[matrix.vocab["canvas"]], 4), "= ln 2")

vectors, rejected = transform(matrix, model)
assert rejected == []

# %%
# Every vector has unit length, so ||a - b||^2 = 2 - 2 cos(a, b).
for i in range(len(vectors)):
    for j in range(i + 1, len(vectors)):
        c = cosine(vectors[i], vectors[j])
        d = euclidean(vectors[i], vectors[j])
        print(f"{matrix.doc_ids[i]}-{matrix.doc_ids[j]}  cos={c:.3f}  dist={d:.3f}  "
              f"sqrt(2-2cos)={math.sqrt(2 - 2 * c):.3f}")
