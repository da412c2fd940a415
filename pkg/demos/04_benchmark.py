"""
Entropy versus number of clusters
=================================

Ten paired trials per k for both initialisations, the same protocol the
``textclust bench`` command runs.  Point ``TEXTCLUST_DATA`` at a directory
holding ``re0.mat`` / ``re0.mat.rclass`` (and re1) from the CLUTO dataset
archive to include those corpora.
"""

# %%
from textclust import SyntheticSpec, generate_synthetic, load_cluto, to_csr, unit_vectors
from textclust.bench import BenchConfig, run_bench
from textclust.datasets import find_cluto_dataset

datasets = {"synthetic": generate_synthetic(SyntheticSpec(noise_fraction=0.3))}
for name in ("re0", "re1"):
    path = find_cluto_dataset(name)
    if path is not None:
        datasets[name] = load_cluto(path)

# %%
for name, matrix in datasets.items():
    vectors, rejected = unit_vectors(matrix)
    drop = set(rejected)
    labels = [lab for i, lab in enumerate(matrix.labels) if i not in drop]
    result = run_bench(to_csr(vectors), labels, BenchConfig(name, trials=10))
    print(name)
    for k in sorted({a.k for a in result.aggregates}):
        p, b = result.mean("proposed", k), result.mean("baseline", k)
        print(f"  k={k:3d}  proposed {p:.4f}   baseline {b:.4f}")

# %%
# To plot (matplotlib is not a dependency of the package):
#   import matplotlib.pyplot as plt
#   ks = sorted({a.k for a in result.aggregates})
#   plt.plot(ks, [result.mean("proposed", k) for k in ks], "o-", label="proposed")
#   plt.plot(ks, [result.mean("baseline", k) for k in ks], "s--", label="baseline")
