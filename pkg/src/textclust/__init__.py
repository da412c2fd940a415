"""Partitional document clustering: distance-based seeding plus greedy refinement
of the internal cosine-to-centroid criterion, with entropy evaluation."""

from .criterion import ClusteringSolution, apply_move, composite_norm_sum, criterion_value, move_delta
from .datasets import SyntheticSpec, generate_synthetic, load_cluto, write_cluto
from .evaluation import EntropyReport, cluster_entropy, total_entropy
from .refinement import RefinementStats, cluster, random_initial, refine
from .seeding import SeedSet, assign_to_seeds, default_r, select_seeds
from .sparse import SparseVector, centroid, composite, cosine, dot, euclidean, normalize, to_csr
from .vectorizer import DocTermMatrix, TfIdfModel, build_matrix, fit_idf, tokenize, transform, unit_vectors

__version__ = "0.1.0"
