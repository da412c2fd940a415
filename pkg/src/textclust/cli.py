"""Command-line entry point: ``textclust {vectorize,cluster,eval,bench}``.

Exit codes: 0 success, 1 runtime failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

from . import bench as bench_mod
from .datasets import SyntheticSpec, generate_synthetic, load_cluto, write_cluto
from .evaluation import total_entropy
from .refinement import METHODS, cluster
from .seeding import default_r
from .sparse import to_csr
from .vectorizer import read_corpus_dir, read_stopwords, unit_vectors

log = logging.getLogger("textclust")


class CliError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _add_input(p: argparse.ArgumentParser, synthetic: bool = False) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--input", metavar="MAT", help="CLUTO .mat file")
    g.add_argument("--corpus", metavar="DIR", help="text corpus laid out as DIR/<class>/<doc>.txt")
    if synthetic:
        g.add_argument("--synthetic", action="store_true", help="generate a labelled synthetic corpus")
        p.add_argument("--classes", type=int, default=15)
        p.add_argument("--docs-per-class", type=int, default=100)
        p.add_argument("--noise", type=float, default=0.0)
        p.add_argument("--synthetic-seed", type=int, default=0)
    p.add_argument("--rclass", metavar="FILE", help="class labels (default: <MAT>.rclass if present)")
    p.add_argument("--stopwords", metavar="FILE", help="whitespace-separated stop words (corpus input)")
    p.add_argument("--no-tfidf", action="store_true", help="skip idf weighting; only unit-normalise")
    p.add_argument("--drop-empty", action="store_true",
                   help="drop documents with a zero weighted vector instead of failing")


def _load(args):
    if getattr(args, "synthetic", False):
        spec = SyntheticSpec(n_classes=args.classes, docs_per_class=args.docs_per_class,
                             noise_fraction=args.noise, rng_seed=args.synthetic_seed)
        return generate_synthetic(spec), "synthetic"
    try:
        if args.corpus:
            stop = read_stopwords(args.stopwords) if args.stopwords else ()
            return read_corpus_dir(args.corpus, stopwords=stop), Path(args.corpus).name
        return load_cluto(args.input, args.rclass), Path(args.input).stem
    except (OSError, ValueError) as exc:
        raise CliError(str(exc)) from exc


def _vectors(args, matrix):
    if matrix.n_docs == 0:
        raise CliError("no documents")
    vectors, rejected = unit_vectors(matrix, tfidf=not args.no_tfidf)
    if rejected:
        ids = ", ".join(matrix.doc_ids[i] for i in rejected)
        if not args.drop_empty:
            raise CliError(f"{len(rejected)} document(s) have zero-norm vectors: {ids}")
        log.warning("dropping %d zero-norm document(s): %s", len(rejected), ids)
        drop = set(rejected)
        matrix = matrix.subset([i for i in range(matrix.n_docs) if i not in drop])
    return matrix, vectors


def cmd_vectorize(args) -> int:
    matrix, _ = _load(args)
    matrix, vectors = _vectors(args, matrix)
    out = Path(args.out)
    write_cluto(matrix, out, vectors)
    print(f"wrote {out} ({matrix.n_docs} docs, {matrix.n_terms} terms)")
    return 0


def cmd_cluster(args) -> int:
    matrix, name = _load(args)
    matrix, vectors = _vectors(args, matrix)
    n = matrix.n_docs
    if not 2 <= args.k <= n:
        args.parser.error(f"--k must lie in [2, {n}]")
    if args.r is not None and not 1 <= args.r <= n:
        args.parser.error(f"--r must lie in [1, {n}]")
    X = to_csr(vectors)
    sol, stats = cluster(X, args.k, r=args.r, rng_seed=args.seed, method=args.method,
                         max_iters=args.max_iters)
    out = Path(args.out or f"{name}.clustering.{args.k}")
    with open(out, "w", encoding="utf-8") as fh:
        for doc_id, c in zip(matrix.doc_ids, sol.assignment.tolist()):
            fh.write(f"{doc_id} {c}\n")
    r = args.r if args.r is not None else default_r(n, args.k)
    print(f"method={args.method} k={args.k} r={r} seed={args.seed}")
    if stats.seeds:
        print("seeds: " + " ".join(matrix.doc_ids[s] for s in stats.seeds))
    print(f"T={sol.cached_t:.6f} initial_T={stats.t_initial:.6f} "
          f"iterations={stats.iterations} moves={stats.moves_accepted} converged={stats.converged}")
    if matrix.labels is not None and len(set(matrix.labels)) >= 2:
        for line in total_entropy(sol, matrix.labels).lines():
            print(line)
    print(f"assignment written to {out}")
    return 0 if stats.converged else 1


def read_assignment(path) -> list[tuple[str, int]]:
    rows = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 2:
            raise CliError(f"{path}:{lineno}: expected '<doc_id> <cluster>'")
        try:
            rows.append((parts[0], int(parts[1])))
        except ValueError:
            raise CliError(f"{path}:{lineno}: cluster index is not an integer") from None
    return rows


def cmd_eval(args) -> int:
    try:
        rows = read_assignment(args.assignment)
        labels = [ln.strip() for ln in Path(args.rclass).read_text(encoding="utf-8").splitlines()]
    except OSError as exc:
        raise CliError(str(exc)) from exc
    while labels and not labels[-1]:
        labels.pop()
    if len(rows) != len(labels):
        raise CliError(f"{len(rows)} assignments but {len(labels)} class labels")
    if len(set(labels)) < 2:
        raise CliError("entropy needs at least two distinct classes")
    report = total_entropy([c for _, c in rows], labels)
    for line in report.lines():
        print(line)
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["cluster", "size", "entropy"])
            for c in report.per_cluster:
                w.writerow([c.cluster, c.size, f"{c.entropy:.6f}"])
            w.writerow(["total", report.n, f"{report.total:.6f}"])
    return 0


def cmd_bench(args) -> int:
    matrix, name = _load(args)
    if matrix.labels is None:
        raise CliError("bench needs class labels")
    matrix, vectors = _vectors(args, matrix)
    methods = tuple(m.strip() for m in args.methods.split(",") if m.strip())
    try:
        config = bench_mod.BenchConfig(
            dataset=name, k_values=tuple(args.k_list), trials=args.trials, r=args.r,
            base_seed=args.seed, methods=methods, max_iters=args.max_iters, output=args.out,
        )
    except ValueError as exc:
        args.parser.error(str(exc))
    X = to_csr(vectors)
    result = bench_mod.run_bench(X, matrix.labels, config)
    trial_path, agg_path = bench_mod.write_csv(result, args.out, timings=args.timings)
    for a in result.aggregates:
        print(f"{a.dataset} {a.method:<9} k={a.k:<3} mean_entropy={a.mean_entropy:.6f} "
              f"std={a.std_entropy:.6f} (n={a.trials})")
    print(f"wrote {trial_path} and {agg_path}")
    for r in result.failed:
        print(f"FAILED {r.method} k={r.k} trial={r.trial}: {r.error}", file=sys.stderr)
    return 1 if result.failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="textclust", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("vectorize", help="write tf-idf unit vectors as a CLUTO matrix")
    _add_input(p)
    p.add_argument("--out", required=True, metavar="MAT")
    p.set_defaults(func=cmd_vectorize, parser=p)

    def add_run_opts(p):
        p.add_argument("--r", type=int, default=None, help="seed candidate pool size (default: ceil(N/10K))")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--max-iters", type=int, default=500)

    p = sub.add_parser("cluster", help="cluster one dataset")
    _add_input(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", choices=METHODS, default="proposed")
    p.add_argument("--out", metavar="FILE", help="assignment file (default: <name>.clustering.<k>)")
    add_run_opts(p)
    p.set_defaults(func=cmd_cluster, parser=p)

    p = sub.add_parser("eval", help="entropy of an assignment file against class labels")
    p.add_argument("assignment")
    p.add_argument("rclass")
    p.add_argument("--csv", metavar="FILE")
    p.set_defaults(func=cmd_eval, parser=p)

    p = sub.add_parser("bench", help="paired-seed entropy benchmark over several k")
    _add_input(p, synthetic=True)
    p.add_argument("--k-list", type=_int_list, default=list(bench_mod.DEFAULT_K_VALUES))
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--methods", default=",".join(METHODS))
    p.add_argument("--out", default="bench.csv", metavar="CSV")
    p.add_argument("--timings", action="store_true", help="add a wall_time_ms column")
    add_run_opts(p)
    p.set_defaults(func=cmd_bench, parser=p)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"textclust: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
