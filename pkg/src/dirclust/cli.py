"""Command-line entry point exposing the pipeline as subcommands.

    dirclust tokenize  --wordlist w.txt [--out sentences.tsv]
    dirclust embed     --wordlist w.txt --out emb.txt [--dim 512] [--seed 0]
    dirclust cluster   --embeddings emb.txt --wordlist w.txt --out clusters.txt
                       [--k 20 | --elbow 2..30] [--seed 0] [--restarts 8]
    dirclust pca       --embeddings emb.txt --wordlist w.txt [--clusters c.txt] [--out pca.tsv]
    dirclust run       --target <url-or-corpus-file> --wordlist w.txt [--seed 0]
                       [--use-clustering --clusters c.txt] [--miss-threshold inf] [--out log.csv]
    dirclust bench     --target <url-or-corpus-file> --wordlist w.txt [--clusters c.txt]
                       [--strategies both] [--repetitions 30] [--base-seed 0] [--out DIR]
    dirclust merge     --out merged.txt [--seed 0] NAME=PATH [NAME=PATH ...]

Exit codes: 0 success, 1 usage error, 2 data or format error, 3 transport abort.
A target argument starting with http:// or https:// is probed live; anything
else is read as a simulated-target file listing the valid paths. DIRCLUST_OUT
overrides the default output directory.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

from . import bench as bench_mod
from . import cluster as cluster_mod
from . import embed as embed_mod
from . import engine as engine_mod
from . import tokenizer as tokenizer_mod
from . import wordlist as wordlist_mod
from .errors import DataFormatError, DirclustError, TransportError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_TRANSPORT = 3


class UsageError(DirclustError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _threshold(text: str) -> float:
    if text == "inf":
        return math.inf
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("miss threshold must be a positive integer or 'inf'")
    return float(value)


def _elbow_range(text: str):
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected KMIN..KMAX, got {text!r}")


def _out_root() -> Path:
    return Path(os.environ.get("DIRCLUST_OUT", "."))


def _make_target(spec: str, retries: int, timeout: float) -> engine_mod.Target:
    if spec.startswith(("http://", "https://")):
        return engine_mod.Target.http(spec, retries=retries, timeout=timeout)
    return engine_mod.Target.simulated_from_file(spec)


def _write_or_stdout(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_tokenize(args) -> int:
    wl = wordlist_mod.load_wordlist(args.wordlist)
    tokenized = tokenizer_mod.tokenize_all(wl)
    _write_or_stdout(tokenizer_mod.sentences_tsv(tokenized, wl), args.out)
    return EXIT_OK


def cmd_embed(args) -> int:
    wl = wordlist_mod.load_wordlist(args.wordlist)
    embeddings = embed_mod.embed_all(tokenizer_mod.tokenize_all(wl), dim=args.dim, seed=args.seed)
    embed_mod.save_embeddings(embeddings, wl, args.out)
    print(f"wrote {len(embeddings)} vectors (dim={args.dim}) to {args.out}")
    return EXIT_OK


def cmd_cluster(args) -> int:
    wl = wordlist_mod.load_wordlist(args.wordlist)
    embeddings = embed_mod.load_embeddings(args.embeddings, wl)
    k = args.k
    if args.elbow is not None:
        curve = cluster_mod.elbow_select(
            embeddings, args.elbow[0], args.elbow[1], seed=args.seed, restarts=args.restarts
        )
        for point_k, inertia in curve.points:
            print(f"k={point_k}\tinertia={inertia:.6f}")
        k = curve.chosen_k
        print(f"elbow selected k={k}")
    model = cluster_mod.kmeans(embeddings, k, seed=args.seed, restarts=args.restarts)
    cluster_mod.save_cluster_config(model, wl, args.out)
    print(f"wrote cluster config (k={model.k}, inertia={model.inertia:.6f}) to {args.out}")
    return EXIT_OK


def cmd_pca(args) -> int:
    wl = wordlist_mod.load_wordlist(args.wordlist)
    embeddings = embed_mod.load_embeddings(args.embeddings, wl)
    model = None
    if args.clusters is not None:
        model = cluster_mod.load_cluster_config(args.clusters, wl)
    projection = cluster_mod.pca_project(embeddings)
    _write_or_stdout(cluster_mod.plot_data_tsv(projection, model), args.out)
    return EXIT_OK


def cmd_run(args) -> int:
    target = _make_target(args.target, args.retries, args.timeout)
    wl = wordlist_mod.load_wordlist(args.wordlist)
    if args.use_clustering and args.clusters is None:
        raise UsageError("--use-clustering requires --clusters")
    out = Path(args.out) if args.out else _out_root() / (
        f"run_{'clustered' if args.use_clustering else 'bruteforce'}_seed{args.seed}.csv"
    )
    try:
        if args.use_clustering:
            model = cluster_mod.load_cluster_config(args.clusters, wl)
            log = engine_mod.run_clustered(target, wl, model, args.seed, args.miss_threshold)
        else:
            log = engine_mod.run_bruteforce(target, wl, args.seed)
    except TransportError as exc:
        if exc.partial_log is not None:
            partial = out.with_suffix(".partial.csv")
            engine_mod.save_run_log(exc.partial_log, partial)
            print(f"transport abort; partial run log written to {partial}", file=sys.stderr)
        raise
    engine_mod.save_run_log(log, out)
    print(f"{log.strategy}: {log.total_valid()} valid paths in {log.requests_made()} requests; "
          f"log written to {out}")
    return EXIT_OK


def cmd_bench(args) -> int:
    target = _make_target(args.target, args.retries, args.timeout)
    wl = wordlist_mod.load_wordlist(args.wordlist)
    if args.strategies == "both":
        strategies = (engine_mod.BRUTEFORCE, engine_mod.CLUSTERED)
    else:
        strategies = (args.strategies,)
    model = None
    if engine_mod.CLUSTERED in strategies:
        if args.clusters is None:
            raise UsageError("clustered strategy requires --clusters")
        model = cluster_mod.load_cluster_config(args.clusters, wl)
    out = Path(args.out) if args.out else bench_mod.experiment_dir(
        _out_root(), target, args.base_seed
    )
    plan = bench_mod.ExperimentPlan(
        target=target, wordlist=wl, model=model, repetitions=args.repetitions,
        base_seed=args.base_seed, strategies=strategies,
        miss_threshold=args.miss_threshold, output_dir=out,
    )
    report = bench_mod.run_experiment(plan)
    for strategy, curves in report.curves.items():
        print(f"{strategy}: mean requests to full discovery "
              f"{curves.mean_requests_to_full():.1f} (auc {curves.auc:.4f})")
    if report.improvement is not None:
        print(f"improvement: {report.improvement:.1%} at full discovery, "
              f"{report.improvement_95:.1%} at 95% discovery")
    print(f"artifacts in {out}")
    return EXIT_OK


def cmd_merge(args) -> int:
    pairs = []
    for item in args.inputs:
        name, sep, path = item.partition("=")
        if not sep:
            name, path = Path(item).stem, item
        pairs.append((name, wordlist_mod.load_wordlist(path)))
    merged = wordlist_mod.merge_wordlists(pairs, args.seed)
    wordlist_mod.save_wordlist(merged, args.out)
    print(f"merged {len(pairs)} lists into {len(merged)} unique entries at {args.out}")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(
        prog="dirclust",
        description="Cluster-guided web content discovery and its benchmark harness.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text,
                           formatter_class=argparse.ArgumentDefaultsHelpFormatter)
        p.set_defaults(func=func)
        return p

    p = add("tokenize", cmd_tokenize, "split a wordlist into sentences (TSV to stdout or --out)")
    p.add_argument("--wordlist", required=True, help="wordlist file, one path per line")
    p.add_argument("--out", default=None, help="output TSV path (default: stdout)")

    p = add("embed", cmd_embed, "embed a wordlist with the built-in n-gram hash embedder")
    p.add_argument("--wordlist", required=True, help="wordlist file")
    p.add_argument("--out", required=True, help="embedding file to write")
    p.add_argument("--dim", type=int, default=embed_mod.DEFAULT_DIM, help="vector dimension")
    p.add_argument("--seed", type=int, default=0, help="hash seed")

    p = add("cluster", cmd_cluster, "k-means over an embedding file, write the cluster config")
    p.add_argument("--embeddings", required=True, help="embedding file")
    p.add_argument("--wordlist", required=True, help="wordlist the embeddings were built for")
    p.add_argument("--out", required=True, help="cluster config file to write")
    p.add_argument("--k", type=int, default=cluster_mod.DEFAULT_K, help="number of clusters")
    p.add_argument("--elbow", type=_elbow_range, default=None, metavar="KMIN..KMAX",
                   help="sweep this k range and pick K by the elbow rule (overrides --k)")
    p.add_argument("--seed", type=int, default=0, help="k-means seed")
    p.add_argument("--restarts", type=int, default=cluster_mod.DEFAULT_RESTARTS,
                   help="independent k-means restarts")

    p = add("pca", cmd_pca, "2-D PCA projection of an embedding file (TSV scatter data)")
    p.add_argument("--embeddings", required=True, help="embedding file")
    p.add_argument("--wordlist", required=True, help="wordlist the embeddings were built for")
    p.add_argument("--clusters", default=None, help="cluster config for the cluster_idx column")
    p.add_argument("--out", default=None, help="output TSV path (default: stdout)")

    p = add("run", cmd_run, "one dirbusting run against a target")
    p.add_argument("--target", required=True,
                   help="http(s) base URL, or a file of valid paths for a simulated target")
    p.add_argument("--wordlist", required=True, help="wordlist file")
    p.add_argument("--seed", type=int, default=0, help="scheduler seed")
    p.add_argument("--use-clustering", action="store_true",
                   help="use the cluster-guided strategy instead of brute force")
    p.add_argument("--clusters", default=None, help="cluster config file")
    p.add_argument("--miss-threshold", type=_threshold, default=math.inf,
                   help="consecutive misses before leaving a cluster ('inf' = stay)")
    p.add_argument("--retries", type=int, default=engine_mod.DEFAULT_RETRIES,
                   help="probe retries before transport abort (http targets)")
    p.add_argument("--timeout", type=float, default=engine_mod.DEFAULT_TIMEOUT,
                   help="per-request timeout in seconds (http targets)")
    p.add_argument("--out", default=None, help="run log CSV path")

    p = add("bench", cmd_bench, "repeated seeded experiment comparing the strategies")
    p.add_argument("--target", required=True,
                   help="http(s) base URL, or a file of valid paths for a simulated target")
    p.add_argument("--wordlist", required=True, help="wordlist file")
    p.add_argument("--clusters", default=None, help="cluster config file")
    p.add_argument("--strategies", choices=["both", "bruteforce", "clustered"], default="both",
                   help="which strategies to run")
    p.add_argument("--repetitions", type=int, default=bench_mod.DEFAULT_REPETITIONS,
                   help="repetitions per strategy")
    p.add_argument("--base-seed", type=int, default=0, help="seed of repetition 0")
    p.add_argument("--miss-threshold", type=_threshold, default=math.inf,
                   help="consecutive misses before leaving a cluster ('inf' = stay)")
    p.add_argument("--retries", type=int, default=engine_mod.DEFAULT_RETRIES,
                   help="probe retries before transport abort (http targets)")
    p.add_argument("--timeout", type=float, default=engine_mod.DEFAULT_TIMEOUT,
                   help="per-request timeout in seconds (http targets)")
    p.add_argument("--out", default=None, help="experiment artifact directory")

    p = add("merge", cmd_merge, "merge wordlists into one deduplicated, seed-shuffled list")
    p.add_argument("inputs", nargs="+", metavar="NAME=PATH",
                   help="wordlist files, optionally prefixed with a corpus name")
    p.add_argument("--out", required=True, help="merged wordlist file to write")
    p.add_argument("--seed", type=int, default=0, help="shuffle seed")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"dirclust {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TransportError as exc:
        print(f"dirclust {args.command}: transport abort: {exc}", file=sys.stderr)
        return EXIT_TRANSPORT
    except (DataFormatError, ValueError) as exc:
        print(f"dirclust {args.command}: {exc}", file=sys.stderr)
        return EXIT_DATA


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
