"""Cluster-guided web content discovery.

Wordlist probes are ordered by semantic clusters of path names: tokenize the
wordlist, embed each entry as a fixed-dimension vector, group the vectors with
k-means, then let the probe scheduler stay inside the cluster of the last hit.
A benchmark harness compares the cluster-guided strategy against plain
brute force over repeated seeded runs.
"""
from .bench import (
    BenchmarkReport,
    ExperimentPlan,
    StrategyCurves,
    compute_curves,
    emit_plot_data,
    run_experiment,
    save_report,
)
from .cluster import (
    ClusterModel,
    ElbowCurve,
    elbow_select,
    kmeans,
    load_cluster_config,
    pca_project,
    save_cluster_config,
)
from .embed import (
    EmbeddingSet,
    cosine,
    embed_all,
    embed_ngram_hash,
    load_embeddings,
    save_embeddings,
)
from .engine import (
    BRUTEFORCE,
    CLUSTERED,
    ProbeOutcome,
    RunLog,
    Target,
    load_run_log,
    probe,
    run_bruteforce,
    run_clustered,
    save_run_log,
)
from .errors import CoverageError, DataFormatError, DirclustError, TransportError
from .tokenizer import TokenizedEntry, sentences_tsv, split_path, tokenize, tokenize_all
from .wordlist import (
    PathEntry,
    Wordlist,
    load_wordlist,
    merge_wordlists,
    save_wordlist,
    shuffle,
    wordlist_from_paths,
)

__version__ = "0.1.0"

__all__ = [
    "BRUTEFORCE",
    "CLUSTERED",
    "BenchmarkReport",
    "ClusterModel",
    "CoverageError",
    "DataFormatError",
    "DirclustError",
    "ElbowCurve",
    "EmbeddingSet",
    "ExperimentPlan",
    "PathEntry",
    "ProbeOutcome",
    "RunLog",
    "StrategyCurves",
    "Target",
    "TokenizedEntry",
    "TransportError",
    "Wordlist",
    "compute_curves",
    "cosine",
    "elbow_select",
    "embed_all",
    "embed_ngram_hash",
    "emit_plot_data",
    "kmeans",
    "load_cluster_config",
    "load_embeddings",
    "load_run_log",
    "load_wordlist",
    "merge_wordlists",
    "pca_project",
    "probe",
    "run_bruteforce",
    "run_clustered",
    "run_experiment",
    "save_cluster_config",
    "save_embeddings",
    "save_report",
    "save_run_log",
    "save_wordlist",
    "sentences_tsv",
    "shuffle",
    "split_path",
    "tokenize",
    "tokenize_all",
    "wordlist_from_paths",
]
