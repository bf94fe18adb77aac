"""K-means over embeddings, elbow-based choice of K, and 2-D PCA projection.

The cluster assignment is the run-time "config" the probe scheduler consumes;
it persists to a small text file (see save_cluster_config).

K-means is Lloyd's algorithm from k-means++ seeding, best of `restarts`
independent runs by inertia. Distances are Euclidean; on the L2-normalized
hash embeddings that ranks identically to cosine. Ties in the nearest-centroid
assignment break toward the lowest cluster index. An empty cluster is reseeded
at the point farthest from its assigned centroid.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .embed import EmbeddingSet
from .errors import CoverageError, DataFormatError
from .wordlist import Wordlist

DEFAULT_K = 20
DEFAULT_RESTARTS = 8
DEFAULT_MAX_ITERS = 200
DEFAULT_TOL = 1e-6


@dataclass
class ClusterModel:
    k: int
    dim: int
    centroids: np.ndarray  # shape (k, dim)
    assignment: dict[int, int]  # entry_id -> cluster index
    inertia: float | None  # None for models loaded from file (no embeddings at hand)
    seed: int

    def members(self) -> list[list[int]]:
        """Entry ids per cluster, ids ascending inside each cluster."""
        pools: list[list[int]] = [[] for _ in range(self.k)]
        for entry_id in sorted(self.assignment):
            pools[self.assignment[entry_id]].append(entry_id)
        return pools


@dataclass
class ElbowCurve:
    points: list[tuple[int, float]]  # (k, inertia)
    chosen_k: int


def _sq_dists(x: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    # (n, k) squared Euclidean distances
    return ((x[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)


def _kmeanspp_init(x: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = x.shape[0]
    centroids = np.empty((k, x.shape[1]))
    first = int(rng.integers(n))
    centroids[0] = x[first]
    closest = ((x - centroids[0]) ** 2).sum(axis=1)
    for j in range(1, k):
        total = float(closest.sum())
        if total == 0.0:
            idx = int(rng.integers(n))
        else:
            r = float(rng.random()) * total
            idx = int(np.searchsorted(np.cumsum(closest), r))
            idx = min(idx, n - 1)
        centroids[j] = x[idx]
        closest = np.minimum(closest, ((x - centroids[j]) ** 2).sum(axis=1))
    return centroids


def _lloyd(
    x: np.ndarray, k: int, rng: np.random.Generator, max_iters: int, tol: float
) -> tuple[np.ndarray, np.ndarray, float]:
    centroids = _kmeanspp_init(x, k, rng)
    labels = np.zeros(x.shape[0], dtype=int)
    for _ in range(max_iters):
        d2 = _sq_dists(x, centroids)
        labels = d2.argmin(axis=1)  # argmin takes the lowest index on ties
        new_centroids = centroids.copy()
        empty = []
        for j in range(k):
            mask = labels == j
            if mask.any():
                new_centroids[j] = x[mask].mean(axis=0)
            else:
                empty.append(j)
        if empty:
            # reseed empty clusters at the points farthest from their assigned
            # centroids, one distinct point per empty cluster
            far_order = np.argsort(-d2[np.arange(len(labels)), labels], kind="stable")
            for slot, j in enumerate(empty):
                new_centroids[j] = x[int(far_order[slot])]
        shift = float(np.sqrt(((new_centroids - centroids) ** 2).sum(axis=1)).max())
        centroids = new_centroids
        if shift < tol:
            break
    d2 = _sq_dists(x, centroids)
    labels = d2.argmin(axis=1)
    inertia = float(d2[np.arange(len(labels)), labels].sum())
    return centroids, labels, inertia


def kmeans(
    embeddings: EmbeddingSet,
    k: int,
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
    max_iters: int = DEFAULT_MAX_ITERS,
    tol: float = DEFAULT_TOL,
) -> ClusterModel:
    """Best of `restarts` seeded Lloyd runs; deterministic for fixed inputs."""
    ids, x = embeddings.matrix()
    n = x.shape[0]
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k > n:
        raise ValueError(f"k={k} exceeds the number of points n={n}")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    rng = np.random.Generator(np.random.PCG64(seed & 0xFFFFFFFFFFFFFFFF))
    best: tuple[np.ndarray, np.ndarray, float] | None = None
    for _ in range(restarts):
        centroids, labels, inertia = _lloyd(x, k, rng, max_iters, tol)
        if best is None or inertia < best[2]:
            best = (centroids, labels, inertia)
    centroids, labels, inertia = best
    assignment = {entry_id: int(label) for entry_id, label in zip(ids, labels)}
    return ClusterModel(
        k=k, dim=x.shape[1], centroids=centroids, assignment=assignment,
        inertia=inertia, seed=seed,
    )


def elbow_select(
    embeddings: EmbeddingSet,
    k_min: int,
    k_max: int,
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
) -> ElbowCurve:
    """Sweep k over [k_min, k_max], pick the knee, then step one to the right.

    The knee is the k whose (k, inertia) point, after min-max normalizing both
    axes, lies farthest from the chord joining the sweep's endpoints; ties go
    to the lowest k. The chosen k is then incremented by one when that stays
    inside the range, matching the practice of operating slightly right of the
    elbow.
    """
    n = len(embeddings.vectors)
    if not (1 <= k_min < k_max <= n):
        raise ValueError(f"need 1 <= k_min < k_max <= n, got k_min={k_min} k_max={k_max} n={n}")
    points = []
    for k in range(k_min, k_max + 1):
        points.append((k, kmeans(embeddings, k, seed=seed, restarts=restarts).inertia))
    return ElbowCurve(points=points, chosen_k=select_knee(points))


def select_knee(points: list[tuple[int, float]]) -> int:
    """The "slightly right of the elbow" k for a (k, inertia) sweep.

    Knee = max perpendicular distance to the chord between the endpoints after
    min-max normalizing both axes, ties to the lowest k; the result is then
    shifted one step right when that stays inside the sweep. A perfectly
    linear sweep therefore yields k_min + 1.
    """
    if len(points) < 2:
        raise ValueError("need at least two (k, inertia) points")
    ks = np.array([p[0] for p in points], dtype=float)
    inertias = np.array([p[1] for p in points], dtype=float)
    kr = ks[-1] - ks[0]
    ir = inertias.max() - inertias.min()
    xs = (ks - ks[0]) / kr
    ys = (inertias - inertias.min()) / ir if ir > 0 else np.zeros_like(inertias)
    # distance from each normalized point to the chord through the endpoints
    x0, y0 = xs[0], ys[0]
    x1, y1 = xs[-1], ys[-1]
    chord = np.hypot(x1 - x0, y1 - y0)
    dist = np.abs((y1 - y0) * xs - (x1 - x0) * ys + x1 * y0 - y1 * x0) / chord
    chosen = int(ks[int(dist.argmax())])
    if chosen + 1 <= int(ks[-1]):
        chosen += 1
    return chosen


def pca_project(embeddings: EmbeddingSet) -> dict[int, tuple[float, float]]:
    """Mean-centered projection onto the top-2 principal directions.

    Sign convention: each component's largest-magnitude loading is positive,
    so the projection is reproducible across runs and machines.
    """
    ids, x = embeddings.matrix()
    if x.shape[0] < 2:
        raise ValueError("PCA needs at least 2 points")
    centered = x - x.mean(axis=0)
    if not np.any(centered):
        raise DataFormatError("PCA undefined: all points identical (zero variance)")
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    comps = vt[:2]
    if comps.shape[0] < 2:  # fewer than 2 dims: pad the second direction with zeros
        comps = np.vstack([comps, np.zeros((2 - comps.shape[0], x.shape[1]))])
    for row in range(2):
        loading = comps[row]
        if np.any(loading):
            peak = int(np.abs(loading).argmax())
            if loading[peak] < 0:
                comps[row] = -loading
    proj = centered @ comps.T
    return {entry_id: (float(px), float(py)) for entry_id, (px, py) in zip(ids, proj)}


def save_cluster_config(model: ClusterModel, wordlist: Wordlist, path: str | Path) -> None:
    """Persist k, seed, centroids, and per-entry assignments as LF text."""
    _check_coverage(model, wordlist)
    lines = [f"#k={model.k}", f"#dim={model.dim}", f"#seed={model.seed}"]
    for idx, centroid in enumerate(model.centroids):
        lines.append(f"C {idx} " + " ".join(f"{v:.8f}" for v in centroid))
    for entry in wordlist.entries:
        lines.append(f"A {entry.id} {model.assignment[entry.id]}")
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def load_cluster_config(path: str | Path, wordlist: Wordlist) -> ClusterModel:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise DataFormatError(f"cannot read cluster config {path}: {exc}") from exc
    header: dict[str, int] = {}
    centroid_rows: dict[int, np.ndarray] = {}
    assignment: dict[int, int] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line:
            continue
        if line.startswith("#"):
            try:
                name, value = line[1:].split("=", 1)
                header[name] = int(value)
            except ValueError as exc:
                raise DataFormatError(f"{path}:{lineno}: bad header line {line!r}") from exc
            continue
        parts = line.split()
        try:
            if parts[0] == "C":
                centroid_rows[int(parts[1])] = np.array([float(v) for v in parts[2:]])
            elif parts[0] == "A":
                assignment[int(parts[1])] = int(parts[2])
            else:
                raise ValueError(f"unknown record type {parts[0]!r}")
        except (ValueError, IndexError) as exc:
            raise DataFormatError(f"{path}:{lineno}: {exc}") from exc
    for key in ("k", "dim", "seed"):
        if key not in header:
            raise DataFormatError(f"{path}: missing #{key}= header")
    k, dim = header["k"], header["dim"]
    if sorted(centroid_rows) != list(range(k)):
        raise DataFormatError(f"{path}: expected centroids 0..{k - 1}, got {sorted(centroid_rows)}")
    centroids = np.stack([centroid_rows[i] for i in range(k)])
    if centroids.shape[1] != dim:
        raise DataFormatError(f"{path}: centroid length {centroids.shape[1]} != dim {dim}")
    bad = [c for c in assignment.values() if not 0 <= c < k]
    if bad:
        raise DataFormatError(f"{path}: assignment to nonexistent cluster {bad[0]}")
    model = ClusterModel(
        k=k, dim=dim, centroids=centroids, assignment=assignment,
        inertia=None, seed=header["seed"],
    )
    _check_coverage(model, wordlist)
    return model


def _check_coverage(model: ClusterModel, wordlist: Wordlist) -> None:
    want = set(wordlist.ids())
    have = set(model.assignment)
    if want != have:
        missing = sorted(want - have)
        extra = sorted(have - want)
        parts = []
        if missing:
            parts.append(f"wordlist entries without a cluster: ids {missing[:5]}")
        if extra:
            parts.append(f"assignments for unknown ids {extra[:5]}")
        raise CoverageError("cluster config/wordlist mismatch: " + ", ".join(parts))


def plot_data_tsv(
    projection: dict[int, tuple[float, float]], model: ClusterModel | None = None
) -> str:
    """Scatter-plot TSV: entry_id, x, y, cluster_idx (blank without a model)."""
    lines = []
    for entry_id in sorted(projection):
        x, y = projection[entry_id]
        cluster = "" if model is None else str(model.assignment[entry_id])
        lines.append(f"{entry_id}\t{x:.6f}\t{y:.6f}\t{cluster}")
    return "".join(line + "\n" for line in lines)
