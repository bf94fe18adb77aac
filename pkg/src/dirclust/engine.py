"""Dirbusting runs: brute-force order or cluster-guided next-word scheduling.

A probe is "valid" when its HTTP status code is anything other than 404;
redirects are not followed (3xx is recorded as-is and counts as valid), and
the response body is never inspected.

The cluster-guided scheduler is a feedback loop: while no cluster is active,
draw a uniformly random unprobed entry; when a probe is valid, lock onto that
entry's cluster and keep drawing from it (seeded-uniform within the cluster)
until the cluster is exhausted or `miss_threshold` consecutive misses occur,
then unlock. Brute force is the same sampler with a single pool and no
locking, so for a model with k=1 both strategies produce the identical probe
sequence for a given seed.

Both strategies probe every entry exactly once; runs on a simulated target are
fully determined by (target, wordlist, model, seed, miss_threshold).
"""
from __future__ import annotations

import csv
import io
import math
import time
from dataclasses import dataclass, field
from pathlib import Path
from urllib.parse import urlparse

import numpy as np
import requests

from .cluster import ClusterModel, _check_coverage
from .errors import DataFormatError, TransportError
from .wordlist import PathEntry, Wordlist, normalize_path

BRUTEFORCE = "bruteforce"
CLUSTERED = "clustered"

DEFAULT_RETRIES = 3
DEFAULT_TIMEOUT = 5.0


@dataclass
class Target:
    """Either a live HTTP base URL or an in-process simulated server."""

    kind: str  # "http" | "simulated"
    base_url: str = ""
    valid_paths: frozenset[str] = frozenset()
    latency: float = 0.0  # fixed per-probe delay, simulated kind only
    retries: int = DEFAULT_RETRIES
    timeout: float = DEFAULT_TIMEOUT

    @classmethod
    def http(cls, base_url: str, retries: int = DEFAULT_RETRIES,
             timeout: float = DEFAULT_TIMEOUT) -> "Target":
        parsed = urlparse(base_url)
        if parsed.scheme not in ("http", "https") or not parsed.netloc:
            raise DataFormatError(f"not a valid http(s) base URL: {base_url!r}")
        return cls(kind="http", base_url=base_url, retries=retries, timeout=timeout)

    @classmethod
    def simulated(cls, valid_paths, latency: float = 0.0) -> "Target":
        return cls(
            kind="simulated",
            valid_paths=frozenset(normalize_path(p) for p in valid_paths),
            latency=latency,
        )

    @classmethod
    def simulated_from_file(cls, path: str | Path) -> "Target":
        """A simulated target is just a file listing its valid paths."""
        from .wordlist import load_wordlist

        wl = load_wordlist(path)
        return cls.simulated(wl.raw_paths())

    def describe(self) -> str:
        if self.kind == "http":
            return self.base_url
        return f"simulated({len(self.valid_paths)} valid paths)"


@dataclass(frozen=True)
class ProbeOutcome:
    entry_id: int
    url_or_path: str
    status_code: int
    valid: bool
    sequence_index: int
    cluster: int | None = None


@dataclass
class RunLog:
    strategy: str
    seed: int
    target: str
    outcomes: list[ProbeOutcome] = field(default_factory=list)

    @property
    def cumulative_valid(self) -> np.ndarray:
        return np.cumsum([1 if o.valid else 0 for o in self.outcomes])

    def total_valid(self) -> int:
        return sum(1 for o in self.outcomes if o.valid)

    def requests_made(self) -> int:
        return len(self.outcomes)


def probe(
    target: Target,
    entry: PathEntry,
    sequence_index: int = 0,
    session: requests.Session | None = None,
    cluster: int | None = None,
) -> ProbeOutcome:
    """Issue one GET (or simulated lookup); raises TransportError after retries."""
    if target.kind == "simulated":
        if target.latency > 0:
            time.sleep(target.latency)
        status = 200 if entry.raw in target.valid_paths else 404
        return ProbeOutcome(
            entry_id=entry.id, url_or_path=entry.raw, status_code=status,
            valid=status != 404, sequence_index=sequence_index, cluster=cluster,
        )
    url = target.base_url.rstrip("/") + entry.raw
    sess = session if session is not None else requests.Session()
    last_exc: Exception | None = None
    for _ in range(target.retries + 1):
        try:
            resp = sess.get(url, allow_redirects=False, timeout=target.timeout)
            return ProbeOutcome(
                entry_id=entry.id, url_or_path=url, status_code=resp.status_code,
                valid=resp.status_code != 404, sequence_index=sequence_index,
                cluster=cluster,
            )
        except requests.RequestException as exc:
            last_exc = exc
    raise TransportError(f"probe of {url} failed after {target.retries} retries: {last_exc}")


class _Scheduler:
    """Per-cluster pools of unprobed ids plus the lock-on state and the RNG."""

    def __init__(self, wordlist: Wordlist, model: ClusterModel | None, seed: int):
        if model is None:
            self.pools = [[e.id for e in wordlist.entries]]
            self.assignment = None
        else:
            _check_coverage(model, wordlist)
            self.pools = model.members()
            self.assignment = model.assignment
        self.total = len(wordlist)
        self.current: int | None = None
        self.misses = 0
        self.rng = np.random.Generator(np.random.PCG64(seed & 0xFFFFFFFFFFFFFFFF))

    def draw(self) -> int:
        """Next entry id to probe, removed from its pool."""
        if self.current is not None:
            pool = self.pools[self.current]
            j = int(self.rng.integers(len(pool)))
            entry_id = pool.pop(j)
        else:
            j = int(self.rng.integers(self.total))
            for pool in self.pools:
                if j < len(pool):
                    entry_id = pool.pop(j)
                    break
                j -= len(pool)
        self.total -= 1
        return entry_id

    def record(self, entry_id: int, valid: bool, miss_threshold: float) -> None:
        if self.assignment is None:
            return
        cluster = self.assignment[entry_id]
        if self.current is None:
            if valid and self.pools[cluster]:
                self.current = cluster
                self.misses = 0
            return
        if valid:
            self.misses = 0
        else:
            self.misses += 1
            if self.misses >= miss_threshold:
                self.current = None
                self.misses = 0
                return
        if not self.pools[self.current]:
            self.current = None
            self.misses = 0


def _run(
    target: Target,
    wordlist: Wordlist,
    model: ClusterModel | None,
    seed: int,
    miss_threshold: float,
    strategy: str,
) -> RunLog:
    if len(wordlist) == 0:
        raise DataFormatError("cannot run against an empty wordlist")
    if miss_threshold != math.inf and (miss_threshold < 1 or int(miss_threshold) != miss_threshold):
        raise ValueError(f"miss_threshold must be a positive integer or inf, got {miss_threshold}")
    sched = _Scheduler(wordlist, model, seed)
    by_id = {e.id: e for e in wordlist.entries}
    log = RunLog(strategy=strategy, seed=seed, target=target.describe())
    session = requests.Session() if target.kind == "http" else None
    try:
        seq = 0
        while sched.total > 0:
            entry_id = sched.draw()
            cluster = sched.assignment[entry_id] if sched.assignment is not None else None
            try:
                outcome = probe(target, by_id[entry_id], seq, session=session, cluster=cluster)
            except TransportError as exc:
                exc.partial_log = log
                raise
            log.outcomes.append(outcome)
            sched.record(entry_id, outcome.valid, miss_threshold)
            seq += 1
    finally:
        if session is not None:
            session.close()
    return log


def run_bruteforce(target: Target, wordlist: Wordlist, seed: int) -> RunLog:
    """Probe all entries in a seeded uniformly random order."""
    return _run(target, wordlist, None, seed, math.inf, BRUTEFORCE)


def run_clustered(
    target: Target,
    wordlist: Wordlist,
    model: ClusterModel,
    seed: int,
    miss_threshold: float = math.inf,
) -> RunLog:
    """Probe all entries, staying inside the cluster of the last hit.

    The default miss_threshold of infinity means a locked cluster is only left
    when exhausted; a finite threshold leaves it after that many consecutive
    misses.
    """
    return _run(target, wordlist, model, seed, miss_threshold, CLUSTERED)


RUN_LOG_COLUMNS = [
    "sequence_index", "entry_id", "path", "status_code", "valid", "strategy", "seed", "cluster",
]


def run_log_csv(log: RunLog) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(RUN_LOG_COLUMNS)
    for o in log.outcomes:
        writer.writerow([
            o.sequence_index, o.entry_id, o.url_or_path, o.status_code,
            "true" if o.valid else "false", log.strategy, log.seed,
            "" if o.cluster is None else o.cluster,
        ])
    return buf.getvalue()


def save_run_log(log: RunLog, path: str | Path) -> None:
    Path(path).write_text(run_log_csv(log), encoding="utf-8", newline="")


def load_run_log(path: str | Path) -> RunLog:
    path = Path(path)
    try:
        with path.open(encoding="utf-8", newline="") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise DataFormatError(f"cannot read run log {path}: {exc}") from exc
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows or rows[0] != RUN_LOG_COLUMNS:
        raise DataFormatError(f"{path}: missing or wrong run log header")
    strategy, seed = None, None
    outcomes = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(RUN_LOG_COLUMNS):
            raise DataFormatError(f"{path}:{lineno}: expected {len(RUN_LOG_COLUMNS)} fields")
        try:
            outcomes.append(ProbeOutcome(
                entry_id=int(row[1]), url_or_path=row[2], status_code=int(row[3]),
                valid=row[4] == "true", sequence_index=int(row[0]),
                cluster=int(row[7]) if row[7] != "" else None,
            ))
        except ValueError as exc:
            raise DataFormatError(f"{path}:{lineno}: {exc}") from exc
        strategy, seed = row[5], int(row[6])
    if strategy is None:
        raise DataFormatError(f"{path}: run log has no probe rows")
    return RunLog(strategy=strategy, seed=seed, target="", outcomes=outcomes)
