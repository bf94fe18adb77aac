"""Wordlist ingestion, merging, deduplication, and seeded shuffling.

File format: UTF-8 text, one absolute path per line, LF or CRLF line endings
accepted, blank lines and lines starting with "#" ignored. Persisted output is
always LF. Entries are normalized to start with "/" and deduplicated
case-sensitively, first occurrence winning.

All randomness comes from NumPy's PCG64 generator so that a (seed, input) pair
always produces the same order, on any machine.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import DataFormatError


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed & 0xFFFFFFFFFFFFFFFF))


def normalize_path(raw: str) -> str:
    """Validate a candidate path and prepend the leading slash when absent."""
    if not raw:
        raise DataFormatError("empty path entry")
    if "\n" in raw or "\r" in raw:
        raise DataFormatError(f"path entry contains a newline: {raw!r}")
    return raw if raw.startswith("/") else "/" + raw


@dataclass(frozen=True)
class PathEntry:
    """One candidate server path with its stable index inside a Wordlist."""

    id: int
    raw: str


@dataclass
class Wordlist:
    """Ordered, deduplicated collection of path entries.

    `source_labels` optionally maps entry id to the name of the corpus the
    entry came from (filled by merge_wordlists, used by the benchmark oracle).
    """

    entries: list[PathEntry] = field(default_factory=list)
    source_labels: dict[int, str] | None = None

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def raw_paths(self) -> list[str]:
        return [e.raw for e in self.entries]

    def ids(self) -> list[int]:
        return [e.id for e in self.entries]


def wordlist_from_paths(paths: Iterable[str], labels: Iterable[str] | None = None) -> Wordlist:
    """Build a Wordlist from raw strings: normalize, dedup keeping first occurrence."""
    seen: dict[str, int] = {}
    entries: list[PathEntry] = []
    out_labels: dict[int, str] = {}
    label_iter = iter(labels) if labels is not None else None
    for raw in paths:
        label = next(label_iter) if label_iter is not None else None
        norm = normalize_path(raw)
        if norm in seen:
            continue
        eid = len(entries)
        seen[norm] = eid
        entries.append(PathEntry(id=eid, raw=norm))
        if label is not None:
            out_labels[eid] = label
    return Wordlist(entries=entries, source_labels=out_labels if label_iter is not None else None)


def load_wordlist(path: str | Path) -> Wordlist:
    """Read a wordlist file, preserving file order, duplicates dropped (first wins)."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataFormatError(f"cannot read wordlist {path}: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise DataFormatError(f"wordlist {path} is not valid UTF-8: {exc}") from exc
    paths = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        paths.append(line)
    wl = wordlist_from_paths(paths)
    if len(wl) == 0:
        raise DataFormatError(f"wordlist {path} contains no entries")
    return wl


def save_wordlist(wordlist: Wordlist, path: str | Path) -> None:
    """Persist one path per line, LF endings. load(save(wl)) preserves order and ids."""
    Path(path).write_text("".join(e.raw + "\n" for e in wordlist.entries), encoding="utf-8")


def merge_wordlists(lists: Sequence[tuple[str, Wordlist]], seed: int) -> Wordlist:
    """Union of the given (name, wordlist) pairs, deduplicated, then seed-shuffled.

    The first contributing list wins on duplicates, and its name becomes the
    entry's source label. Same seed and inputs give an identical output order.
    """
    if not lists:
        raise DataFormatError("merge_wordlists needs at least one input list")
    raws: list[str] = []
    labels: list[str] = []
    seen: set[str] = set()
    for name, wl in lists:
        for entry in wl.entries:
            if entry.raw in seen:
                continue
            seen.add(entry.raw)
            raws.append(entry.raw)
            labels.append(name)
    merged = wordlist_from_paths(raws, labels)
    return shuffle(merged, seed)


def shuffle(wordlist: Wordlist, seed: int) -> Wordlist:
    """Seeded permutation of the entries; ids re-assigned 0..n-1 in the new order."""
    n = len(wordlist)
    perm = _rng(seed).permutation(n)
    entries = []
    labels: dict[int, str] = {}
    for new_id, old_pos in enumerate(perm):
        old = wordlist.entries[int(old_pos)]
        entries.append(PathEntry(id=new_id, raw=old.raw))
        if wordlist.source_labels is not None and old.id in wordlist.source_labels:
            labels[new_id] = wordlist.source_labels[old.id]
    return Wordlist(entries=entries, source_labels=labels if wordlist.source_labels is not None else None)
