"""Fixed-dimension vectors for tokenized entries.

Two sources produce the same EmbeddingSet shape: a precomputed embedding file
written by the external encoder exporter, or the built-in deterministic
n-gram hashing embedder, which lets the whole pipeline run with no external
model.

Hashing embedder, exactly:

  * tokens = sentence split on spaces, keeping tokens that contain an
    alphanumeric character, lowercased (punctuation tokens contribute nothing),
  * tokens shorter than 3 chars are right-padded with '#' so "ab" still
    yields one gram,
  * every contiguous 3-char window is hashed with blake2b (digest_size=9,
    key = seed as 8 little-endian bytes); the first 8 digest bytes pick the
    coordinate mod dim, the low bit of the 9th byte picks the sign,
  * signed gram counts are L2-normalized. If signs cancel to an exactly zero
    vector (astronomically rare), unsigned counts are used instead, so any
    non-empty sentence maps to a unit vector.

Embedding file format (shared contract with the exporter): UTF-8, LF endings,
first line "#dim=<D>", optional further "#"-prefixed comment lines, then one
line per entry: entry_id <TAB> raw path <TAB> space-separated decimal floats.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import CoverageError, DataFormatError
from .tokenizer import TokenizedEntry, is_punctuation_token
from .wordlist import Wordlist

DEFAULT_DIM = 512


@dataclass
class EmbeddingSet:
    dim: int
    vectors: dict[int, np.ndarray]
    provenance: str  # "exported" | "ngram-hash"

    def __len__(self) -> int:
        return len(self.vectors)

    def matrix(self, ids: Sequence[int] | None = None) -> tuple[list[int], np.ndarray]:
        """Vectors stacked row-wise in the given (default: sorted id) order."""
        order = list(ids) if ids is not None else sorted(self.vectors)
        return order, np.stack([self.vectors[i] for i in order])


def _grams(sentence: str) -> list[str]:
    grams: list[str] = []
    for tok in sentence.split(" "):
        if not tok or not any(c.isalnum() for c in tok):
            continue
        tok = tok.lower()
        if len(tok) < 3:
            tok = tok + "#" * (3 - len(tok))
        grams.extend(tok[i : i + 3] for i in range(len(tok) - 2))
    return grams


def embed_ngram_hash(sentence: str, dim: int = DEFAULT_DIM, seed: int = 0) -> np.ndarray:
    """Deterministic unit vector for a sentence; raises on sentences with no grams."""
    if dim < 8:
        raise ValueError(f"dim must be >= 8, got {dim}")
    grams = _grams(sentence)
    if not grams:
        raise DataFormatError(f"sentence has no alphanumeric tokens to embed: {sentence!r}")
    key = (seed & 0xFFFFFFFFFFFFFFFF).to_bytes(8, "little")
    vec = np.zeros(dim)
    signs_off = False
    while True:
        for g in grams:
            d = hashlib.blake2b(g.encode("utf-8"), digest_size=9, key=key).digest()
            idx = int.from_bytes(d[:8], "little") % dim
            vec[idx] += 1.0 if (signs_off or d[8] & 1) else -1.0
        norm = float(np.linalg.norm(vec))
        if norm > 0.0:
            return vec / norm
        # exact sign cancellation: retry with unsigned counts
        vec = np.zeros(dim)
        signs_off = True


def embed_all(
    tokenized: Sequence[TokenizedEntry], dim: int = DEFAULT_DIM, seed: int = 0
) -> EmbeddingSet:
    """Hash-embed every entry's sentence, punctuation tokens excluded."""
    vectors: dict[int, np.ndarray] = {}
    for t in tokenized:
        words = [tok for tok in t.tokens if not is_punctuation_token(tok)]
        try:
            vectors[t.entry_id] = embed_ngram_hash(" ".join(words), dim=dim, seed=seed)
        except DataFormatError as exc:
            raise DataFormatError(f"entry {t.entry_id}: {exc}") from exc
    return EmbeddingSet(dim=dim, vectors=vectors, provenance="ngram-hash")


def save_embeddings(embeddings: EmbeddingSet, wordlist: Wordlist, path: str | Path) -> None:
    _check_coverage(embeddings.vectors.keys(), wordlist)
    lines = [f"#dim={embeddings.dim}"]
    for entry in wordlist.entries:
        vals = " ".join(f"{v:.6f}" for v in embeddings.vectors[entry.id])
        lines.append(f"{entry.id}\t{entry.raw}\t{vals}")
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def load_embeddings(path: str | Path, wordlist: Wordlist) -> EmbeddingSet:
    """Parse an embedding file and validate it against the wordlist it was built for."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise DataFormatError(f"cannot read embedding file {path}: {exc}") from exc
    lines = text.splitlines()
    if not lines or not lines[0].startswith("#dim="):
        raise DataFormatError(f"{path}: first line must be '#dim=<D>'")
    try:
        dim = int(lines[0][len("#dim=") :])
    except ValueError as exc:
        raise DataFormatError(f"{path}: bad dimension header {lines[0]!r}") from exc
    if dim < 1:
        raise DataFormatError(f"{path}: dimension must be positive, got {dim}")

    raw_by_id = {e.id: e.raw for e in wordlist.entries}
    vectors: dict[int, np.ndarray] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise DataFormatError(f"{path}:{lineno}: expected 3 tab-separated fields")
        try:
            entry_id = int(parts[0])
        except ValueError as exc:
            raise DataFormatError(f"{path}:{lineno}: bad entry id {parts[0]!r}") from exc
        if entry_id not in raw_by_id:
            raise CoverageError(f"{path}:{lineno}: entry id {entry_id} not in wordlist")
        if parts[1] != raw_by_id[entry_id]:
            raise CoverageError(
                f"{path}:{lineno}: path mismatch for id {entry_id}: "
                f"file has {parts[1]!r}, wordlist has {raw_by_id[entry_id]!r}"
            )
        if entry_id in vectors:
            raise DataFormatError(f"{path}:{lineno}: duplicate entry id {entry_id}")
        try:
            vec = np.array([float(x) for x in parts[2].split()], dtype=float)
        except ValueError as exc:
            raise DataFormatError(f"{path}:{lineno}: bad float value: {exc}") from exc
        if vec.shape[0] != dim:
            raise DataFormatError(
                f"{path}:{lineno}: vector has {vec.shape[0]} values, header says dim={dim}"
            )
        if not np.all(np.isfinite(vec)):
            raise DataFormatError(f"{path}:{lineno}: non-finite value in vector")
        if float(np.linalg.norm(vec)) == 0.0:
            raise DataFormatError(f"{path}:{lineno}: zero vector for {parts[1]!r}")
        vectors[entry_id] = vec

    missing = [e.raw for e in wordlist.entries if e.id not in vectors]
    if missing:
        raise CoverageError(
            f"{path}: missing embeddings for {len(missing)} wordlist entries, "
            f"first missing path: {missing[0]}"
        )
    return EmbeddingSet(dim=dim, vectors=vectors, provenance="exported")


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    na, nb = float(np.linalg.norm(a)), float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        raise ValueError("cosine undefined for zero vectors")
    return float(np.dot(a, b) / (na * nb))


def _check_coverage(ids, wordlist: Wordlist) -> None:
    want = set(wordlist.ids())
    have = set(ids)
    if want != have:
        missing = sorted(want - have)
        extra = sorted(have - want)
        parts = []
        if missing:
            parts.append(f"missing ids {missing[:5]}")
        if extra:
            parts.append(f"unknown ids {extra[:5]}")
        raise CoverageError("embedding/wordlist mismatch: " + ", ".join(parts))
