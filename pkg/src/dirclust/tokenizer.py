"""Split path entries into word sequences by naming convention and punctuation.

A path like "comments/add_comment.php" becomes the sentence
"comments / add _ comment . php"; "UnicodeTest.txt" becomes "Unicode Test . txt".
Splits happen:

  * before every punctuation character in PUNCTUATION (each becomes its own token),
  * at lower-to-upper camelCase boundaries,
  * at letter/digit boundaries in both directions,
  * before the last capital of an ALL-CAPS run followed by lowercase
    ("XMLParser" gives "XML", "Parser").

Only ASCII characters trigger splits; any other byte stays inside the current
token. No characters are added or dropped, so concatenating the tokens always
reconstructs the original string.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .wordlist import PathEntry, Wordlist

# The full split set, verbatim: every ASCII punctuation character except backslash.
PUNCTUATION = frozenset("!\"$#%&'()*+,-./:;<=>?@[]^_`{|}~")

_LOWER = frozenset("abcdefghijklmnopqrstuvwxyz")
_UPPER = frozenset("ABCDEFGHIJKLMNOPQRSTUVWXYZ")
_DIGIT = frozenset("0123456789")


@dataclass(frozen=True)
class TokenizedEntry:
    entry_id: int
    tokens: tuple[str, ...]

    @property
    def sentence(self) -> str:
        return " ".join(self.tokens)


def _boundary(prev: str, cur: str, nxt: str | None) -> bool:
    if prev in _LOWER and cur in _UPPER:
        return True
    if prev in _UPPER and cur in _UPPER and nxt is not None and nxt in _LOWER:
        return True
    if (prev in _LOWER or prev in _UPPER) and cur in _DIGIT:
        return True
    if prev in _DIGIT and (cur in _LOWER or cur in _UPPER):
        return True
    return False


def split_path(text: str) -> list[str]:
    """Tokenize a raw path string. Total on non-empty input; ''.join(result) == text."""
    tokens: list[str] = []
    buf: list[str] = []
    n = len(text)
    for i, ch in enumerate(text):
        if ch in PUNCTUATION:
            if buf:
                tokens.append("".join(buf))
                buf = []
            tokens.append(ch)
            continue
        if buf and _boundary(buf[-1], ch, text[i + 1] if i + 1 < n else None):
            tokens.append("".join(buf))
            buf = []
        buf.append(ch)
    if buf:
        tokens.append("".join(buf))
    return tokens


def tokenize(entry: PathEntry) -> TokenizedEntry:
    return TokenizedEntry(entry_id=entry.id, tokens=tuple(split_path(entry.raw)))


def tokenize_all(wordlist: Wordlist) -> list[TokenizedEntry]:
    return [tokenize(entry) for entry in wordlist.entries]


def is_punctuation_token(token: str) -> bool:
    return len(token) == 1 and token in PUNCTUATION


def sentences_tsv(tokenized: Sequence[TokenizedEntry], wordlist: Wordlist) -> str:
    """TSV export consumed by the embedding exporter: entry_id, raw, sentence."""
    by_id = {e.id: e.raw for e in wordlist.entries}
    lines = [f"{t.entry_id}\t{by_id[t.entry_id]}\t{t.sentence}" for t in tokenized]
    return "".join(line + "\n" for line in lines)
