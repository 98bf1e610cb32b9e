"""Noise filters and exact deduplication for harmonized records.

Per-record filters are pure and return a stable drop reason (or None to
keep). Dedup hashes a canonical content tuple: NFC-normalized,
whitespace-collapsed text only, so re-encoded or re-spaced copies and
copies that differ only in metadata all collapse to one survivor.
"""

from __future__ import annotations

import hashlib
import threading
import unicodedata
from dataclasses import dataclass
from typing import Iterable, Iterator

from .records import BiRecord, MonoRecord, Record

REASON_MISSING = "missing-translation"
REASON_EMPTY = "empty-text"
REASON_REPEAT = "repeat"
REASON_LENGTH = "length-mismatch"

DIGEST_SIZE = 16  # 128-bit content digests


@dataclass(frozen=True)
class CleanConfig:
    max_consecutive_repeats: int = 5
    length_ratio_max: float = 9.0
    min_chars: int = 1

    def __post_init__(self):
        if self.max_consecutive_repeats < 1:
            raise ValueError("max_consecutive_repeats must be >= 1")
        if self.length_ratio_max <= 1:
            raise ValueError("length_ratio_max must be > 1")


def has_excessive_repeat(text: str, k: int) -> bool:
    """True iff one word or one character runs more than k times in a row.

    Words are whitespace-delimited; the character scan covers the raw
    text. Either trigger suffices.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    run = 0
    prev = None
    for word in text.split():
        run = run + 1 if word == prev else 1
        if run > k:
            return True
        prev = word
    run = 0
    prev = None
    for ch in text:
        run = run + 1 if ch == prev else 1
        if run > k:
            return True
        prev = ch
    return False


def clean_birecord(rec: BiRecord, cfg: CleanConfig) -> str | None:
    """Drop reason for a bilingual record, or None to keep it."""
    src = rec.src_txt.strip()
    tgt = rec.tgt_txt.strip()
    if len(src) < cfg.min_chars or len(tgt) < cfg.min_chars:
        return REASON_MISSING
    if has_excessive_repeat(rec.src_txt, cfg.max_consecutive_repeats) or has_excessive_repeat(
        rec.tgt_txt, cfg.max_consecutive_repeats
    ):
        return REASON_REPEAT
    lo, hi = sorted((len(src), len(tgt)))
    if lo == 0 or hi / lo > cfg.length_ratio_max:
        return REASON_LENGTH
    return None


def clean_monorecord(rec: MonoRecord, cfg: CleanConfig) -> str | None:
    """Drop reason for a monolingual record, or None to keep it."""
    if len(rec.text.strip()) < cfg.min_chars:
        return REASON_EMPTY
    if has_excessive_repeat(rec.text, cfg.max_consecutive_repeats):
        return REASON_REPEAT
    return None


def _canon(text: str) -> str:
    return " ".join(unicodedata.normalize("NFC", text).split())


def content_key(rec: Record) -> str:
    """Canonical content tuple as one string; metadata never contributes."""
    if isinstance(rec, BiRecord):
        return _canon(rec.src_txt) + "\x1f" + _canon(rec.tgt_txt)
    return _canon(rec.text)


def content_digest(rec: Record) -> bytes:
    return hashlib.blake2b(content_key(rec).encode("utf-8"), digest_size=DIGEST_SIZE).digest()


class DedupIndex:
    """Set of content digests with an atomic insert-or-check."""

    def __init__(self, digests: Iterable[bytes] = ()):
        self._seen: set[bytes] = set(digests)
        self._lock = threading.Lock()

    def add(self, digest: bytes) -> bool:
        """Insert; True iff the digest was not yet present."""
        with self._lock:
            if digest in self._seen:
                return False
            self._seen.add(digest)
            return True

    def __contains__(self, digest: bytes) -> bool:
        return digest in self._seen

    def __len__(self) -> int:
        return len(self._seen)


def dedup(records: Iterable[Record], index: DedupIndex | None = None) -> Iterator[Record]:
    """Emit the first occurrence of each content digest, in input order.

    A pre-populated index extends dedup across files.
    """
    if index is None:
        index = DedupIndex()
    for rec in records:
        if index.add(content_digest(rec)):
            yield rec
