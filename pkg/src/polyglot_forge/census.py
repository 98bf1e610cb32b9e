"""Token/segment censuses, resource tiers, and the stats report.

Counts are exact integers throughout; scientific notation ("4.3E+11") is
applied only when rendering reports.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import IO, Iterable

from .langid import canonical_pair, make_pair_label
from .records import BiRecord, Record


def count_tokens(text: str) -> int:
    """Number of whitespace-separated tokens (maximal non-whitespace runs)."""
    return len(text.split())


class ResourceTier(enum.Enum):
    VERY_HIGH = "very-high"
    HIGH = "high"
    MEDIUM_HIGH = "medium-high"
    MEDIUM = "medium"
    MEDIUM_LOW = "medium-low"
    LOW = "low"
    VERY_LOW = "very-low"

    def __str__(self) -> str:
        return self.value


# Strict greater-than at every boundary; 10**10 exactly is high, 10**6
# exactly is very-low.
_TIER_FLOORS = (
    (10_000_000_000, ResourceTier.VERY_HIGH),
    (1_000_000_000, ResourceTier.HIGH),
    (500_000_000, ResourceTier.MEDIUM_HIGH),
    (100_000_000, ResourceTier.MEDIUM),
    (10_000_000, ResourceTier.MEDIUM_LOW),
    (1_000_000, ResourceTier.LOW),
)


def classify_tier(tokens: int) -> ResourceTier:
    if tokens < 0:
        raise ValueError("token count must be >= 0")
    for floor, tier in _TIER_FLOORS:
        if tokens > floor:
            return tier
    return ResourceTier.VERY_LOW


def normalize_category(label: str) -> str:
    """Fold "very high" / "very_high" / "Very-High" to one spelling."""
    return label.strip().lower().replace(" ", "-").replace("_", "-")


@dataclass
class KeyStats:
    segments: int = 0
    tokens: int = 0

    def add(self, tokens: int) -> None:
        self.segments += 1
        self.tokens += tokens


@dataclass
class CorpusStats:
    """Per-language / per-pair censuses with tier roll-ups."""

    per_key: dict[str, KeyStats] = field(default_factory=dict)

    def add_record(self, rec: Record) -> None:
        if isinstance(rec, BiRecord):
            src, tgt = canonical_pair(rec.src_lang, rec.tgt_lang)
            key = make_pair_label(src, tgt)
            tokens = count_tokens(rec.src_txt) + count_tokens(rec.tgt_txt)
        else:
            key = rec.lang.render()
            tokens = count_tokens(rec.text)
        self.per_key.setdefault(key, KeyStats()).add(tokens)

    def merge(self, other: "CorpusStats") -> None:
        for key, stats in other.per_key.items():
            mine = self.per_key.setdefault(key, KeyStats())
            mine.segments += stats.segments
            mine.tokens += stats.tokens

    @property
    def total_tokens(self) -> int:
        return sum(s.tokens for s in self.per_key.values())

    @property
    def total_segments(self) -> int:
        return sum(s.segments for s in self.per_key.values())

    def tier_summary(self) -> dict[ResourceTier, KeyStats]:
        """Per-tier key counts and token sums; `segments` counts keys here."""
        summary: dict[ResourceTier, KeyStats] = {}
        for stats in self.per_key.values():
            tier = classify_tier(stats.tokens)
            agg = summary.setdefault(tier, KeyStats())
            agg.segments += 1
            agg.tokens += stats.tokens
        return summary


def aggregate(records: Iterable[Record]) -> CorpusStats:
    """Single-pass census; order-independent by construction."""
    stats = CorpusStats()
    for rec in records:
        stats.add_record(rec)
    return stats


def render_scientific(n: int, sig_digits: int = 2) -> str:
    """Report-style scientific notation, e.g. 428680000000 -> "4.3E+11"."""
    if n < 0:
        raise ValueError("count must be >= 0")
    if n == 0:
        return "0.0E+00"
    d = Decimal(n)
    exp = d.adjusted()
    quantum = Decimal(1).scaleb(1 - sig_digits)
    mantissa = d.scaleb(-exp).quantize(quantum, rounding=ROUND_HALF_UP)
    if mantissa >= 10:
        mantissa = (mantissa / 10).quantize(quantum, rounding=ROUND_HALF_UP)
        exp += 1
    return f"{mantissa}E+{exp:02d}"


def write_stats_tsv(stats: CorpusStats, sink: IO) -> None:
    """TSV report: key, segments, tokens, tier; keys sorted for diffing."""
    sink.write("key\tsegments\ttokens\ttier\n")
    for key in sorted(stats.per_key):
        s = stats.per_key[key]
        sink.write(f"{key}\t{s.segments}\t{s.tokens}\t{classify_tier(s.tokens)}\n")


def tier_summary_json(stats: CorpusStats) -> str:
    summary = stats.tier_summary()
    doc = {
        "tiers": {
            tier.value: {
                "keys": summary[tier].segments,
                "tokens": summary[tier].tokens,
                "tokens_scientific": render_scientific(summary[tier].tokens),
            }
            for tier in ResourceTier
            if tier in summary
        },
        "total_keys": len(stats.per_key),
        "total_tokens": stats.total_tokens,
        "total_tokens_scientific": render_scientific(stats.total_tokens),
    }
    return json.dumps(doc, indent=2)
