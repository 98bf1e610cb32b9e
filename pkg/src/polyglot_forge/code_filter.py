"""Quality filters for code files, bucketed by fork count.

Files forked more often get looser thresholds. All comparisons are
strict: average line length below the cap, maximum line length below the
cap, alphanumeric fraction above the floor.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple

REASON_AVG_LINE = "avg-line-length"
REASON_MAX_LINE = "max-line-length"
REASON_ALNUM = "alnum-fraction"


@dataclass(frozen=True)
class CodeFileMeta:
    content: str
    forks: int
    language_label: str = ""

    def __post_init__(self):
        if self.forks < 0:
            raise ValueError("forks must be >= 0")


@dataclass(frozen=True)
class BucketRule:
    avg_line_max: float
    max_line_max: int
    alnum_min: float

    def __post_init__(self):
        if self.avg_line_max <= 0 or self.max_line_max <= 0:
            raise ValueError("line-length caps must be positive")
        if not 0 < self.alnum_min < 1:
            raise ValueError("alnum_min must be in (0, 1)")


@dataclass(frozen=True)
class CodeFilterRules:
    """Fork buckets: <15, 15..25 inclusive, >25."""

    forks_over_25: BucketRule = BucketRule(120.0, 300, 0.30)
    forks_15_to_25: BucketRule = BucketRule(90.0, 150, 0.40)
    forks_under_15: BucketRule = BucketRule(80.0, 120, 0.45)
    language_min_count: int = 50_000
    always_keep: frozenset[str] = frozenset({"llvm"})


DEFAULT_RULES = CodeFilterRules()


class CodeMetrics(NamedTuple):
    avg_line_len: float
    max_line_len: int
    alnum_fraction: float


def _is_alnum(ch: str) -> bool:
    # Letters and decimal digits only; isalnum() would admit No/Nl numbers.
    cat = unicodedata.category(ch)
    return cat.startswith("L") or cat == "Nd"


def code_metrics(content: str) -> CodeMetrics:
    """Line-length and alphanumeric metrics; code points, LF-delimited."""
    lines = content.split("\n")
    if lines and lines[-1] == "":
        lines.pop()  # trailing LF terminates the last line
    if not lines:
        return CodeMetrics(0.0, 0, 0.0)
    total = sum(len(line) for line in lines)
    alnum = sum(1 for line in lines for ch in line if _is_alnum(ch))
    return CodeMetrics(
        total / len(lines),
        max(len(line) for line in lines),
        alnum / total if total else 0.0,
    )


def bucket_for(forks: int, rules: CodeFilterRules = DEFAULT_RULES) -> BucketRule:
    if forks > 25:
        return rules.forks_over_25
    if forks >= 15:
        return rules.forks_15_to_25
    return rules.forks_under_15


def keep_code_file(meta: CodeFileMeta, rules: CodeFilterRules = DEFAULT_RULES) -> str | None:
    """Drop reason for one code file, or None to keep it."""
    bucket = bucket_for(meta.forks, rules)
    metrics = code_metrics(meta.content)
    if not metrics.avg_line_len < bucket.avg_line_max:
        return REASON_AVG_LINE
    if not metrics.max_line_len < bucket.max_line_max:
        return REASON_MAX_LINE
    if not metrics.alnum_fraction > bucket.alnum_min:
        return REASON_ALNUM
    return None


def language_frequency_filter(
    counts: Mapping[str, int],
    min_count: int = DEFAULT_RULES.language_min_count,
    always_keep: Iterable[str] = DEFAULT_RULES.always_keep,
) -> set[str]:
    """Labels with at least min_count files, plus the always-keep set."""
    keep = set(always_keep)
    return {label for label, n in counts.items() if n >= min_count or label in keep}
