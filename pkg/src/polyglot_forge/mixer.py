"""Data-mix planning, deterministic record sampling, and budget arithmetic.

Rates are exact fractions; final token counts are round-half-up. A row
may carry a stated final count (e.g. from the bundled reference mix):
when our arithmetic disagrees with it, the plan keeps the stated mass for
share accounting, reports the rate-consistent value alongside it, and
emits a loud warning instead of silently matching either number.
"""

from __future__ import annotations

import hashlib
import json
import logging
import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal, InvalidOperation
from fractions import Fraction
from importlib import resources
from typing import Iterable, Iterator, Sequence

from .cleanse import content_digest
from .records import Record

logger = logging.getLogger(__name__)

DATA_TYPES = ("instruction", "code", "book", "paper", "monolingual", "bilingual")
BILINGUAL_TYPE = "bilingual"


class MixPlanError(ValueError):
    pass


def as_rate(value: int | float | str | Fraction) -> Fraction:
    """Exact positive rate from config-style input ("0.1", 0.5, 2)."""
    if isinstance(value, Fraction):
        rate = value
    elif isinstance(value, int):
        rate = Fraction(value)
    else:
        try:
            rate = Fraction(Decimal(str(value)))
        except (InvalidOperation, ValueError) as e:
            raise MixPlanError(f"bad rate {value!r}") from e
    if rate <= 0:
        raise MixPlanError(f"rate must be > 0, got {value!r}")
    return rate


def round_half_up(x: Fraction) -> int:
    return math.floor(x + Fraction(1, 2))


@dataclass(frozen=True)
class MixInput:
    """One configured mix row; stated_final_tokens is an optional published
    value to check our arithmetic against."""

    data_type: str
    category: str
    original_tokens: int
    rate: Fraction
    stated_final_tokens: int | None = None

    def __post_init__(self):
        if self.data_type not in DATA_TYPES:
            raise MixPlanError(f"unknown data_type {self.data_type!r}")
        if self.original_tokens < 0:
            raise MixPlanError("original_tokens must be >= 0")


@dataclass(frozen=True)
class MixRow:
    data_type: str
    category: str
    original_tokens: int
    rate: Fraction
    final_tokens: int
    computed_final_tokens: int
    pct_bilingual_mix: Fraction
    pct_monolingual_mix: Fraction | None

    @property
    def rate_consistent(self) -> bool:
        return self.final_tokens == self.computed_final_tokens


@dataclass(frozen=True)
class MixPlan:
    rows: tuple[MixRow, ...]
    bilingual_denominator: int
    monolingual_denominator: int
    warnings: tuple[str, ...]

    def to_manifest(self, seed: int = 0, tool_version: str = "") -> dict:
        return {
            "tool_version": tool_version,
            "seed": seed,
            "bilingual_denominator": self.bilingual_denominator,
            "monolingual_denominator": self.monolingual_denominator,
            "warnings": list(self.warnings),
            "rows": [
                {
                    "data_type": r.data_type,
                    "category": r.category,
                    "rate": _render_rate(r.rate),
                    "original_tokens": r.original_tokens,
                    "final_tokens": r.final_tokens,
                    "computed_final_tokens": r.computed_final_tokens,
                    "rate_consistent": r.rate_consistent,
                    "pct_bilingual_mix": round(float(r.pct_bilingual_mix) * 100, 4),
                    "pct_monolingual_mix": (
                        None if r.pct_monolingual_mix is None else round(float(r.pct_monolingual_mix) * 100, 4)
                    ),
                }
                for r in self.rows
            ],
        }

    def render_table(self) -> str:
        """Aligned table: type, category, rate, original, final, both shares."""
        header = ("type", "category", "rate", "original", "final", "% full mix", "% mono mix")
        body = []
        for r in self.rows:
            body.append(
                (
                    r.data_type,
                    r.category,
                    _render_rate(r.rate),
                    f"{r.original_tokens:,}",
                    f"{r.final_tokens:,}" + ("" if r.rate_consistent else " !"),
                    _render_pct(r.pct_bilingual_mix),
                    "-" if r.pct_monolingual_mix is None else _render_pct(r.pct_monolingual_mix),
                )
            )
        widths = [max(len(row[i]) for row in [header, *body]) for i in range(len(header))]
        lines = ["  ".join(col.ljust(w) for col, w in zip(row, widths)).rstrip() for row in [header, *body]]
        lines.append(
            f"totals: full mix {self.bilingual_denominator:,} tokens, "
            f"bilingual-free mix {self.monolingual_denominator:,} tokens"
        )
        for warning in self.warnings:
            lines.append(f"WARNING: {warning}")
        return "\n".join(lines)


def _render_rate(rate: Fraction) -> str:
    return str(rate.numerator) if rate.denominator == 1 else f"{float(rate):g}"


def _render_pct(share: Fraction) -> str:
    # round-half-up to two decimals, matching the reference table's display
    value = Decimal(share.numerator * 100) / Decimal(share.denominator)
    return f"{value.quantize(Decimal('0.01'), rounding=ROUND_HALF_UP)}%"


def plan_mix(inputs: Sequence[MixInput]) -> MixPlan:
    """Compute final token counts and both mix-share columns.

    The full-mix share divides by the sum over all rows; the
    bilingual-free share divides by the sum over non-bilingual rows and
    is absent on bilingual rows.
    """
    if not inputs:
        raise MixPlanError("mix has no rows")
    seen = set()
    for row in inputs:
        key = (row.data_type, row.category)
        if key in seen:
            raise MixPlanError(f"duplicate mix row {row.data_type}/{row.category}")
        seen.add(key)

    finals: list[int] = []
    computed: list[int] = []
    warnings: list[str] = []
    for row in inputs:
        value = round_half_up(row.original_tokens * row.rate)
        computed.append(value)
        if row.stated_final_tokens is not None and row.stated_final_tokens != value:
            implied = Fraction(row.stated_final_tokens, row.original_tokens) if row.original_tokens else Fraction(0)
            warning = (
                f"{row.data_type}/{row.category}: stated final {row.stated_final_tokens:,} "
                f"!= rate-consistent {value:,} ({row.original_tokens:,} x {_render_rate(row.rate)}); "
                f"stated final implies rate {float(implied):.6g}"
            )
            warnings.append(warning)
            logger.warning(warning)
            finals.append(row.stated_final_tokens)
        else:
            finals.append(value)

    bi_denom = sum(finals)
    mono_denom = sum(f for row, f in zip(inputs, finals) if row.data_type != BILINGUAL_TYPE)
    if bi_denom == 0:
        raise MixPlanError("mix has zero total tokens")

    rows = []
    for row, final, comp in zip(inputs, finals, computed):
        rows.append(
            MixRow(
                data_type=row.data_type,
                category=row.category,
                original_tokens=row.original_tokens,
                rate=row.rate,
                final_tokens=final,
                computed_final_tokens=comp,
                pct_bilingual_mix=Fraction(final, bi_denom),
                pct_monolingual_mix=(
                    None if row.data_type == BILINGUAL_TYPE else Fraction(final, mono_denom) if mono_denom else Fraction(0)
                ),
            )
        )
    return MixPlan(tuple(rows), bi_denom, mono_denom, tuple(warnings))


def derive_monolingual_mix(plan: MixPlan) -> MixPlan:
    """Drop bilingual rows and rebase both share columns on what remains."""
    kept = [r for r in plan.rows if r.data_type != BILINGUAL_TYPE]
    denom = sum(r.final_tokens for r in kept)
    if denom == 0:
        raise MixPlanError("bilingual-free mix has zero total tokens")
    rows = tuple(
        MixRow(
            data_type=r.data_type,
            category=r.category,
            original_tokens=r.original_tokens,
            rate=r.rate,
            final_tokens=r.final_tokens,
            computed_final_tokens=r.computed_final_tokens,
            pct_bilingual_mix=Fraction(r.final_tokens, denom),
            pct_monolingual_mix=Fraction(r.final_tokens, denom),
        )
        for r in kept
    )
    warnings = tuple(w for w in plan.warnings if not w.startswith(BILINGUAL_TYPE + "/"))
    return MixPlan(rows, denom, denom, warnings)


def training_budget(steps: int, batch: int, seqlen: int) -> int:
    """Total training tokens: steps x global batch x sequence length."""
    if steps <= 0 or batch <= 0 or seqlen <= 0:
        raise ValueError("steps, batch and seqlen must all be positive")
    return steps * batch * seqlen


def load_reference_mix() -> list[MixInput]:
    """The bundled reference mix, stated finals included, for consistency checks."""
    doc = json.loads(resources.files("polyglot_forge.data").joinpath("reference_mix.json").read_text("utf-8"))
    return [
        MixInput(
            data_type=row["data_type"],
            category=row["category"],
            original_tokens=row["original_tokens"],
            rate=as_rate(row["rate"]),
            stated_final_tokens=row["final_tokens"],
        )
        for row in doc["rows"]
    ]


def load_reference_shares() -> list[dict]:
    """Raw reference rows including the published percentage columns."""
    doc = json.loads(resources.files("polyglot_forge.data").joinpath("reference_mix.json").read_text("utf-8"))
    return doc["rows"]


@dataclass(frozen=True)
class SamplePlan:
    """Record-level sampling at an exact rate, seeded and content-addressed."""

    rate: Fraction
    seed: int = 0

    def __post_init__(self):
        if self.rate < 0:
            raise MixPlanError("sampling rate must be >= 0")

    @property
    def repeats(self) -> int:
        return math.floor(self.rate)

    @property
    def residual(self) -> Fraction:
        return self.rate - self.repeats

    def copies_for(self, digest: bytes) -> int:
        """Copies to emit for a record with this content digest: the whole
        repeats, plus one more when the seeded 64-bit hash of the digest
        lands below the fractional part of the rate."""
        n = self.repeats
        if self.residual:
            h = hashlib.blake2b(digest, digest_size=8, key=self.seed.to_bytes(8, "little", signed=False))
            if Fraction(int.from_bytes(h.digest(), "big"), 2**64) < self.residual:
                n += 1
        return n


def sample_records(records: Iterable[Record], plan: SamplePlan) -> Iterator[Record]:
    """Emit each record floor(rate) times, plus once more with probability
    rate - floor(rate), decided by hashing the record's content digest with
    the seed. Same records + same seed => identical output, regardless of
    worker count or iteration interleaving."""
    for rec in records:
        for _ in range(plan.copies_for(content_digest(rec))):
            yield rec
