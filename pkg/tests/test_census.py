import io
import random

import pytest

from polyglot_forge.census import (
    CorpusStats,
    ResourceTier,
    aggregate,
    classify_tier,
    count_tokens,
    normalize_category,
    render_scientific,
    tier_summary_json,
    write_stats_tsv,
)
from polyglot_forge.records import BiRecord, LanguageTag, MonoRecord

from conftest import random_bi, random_mono

ENG = LanguageTag("eng", "Latn")
FRA = LanguageTag("fra", "Latn")


def test_count_tokens_examples():
    assert count_tokens("a b  c") == 3
    assert count_tokens("") == 0
    assert count_tokens("你好世界") == 1
    assert count_tokens("  leading and trailing  ") == 3
    assert count_tokens("tab\tand\nnewline") == 3


def test_classify_tier_examples():
    assert classify_tier(11_000_000_000) == ResourceTier.VERY_HIGH
    assert classify_tier(10**10) == ResourceTier.HIGH  # strict >
    assert classify_tier(999_999) == ResourceTier.VERY_LOW
    assert classify_tier(1_000_000) == ResourceTier.VERY_LOW  # 1M exactly stays below
    assert classify_tier(1_000_001) == ResourceTier.LOW
    assert classify_tier(500_000_001) == ResourceTier.MEDIUM_HIGH
    assert classify_tier(0) == ResourceTier.VERY_LOW


def test_classify_tier_monotone():
    order = [
        ResourceTier.VERY_LOW,
        ResourceTier.LOW,
        ResourceTier.MEDIUM_LOW,
        ResourceTier.MEDIUM,
        ResourceTier.MEDIUM_HIGH,
        ResourceTier.HIGH,
        ResourceTier.VERY_HIGH,
    ]
    rng = random.Random(4)
    samples = sorted(rng.randrange(0, 2 * 10**10) for _ in range(500))
    ranks = [order.index(classify_tier(n)) for n in samples]
    assert ranks == sorted(ranks)


def test_classify_rejects_negative():
    with pytest.raises(ValueError):
        classify_tier(-1)


def test_single_pair_aggregate():
    rec = BiRecord(ENG, "a b", FRA, "c")
    stats = aggregate([rec])
    assert stats.per_key == {"eng_Latn-fra_Latn": stats.per_key["eng_Latn-fra_Latn"]}
    entry = stats.per_key["eng_Latn-fra_Latn"]
    assert entry.segments == 1
    assert entry.tokens == 3


def test_pair_directions_share_key():
    a = BiRecord(ENG, "one two", FRA, "un deux")
    b = BiRecord(FRA, "trois", ENG, "three")
    stats = aggregate([a, b])
    assert list(stats.per_key) == ["eng_Latn-fra_Latn"]
    assert stats.per_key["eng_Latn-fra_Latn"].segments == 2
    assert stats.per_key["eng_Latn-fra_Latn"].tokens == 6


def test_aggregate_matches_bruteforce_and_order_independent():
    rng = random.Random(31)
    records = [random_mono(rng) for _ in range(500)] + [random_bi(rng) for _ in range(500)]

    # independent recount with plain dicts
    want_tokens: dict[str, int] = {}
    want_segments: dict[str, int] = {}
    for rec in records:
        if isinstance(rec, BiRecord):
            tags = sorted([rec.src_lang.render(), rec.tgt_lang.render()])
            key = f"{tags[0]}-{tags[1]}"
            tokens = len(rec.src_txt.split()) + len(rec.tgt_txt.split())
        else:
            key = rec.lang.render()
            tokens = len(rec.text.split())
        want_tokens[key] = want_tokens.get(key, 0) + tokens
        want_segments[key] = want_segments.get(key, 0) + 1

    stats = aggregate(records)
    assert {k: v.tokens for k, v in stats.per_key.items()} == want_tokens
    assert {k: v.segments for k, v in stats.per_key.items()} == want_segments

    shuffled = records[:]
    rng.shuffle(shuffled)
    again = aggregate(shuffled)
    assert {k: (v.segments, v.tokens) for k, v in again.per_key.items()} == {
        k: (v.segments, v.tokens) for k, v in stats.per_key.items()
    }


def test_tier_partition_sums_exactly():
    rng = random.Random(8)
    stats = CorpusStats()
    for i in range(200):
        rec = MonoRecord("tok " * rng.randint(1, 50), LanguageTag(f"l{i % 37:02d}x", "Latn"))
        stats.add_record(rec)
    summary = stats.tier_summary()
    assert sum(agg.tokens for agg in summary.values()) == stats.total_tokens
    assert sum(agg.segments for agg in summary.values()) == len(stats.per_key)


def test_merge_matches_single_pass():
    rng = random.Random(12)
    records = [random_bi(rng) for _ in range(400)]
    whole = aggregate(records)
    left = aggregate(records[:137])
    right = aggregate(records[137:])
    left.merge(right)
    assert {k: (v.segments, v.tokens) for k, v in left.per_key.items()} == {
        k: (v.segments, v.tokens) for k, v in whole.per_key.items()
    }


def test_render_scientific():
    assert render_scientific(428_680_000_000) == "4.3E+11"
    assert render_scientific(85_000_000_000) == "8.5E+10"
    assert render_scientific(180_000_000) == "1.8E+08"
    assert render_scientific(2_500_000_000) == "2.5E+09"
    assert render_scientific(9_960_000_000) == "1.0E+10"  # mantissa rollover
    assert render_scientific(1) == "1.0E+00"
    assert render_scientific(0) == "0.0E+00"
    assert render_scientific(950) == "9.5E+02"


def test_tier_band_token_sums():
    """The seven per-tier token sums roll up to a 4.3E+11 grand total."""
    per_tier = {
        ResourceTier.VERY_HIGH: int(8.5e10),
        ResourceTier.HIGH: int(2.1e11),
        ResourceTier.MEDIUM_HIGH: int(4.7e10),
        ResourceTier.MEDIUM: int(6.4e10),
        ResourceTier.MEDIUM_LOW: int(2.0e10),
        ResourceTier.LOW: int(2.5e9),
        ResourceTier.VERY_LOW: int(1.8e8),
    }
    total = sum(per_tier.values())
    assert total > 426_000_000_000
    assert render_scientific(total) == "4.3E+11"


def test_stats_tsv_shape():
    stats = aggregate([BiRecord(ENG, "a b", FRA, "c"), MonoRecord("hello there", ENG)])
    buf = io.StringIO()
    write_stats_tsv(stats, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "key\tsegments\ttokens\ttier"
    assert lines[1] == "eng_Latn\t1\t2\tvery-low"
    assert lines[2] == "eng_Latn-fra_Latn\t1\t3\tvery-low"
    assert "very-low" in tier_summary_json(stats)


def test_normalize_category():
    assert normalize_category("very high") == "very-high"
    assert normalize_category("Very_High") == "very-high"
    assert normalize_category("medium-low") == "medium-low"
