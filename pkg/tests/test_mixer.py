import math
import random
from fractions import Fraction

import pytest

from polyglot_forge.mixer import (
    MixInput,
    MixPlanError,
    SamplePlan,
    as_rate,
    derive_monolingual_mix,
    load_reference_mix,
    load_reference_shares,
    plan_mix,
    round_half_up,
    sample_records,
    training_budget,
)
from polyglot_forge.records import LanguageTag, MonoRecord

ENG = LanguageTag("eng", "Latn")


def test_as_rate_exact():
    assert as_rate("0.1") == Fraction(1, 10)
    assert as_rate(0.1) == Fraction(1, 10)  # via shortest-repr decimal
    assert as_rate(20.0) == Fraction(20)
    assert as_rate(2) == Fraction(2)
    with pytest.raises(MixPlanError):
        as_rate(0)
    with pytest.raises(MixPlanError):
        as_rate("-1")
    with pytest.raises(MixPlanError):
        as_rate("abc")


def test_round_half_up():
    assert round_half_up(Fraction(1, 2)) == 1
    assert round_half_up(Fraction(3, 2)) == 2
    assert round_half_up(Fraction(49, 100)) == 0
    assert round_half_up(Fraction(7)) == 7
    # rows that exercise the .7 / .6 / .2 fractional tails
    assert round_half_up(Fraction(9_204_199_807, 10)) == 920_419_981
    assert round_half_up(Fraction(46_777_497_823, 5)) == 9_355_499_565
    assert round_half_up(Fraction(3_002_029_817, 10)) == 300_202_982


class TestReferencePlan:
    def test_final_counts_and_discrepancy_flag(self):
        inputs = load_reference_mix()
        plan = plan_mix(inputs)
        shares = load_reference_shares()
        assert len(plan.rows) == 24
        flagged = [r for r in plan.rows if not r.rate_consistent]
        assert [(r.data_type, r.category) for r in flagged] == [("bilingual", "very high")]
        for row, ref in zip(plan.rows, shares):
            if (row.data_type, row.category) == ("bilingual", "very high"):
                # rate-consistent arithmetic says twice the stated value
                assert row.computed_final_tokens == 8_500_109_736
                assert row.final_tokens == ref["final_tokens"]
            else:
                assert row.computed_final_tokens == ref["final_tokens"]
                assert row.final_tokens == ref["final_tokens"]
        assert len(plan.warnings) == 1
        assert "implies rate 0.05" in plan.warnings[0]

    def test_percentages_match_published(self):
        plan = plan_mix(load_reference_mix())
        for row, ref in zip(plan.rows, load_reference_shares()):
            assert abs(float(row.pct_bilingual_mix) * 100 - float(ref["pct_bilingual_mix"])) <= 0.01
            if ref["pct_monolingual_mix"] is None:
                assert row.pct_monolingual_mix is None
            else:
                assert abs(float(row.pct_monolingual_mix) * 100 - float(ref["pct_monolingual_mix"])) <= 0.01

    def test_percentage_columns_sum_to_one(self):
        plan = plan_mix(load_reference_mix())
        assert sum(r.pct_bilingual_mix for r in plan.rows) == 1
        assert sum(r.pct_monolingual_mix for r in plan.rows if r.pct_monolingual_mix is not None) == 1

    def test_code_row_shares(self):
        plan = plan_mix(load_reference_mix())
        code = next(r for r in plan.rows if r.data_type == "code")
        assert round(float(code.pct_bilingual_mix) * 100, 2) == 14.99
        assert round(float(code.pct_monolingual_mix) * 100, 2) == 22.15


def test_plan_mix_validation():
    with pytest.raises(MixPlanError):
        plan_mix([])
    row = MixInput("code", "code", 10, as_rate(1))
    with pytest.raises(MixPlanError):
        plan_mix([row, row])
    with pytest.raises(MixPlanError):
        MixInput("poetry", "x", 1, as_rate(1))


def test_rate_one_is_identity():
    plan = plan_mix([MixInput("book", "Gutenberg", 123_456, as_rate("1.0"))])
    assert plan.rows[0].final_tokens == 123_456


def test_derive_monolingual_examples():
    plan = plan_mix(load_reference_mix())
    mono = derive_monolingual_mix(plan)
    assert all(r.data_type != "bilingual" for r in mono.rows)
    instruction_en = next(r for r in mono.rows if (r.data_type, r.category) == ("instruction", "EN"))
    assert round(float(instruction_en.pct_monolingual_mix) * 100, 2) == 0.47
    # non-bilingual masses unchanged
    for row in mono.rows:
        original = next(r for r in plan.rows if (r.data_type, r.category) == (row.data_type, row.category))
        assert row.final_tokens == original.final_tokens

    # fixed point when nothing is bilingual
    assert derive_monolingual_mix(mono) == mono

    # synthetic two-row plan
    two = plan_mix(
        [
            MixInput("monolingual", "low", 75, as_rate(1)),
            MixInput("bilingual", "low", 25, as_rate(1)),
        ]
    )
    derived = derive_monolingual_mix(two)
    assert len(derived.rows) == 1
    assert derived.rows[0].pct_monolingual_mix == 1


def test_training_budget():
    assert training_budget(25_000, 2048, 8192) == 419_430_400_000
    assert training_budget(40_000, 2048, 8192) == 671_088_640_000
    assert training_budget(1, 1, 1) == 1
    with pytest.raises(ValueError):
        training_budget(0, 1, 1)


def records_n(n: int):
    return [MonoRecord(f"w{i}", ENG) for i in range(n)]


def test_sample_rate_two_exact_doubling():
    records = records_n(100)
    out = list(sample_records(records, SamplePlan(as_rate("2.0"), seed=1)))
    assert len(out) == 200
    assert out[0] == out[1] == records[0]


def test_sample_determinism():
    records = records_n(1000)
    plan = SamplePlan(as_rate("0.4"), seed=99)
    a = [r.text for r in sample_records(records, plan)]
    b = [r.text for r in sample_records(records, plan)]
    assert a == b
    c = [r.text for r in sample_records(records, SamplePlan(as_rate("0.4"), seed=100))]
    assert a != c  # different seed, different picks


def test_sample_binomial_bound():
    n = 100_000
    records = records_n(n)
    out = list(sample_records(records, SamplePlan(as_rate("0.5"), seed=0)))
    sigma = math.sqrt(n * 0.5 * 0.5)
    assert abs(len(out) - n / 2) < 3 * sigma


def test_sample_count_bounds_random_rates():
    rng = random.Random(6)
    records = records_n(500)
    for _ in range(20):
        rate = Fraction(rng.randint(1, 70), 20)  # 0.05 .. 3.5
        out = list(sample_records(records, SamplePlan(rate, seed=rng.randint(0, 2**32))))
        assert len(records) * math.floor(rate) <= len(out) <= len(records) * math.ceil(rate)


def test_sample_plan_fields():
    plan = SamplePlan(as_rate("2.75"), seed=0)
    assert plan.repeats == 2
    assert plan.residual == Fraction(3, 4)


def test_plan_manifest_round_trips_values():
    plan = plan_mix(load_reference_mix())
    manifest = plan.to_manifest(seed=7, tool_version="x")
    assert manifest["seed"] == 7
    assert len(manifest["rows"]) == 24
    assert manifest["bilingual_denominator"] == plan.bilingual_denominator
    flagged = [r for r in manifest["rows"] if not r["rate_consistent"]]
    assert len(flagged) == 1 and flagged[0]["category"] == "very high"


def test_render_table_shape():
    text = plan_mix(load_reference_mix()).render_table()
    lines = text.splitlines()
    assert lines[0].startswith("type")
    assert any(line.startswith("WARNING:") for line in lines)
    assert any("14.99%" in line for line in lines)
