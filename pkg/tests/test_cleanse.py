import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polyglot_forge.cleanse import (
    REASON_LENGTH,
    REASON_MISSING,
    REASON_REPEAT,
    CleanConfig,
    DedupIndex,
    clean_birecord,
    clean_monorecord,
    content_digest,
    content_key,
    dedup,
    has_excessive_repeat,
)
from polyglot_forge.records import BiRecord, LanguageTag, MonoRecord

ENG = LanguageTag("eng", "Latn")
FRA = LanguageTag("fra", "Latn")


def bi(src: str, tgt: str, **kw) -> BiRecord:
    return BiRecord(ENG, src, FRA, tgt, **kw)


class TestRepeatFilter:
    def test_six_consecutive_words(self):
        assert has_excessive_repeat("go go go go go go", 5) is True

    def test_five_words_allowed(self):
        assert has_excessive_repeat("go go go go go", 5) is False

    def test_char_run(self):
        # run-length oracle: longest run in "baaaaaad" is 6 a's
        longest = max(len(list(g)) for _, g in itertools.groupby("baaaaaad"))
        assert longest == 6
        assert has_excessive_repeat("baaaaaad", 5) is True

    def test_boundary_runs(self):
        for n in (1, 2, 3, 4, 5):
            assert has_excessive_repeat("tok " * n, 5) is False
            assert has_excessive_repeat("x" * n + " ok", 5) is False
        for n in (6, 7, 20):
            assert has_excessive_repeat(("tok " * n).strip(), 5) is True
            assert has_excessive_repeat("x" * n + " ok", 5) is True

    def test_interrupted_run_resets(self):
        assert has_excessive_repeat("a a a b a a a", 3) is False
        assert has_excessive_repeat("a a a a b", 3) is True

    def test_k_validation(self):
        with pytest.raises(ValueError):
            has_excessive_repeat("x", 0)


class TestCleanBirecord:
    def test_missing_translation(self):
        assert clean_birecord(bi("Hello.", ""), CleanConfig()) == REASON_MISSING
        assert clean_birecord(bi("   ", "Bonjour."), CleanConfig()) == REASON_MISSING

    def test_length_mismatch(self):
        reason = clean_birecord(bi("Hi", "x" * 200 + " y"), CleanConfig(length_ratio_max=9.0))
        # 202/2 = 101 > 9 -> mismatch (no char run: alternate chars)
        rec = bi("Hi", "xy" * 100)
        assert clean_birecord(rec, CleanConfig(length_ratio_max=9.0)) == REASON_LENGTH
        assert reason in (REASON_LENGTH, REASON_REPEAT)  # 200 x's also trip the repeat rule

    def test_keep(self):
        assert clean_birecord(bi("Good morning", "Bonjour"), CleanConfig()) is None

    def test_reason_order_missing_first(self):
        assert clean_birecord(bi("", "aaaaaaaa"), CleanConfig()) == REASON_MISSING

    def test_repeat_on_either_side(self):
        assert clean_birecord(bi("fine text here", "ha ha ha ha ha ha"), CleanConfig()) == REASON_REPEAT
        assert clean_birecord(bi("ha ha ha ha ha ha", "fine text here"), CleanConfig()) == REASON_REPEAT

    def test_monotone_in_config(self):
        rng = random.Random(11)
        words = ["alpha", "beta", "gamma", "x", "yy"]
        for _ in range(300):
            src = " ".join(rng.choice(words) for _ in range(rng.randint(1, 12)))
            tgt = " ".join(rng.choice(words) for _ in range(rng.randint(1, 12)))
            rec = bi(src, tgt)
            tight = CleanConfig(max_consecutive_repeats=3, length_ratio_max=2.0)
            loose = CleanConfig(max_consecutive_repeats=8, length_ratio_max=50.0)
            if clean_birecord(rec, tight) is None:
                assert clean_birecord(rec, loose) is None

    def test_mono_clean(self):
        assert clean_monorecord(MonoRecord("", ENG), CleanConfig()) is not None
        assert clean_monorecord(MonoRecord("fine text", ENG), CleanConfig()) is None
        assert clean_monorecord(MonoRecord("no no no no no no", ENG), CleanConfig()) == REASON_REPEAT

    def test_config_validation(self):
        with pytest.raises(ValueError):
            CleanConfig(max_consecutive_repeats=0)
        with pytest.raises(ValueError):
            CleanConfig(length_ratio_max=1.0)


class TestDedup:
    def test_exact_duplicate(self):
        a, b = bi("one", "un"), bi("two", "deux")
        assert list(dedup([a, b, a])) == [a, b]

    def test_idempotent(self):
        rng = random.Random(2)
        records = [bi(f"s{rng.randint(0, 30)}", f"t{rng.randint(0, 30)}") for _ in range(200)]
        once = list(dedup(records))
        assert list(dedup(once)) == once

    def test_metadata_excluded_from_digest(self):
        a = bi("same", "pareil", url="https://a.example")
        b = bi("same", "pareil", url="https://b.example", collection="other")
        assert content_digest(a) == content_digest(b)
        assert list(dedup([a, b])) == [a]

    def test_nfc_and_whitespace_collapse(self):
        composed = bi("café noir", "x")
        decomposed = bi("café   noir ", "x")
        assert content_key(composed) == content_key(decomposed)
        assert len(list(dedup([composed, decomposed]))) == 1

    def test_cross_file_index(self):
        a = bi("shared", "partagé")
        index = DedupIndex()
        first = list(dedup([a], index))
        second = list(dedup([a], index))
        assert first == [a] and second == []

    def test_mono_keys_on_text_only(self):
        a = MonoRecord("same text", ENG, collection="one")
        b = MonoRecord("same  text", FRA, collection="two")
        assert content_key(a) == content_key(b)

    def test_no_duplicate_content_in_output_bruteforce(self):
        rng = random.Random(7)
        records = [bi(f"w{rng.randint(0, 50)}", f"v{rng.randint(0, 50)}") for _ in range(500)]
        survivors = list(dedup(records))
        keys = [content_key(r) for r in survivors]
        for i in range(len(keys)):
            for j in range(i + 1, len(keys)):
                assert keys[i] != keys[j]

    def test_accounting(self):
        rng = random.Random(13)
        records = [bi(f"w{rng.randint(0, 20)}", "t") for _ in range(300)]
        survivors = list(dedup(records))
        distinct = len({content_key(r) for r in records})
        assert len(survivors) == distinct


@given(st.text(max_size=80), st.integers(min_value=1, max_value=6))
def test_repeat_filter_matches_bruteforce(text, k):
    def brute(t: str, limit: int) -> bool:
        words = t.split()
        for i in range(len(words)):
            if words[i : i + limit + 1] == [words[i]] * (limit + 1):
                return True
        for i in range(len(t)):
            if t[i : i + limit + 1] == t[i] * (limit + 1):
                return True
        return False

    assert has_excessive_repeat(text, k) == brute(text, k)
