import random

import pytest

from polyglot_forge.langid import load_code_table
from polyglot_forge.records import BiRecord, LanguageTag, MonoRecord
from polyglot_forge.script_detect import load_script_ranges


@pytest.fixture(scope="session")
def code_table():
    return load_code_table()


@pytest.fixture(scope="session")
def script_ranges():
    return load_script_ranges()


# Text pool mixing scripts, whitespace, and JSON-hostile characters.
TEXT_ALPHABET = (
    "abcdefghij ABCDE 0123456789"
    "äöüßéèñçø"
    "приветмир"
    "中文字符串"
    "اللغةالعربية"
    "देवनागरी"
    "ελληνικά"
    "한국어"
    '"\\\n\t[]{}:,'
)


def random_text(rng: random.Random, min_len: int = 1, max_len: int = 40) -> str:
    n = rng.randint(min_len, max_len)
    return "".join(rng.choice(TEXT_ALPHABET) for _ in range(n))


def random_tag(rng: random.Random) -> LanguageTag:
    code = "".join(rng.choice("abcdefghijklmnopqrstuvwxyz") for _ in range(3))
    script = rng.choice(["Latn", "Cyrl", "Hani", "Arab", "Deva", "Grek", "Hang", "Zzzz"])
    return LanguageTag(code, script)


def random_mono(rng: random.Random) -> MonoRecord:
    return MonoRecord(
        text=random_text(rng),
        lang=random_tag(rng),
        url=None if rng.random() < 0.5 else "https://example.org/" + random_text(rng, 1, 8),
        collection=random_text(rng, 1, 8),
        source=random_text(rng, 1, 8),
        original_lang=random_text(rng, 1, 8),
        extras={} if rng.random() < 0.7 else {"zz_extra": random_text(rng, 1, 8)},
    )


def random_bi(rng: random.Random) -> BiRecord:
    return BiRecord(
        src_lang=random_tag(rng),
        src_txt=random_text(rng),
        tgt_lang=random_tag(rng),
        tgt_txt=random_text(rng),
        url=None if rng.random() < 0.5 else "https://example.org/" + random_text(rng, 1, 8),
        collection=random_text(rng, 1, 8),
        source=random_text(rng, 1, 8),
        original_src_lang=random_text(rng, 1, 5),
        original_tgt_lang=random_text(rng, 1, 5),
        extras={} if rng.random() < 0.7 else {"zz_extra": random_text(rng, 1, 8)},
    )
