"""Writing-system detection over a vendored Unicode Scripts table.

A dataset gets exactly one ISO 15924 code. Detection counts script-bearing
code points over the first 100 non-empty lines; when that sample is too
diluted by symbols, digits and punctuation to clear the confidence
threshold, the first non-empty line alone decides.
"""

from __future__ import annotations

import unicodedata
from bisect import bisect_right
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, NamedTuple

UNDETERMINED = "Zzzz"
_IGNORABLE_SCRIPTS = frozenset({"Zyyy", "Zinh"})  # Common, Inherited

# Share of script-bearing points at which kana / hangul alongside Han
# ideographs flips the label to the composite Jpan / Kore code.
COMPOSITE_MIN_SHARE = 0.05


class UndetectableScript(ValueError):
    """No non-empty line to look at; callers label the dataset Zzzz."""


@dataclass(frozen=True)
class ScriptRanges:
    """Sorted disjoint code-point ranges -> ISO 15924; gaps are Zzzz."""

    starts: tuple[int, ...]
    ends: tuple[int, ...]
    codes: tuple[str, ...]
    unicode_version: str

    def script_of(self, codepoint: int) -> str:
        i = bisect_right(self.starts, codepoint) - 1
        if i >= 0 and codepoint <= self.ends[i]:
            return self.codes[i]
        return UNDETERMINED


class LineScript(NamedTuple):
    script: str
    confidence: float


def load_script_ranges() -> ScriptRanges:
    """Load the packaged Unicode Scripts property table."""
    text = resources.files("polyglot_forge.data").joinpath("script_ranges.tsv").read_text("utf-8")
    starts, ends, codes = [], [], []
    version = "unknown"
    for line in text.splitlines():
        if line.startswith("#"):
            if line.startswith("# unicode_version:"):
                version = line.split(":", 1)[1].strip()
            continue
        if not line.strip():
            continue
        start, end, code = line.split("\t")
        starts.append(int(start, 16))
        ends.append(int(end, 16))
        codes.append(code)
    return ScriptRanges(tuple(starts), tuple(ends), tuple(codes), version)


def _tally(text: str, ranges: ScriptRanges, counts: dict[str, int]) -> int:
    """Add per-script counts for one chunk; returns its non-whitespace total."""
    nonspace = 0
    for ch in text:
        if ch.isspace():
            continue
        nonspace += 1
        script = ranges.script_of(ord(ch))
        if script in _IGNORABLE_SCRIPTS:
            continue
        cat = unicodedata.category(ch)
        if cat == "Nd" or cat.startswith("P"):
            continue
        counts[script] = counts.get(script, 0) + 1
    return nonspace


def _winning_script(counts: dict[str, int]) -> tuple[str, int]:
    """Plurality script after composite (Jpan/Kore) merging; Zzzz if empty."""
    counted = sum(counts.values())
    if counted == 0:
        return UNDETERMINED, 0
    hani = counts.get("Hani", 0)
    kana = counts.get("Hira", 0) + counts.get("Kana", 0)
    hang = counts.get("Hang", 0)
    merged = dict(counts)
    if hani:
        if kana / counted > COMPOSITE_MIN_SHARE and kana >= hang:
            merged["Jpan"] = hani + kana
            for key in ("Hani", "Hira", "Kana"):
                merged.pop(key, None)
        elif hang / counted > COMPOSITE_MIN_SHARE:
            merged["Kore"] = hani + hang
            for key in ("Hani", "Hang"):
                merged.pop(key, None)
    # ties break toward the lexicographically smaller code, deterministically
    script = max(sorted(merged), key=lambda s: merged[s])
    return script, merged[script]


def line_script(line: str, ranges: ScriptRanges) -> LineScript:
    """Plurality script of one line and its share of script-bearing points."""
    counts: dict[str, int] = {}
    _tally(line, ranges, counts)
    script, top = _winning_script(counts)
    counted = sum(counts.values())
    return LineScript(script, top / counted if counted else 0.0)


def dataset_script(
    lines: Iterable[str],
    ranges: ScriptRanges,
    sample_size: int = 100,
    threshold: float = 0.5,
) -> str:
    """Assign the single script of a dataset from its leading sample.

    The winner's share is measured against all non-whitespace code points
    in the sample, so symbol- or digit-heavy data fails the threshold and
    falls back to first-line analysis. Raises UndetectableScript when
    there is no non-empty line at all.
    """
    if sample_size < 1:
        raise ValueError("sample_size must be >= 1")
    sample: list[str] = []
    for line in lines:
        if line.strip():
            sample.append(line)
            if len(sample) >= sample_size:
                break
    if not sample:
        raise UndetectableScript("no non-empty lines in dataset")
    counts: dict[str, int] = {}
    nonspace = 0
    for line in sample:
        nonspace += _tally(line, ranges, counts)
    script, top = _winning_script(counts)
    if nonspace and top / nonspace >= threshold:
        return script
    return line_script(sample[0], ranges).script
