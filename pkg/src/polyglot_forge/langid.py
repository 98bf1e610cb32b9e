"""Language-code normalization against a vendored ISO 639 table.

Source datasets denote languages in whatever convention their publisher
used (two-letter codes, bibliographic codes, BCP-47-ish tags with region
or script subtags). Everything is rewritten to one member code, or to
"unknown" when no rewrite exists.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from typing import Mapping, NamedTuple

from .records import LanguageTag

UNKNOWN_CODE = "unknown"
_SUBTAG_SPLIT = re.compile(r"[-_]")


@dataclass(frozen=True)
class CodeTable:
    """Immutable member-code set plus denotation rewrite map."""

    members: frozenset[str]
    aliases: Mapping[str, str]
    registry_version: str

    def __post_init__(self):
        bad = {code for code in self.aliases.values() if code not in self.members}
        if bad:
            raise ValueError(f"alias targets outside member set: {sorted(bad)[:5]}")


class NormalizedCode(NamedTuple):
    code: str
    method: str  # "exact" | "alias" | "unknown"
    subtags: tuple[str, ...]  # region/script subtags stripped from the denotation


def _data_text(name: str) -> str:
    return resources.files("polyglot_forge.data").joinpath(name).read_text(encoding="utf-8")


def _parse_version(text: str) -> str:
    for line in text.splitlines():
        if line.startswith("# registry_version:"):
            return line.split(":", 1)[1].strip()
    return "unknown"


def load_code_table() -> CodeTable:
    """Load the packaged member and alias tables."""
    members_text = _data_text("iso639_members.txt")
    aliases_text = _data_text("lang_aliases.tsv")
    members = frozenset(
        line.strip() for line in members_text.splitlines() if line.strip() and not line.startswith("#")
    )
    aliases = {}
    for line in aliases_text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        denotation, code = line.split("\t")
        aliases[denotation.strip()] = code.strip()
    return CodeTable(members, aliases, _parse_version(members_text))


def normalize_code(denotation: str, table: CodeTable) -> NormalizedCode:
    """Rewrite one source-language denotation to a member code.

    Base subtag already a member -> exact; otherwise the alias table is
    tried on the full denotation and then on the base; otherwise the code
    is "unknown". Case-insensitive, deterministic, never raises.
    """
    lowered = denotation.strip().lower()
    parts = [p for p in _SUBTAG_SPLIT.split(lowered) if p]
    if not parts:
        return NormalizedCode(UNKNOWN_CODE, "unknown", ())
    base, subtags = parts[0], tuple(parts[1:])
    if base in table.members:
        return NormalizedCode(base, "exact", subtags)
    joined = "-".join(parts)
    for candidate in (joined, base):
        code = table.aliases.get(candidate)
        if code is not None:
            return NormalizedCode(code, "alias", subtags)
    return NormalizedCode(UNKNOWN_CODE, "unknown", subtags)


def make_pair_label(src: LanguageTag, tgt: LanguageTag) -> str:
    """Render the directed pair label "src_Scr-tgt_Scr"."""
    return f"{src.render()}-{tgt.render()}"


def canonical_pair(src: LanguageTag, tgt: LanguageTag) -> tuple[LanguageTag, LanguageTag]:
    """Order a pair by rendered form so X-Y and Y-X share one statistics key."""
    if tgt.render() < src.render():
        return tgt, src
    return src, tgt
