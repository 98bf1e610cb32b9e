#!/usr/bin/env python3
"""Regenerate the ISO 639 code tables under src/polyglot_forge/data/.

Inputs are the SIL registry redistributions shipped by the `iso-639-3` and
`iso-639-2` npm packages, converted to JSON (one array per file):

    npm pack iso-639-3 iso-639-2   # then extract and export the arrays

Produces:
    iso639_members.txt  - codes accepted verbatim as normalized languages
    lang_aliases.tsv    - denotation -> member code rewrite table

Membership is ISO 639-3 plus the 639-2 collective codes that have no 639-3
equivalent, the qaa..qtz private-use range, and a small legacy overlay, so
that labels seen in real corpus collections stay representable. Usage:

    python tools/gen_iso639_tables.py iso6393.json iso6392.json
"""

import json
import string
import sys
from pathlib import Path

DATA_DIR = Path(__file__).resolve().parent.parent / "src" / "polyglot_forge" / "data"

# Codes retired from ISO 639-3 but still present in corpus labels.
LEGACY_MEMBERS = {
    "eml": "Emiliano-Romagnolo (retired 2009, split egl/rgn)",
}

# Withdrawn / pre-standard denotations seen in OPUS-era corpora.
LEGACY_ALIASES = {
    "iw": "heb",   # pre-1989 Hebrew
    "in": "ind",   # pre-1989 Indonesian
    "ji": "yid",   # pre-1989 Yiddish
    "jw": "jav",   # common misspelling of jv
    "sh": "hbs",   # withdrawn Serbo-Croatian
    "mo": "ron",   # withdrawn Moldavian
    "mol": "ron",
    "scc": "srp",  # withdrawn bibliographic Serbian
    "scr": "hrv",  # withdrawn bibliographic Croatian
}


def private_use_range():
    # ISO 639 reserves qaa..qtz for local use.
    for second in "abcdefghijklmnopqrst":
        for third in string.ascii_lowercase:
            yield f"q{second}{third}"


def main(iso3_path: str, iso2_path: str) -> None:
    iso3 = json.loads(Path(iso3_path).read_text())
    iso2 = json.loads(Path(iso2_path).read_text())

    members = {e["iso6393"] for e in iso3}
    aliases: dict[str, str] = {}

    # ISO 639-1 two-letter codes. The registry attaches them at the
    # macrolanguage level (zh -> zho, ms -> msa), which is what we want.
    for e in iso3:
        if e.get("iso6391"):
            aliases[e["iso6391"]] = e["iso6393"]
        # Bibliographic 639-2/B variants (fre, ger, ...) rewrite to 639-3.
        if e.get("iso6392B") and e["iso6392B"] != e["iso6393"]:
            aliases[e["iso6392B"]] = e["iso6393"]

    collectives = []
    for e in iso2:
        code = e.get("iso6392T") or e["iso6392B"]
        if code not in members and code not in aliases:
            members.add(code)
            collectives.append(code)

    members.update(private_use_range())
    members.update(LEGACY_MEMBERS)
    for denotation, target in LEGACY_ALIASES.items():
        aliases.setdefault(denotation, target)

    for denotation, target in aliases.items():
        if target not in members:
            raise SystemExit(f"alias target not a member: {denotation} -> {target}")

    DATA_DIR.mkdir(parents=True, exist_ok=True)
    members_file = DATA_DIR / "iso639_members.txt"
    with members_file.open("w", encoding="utf-8") as f:
        f.write("# Language codes accepted verbatim by normalize_code.\n")
        f.write("# registry_version: iso-639-3 v3.0.1 + iso-639-2 v3.0.2 (SIL registry)\n")
        f.write("# includes: ISO 639-3, 639-2 collectives, qaa..qtz private use,\n")
        f.write("# legacy overlay: " + ", ".join(sorted(LEGACY_MEMBERS)) + "\n")
        for code in sorted(members):
            f.write(code + "\n")

    aliases_file = DATA_DIR / "lang_aliases.tsv"
    with aliases_file.open("w", encoding="utf-8") as f:
        f.write("# denotation -> member code rewrite table.\n")
        f.write("# registry_version: iso-639-3 v3.0.1 + iso-639-2 v3.0.2 (SIL registry)\n")
        f.write("# sources: ISO 639-1 codes, bibliographic 639-2/B variants,\n")
        f.write("# withdrawn-code overlay: " + ", ".join(sorted(LEGACY_ALIASES)) + "\n")
        for denotation in sorted(aliases):
            f.write(f"{denotation}\t{aliases[denotation]}\n")

    print(f"{len(members)} member codes ({len(collectives)} collectives), {len(aliases)} aliases")
    print(f"wrote {members_file} and {aliases_file}")


if __name__ == "__main__":
    if len(sys.argv) != 3:
        raise SystemExit(__doc__)
    main(sys.argv[1], sys.argv[2])
