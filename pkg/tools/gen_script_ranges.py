#!/usr/bin/env python3
"""Regenerate src/polyglot_forge/data/script_ranges.tsv from fontTools.

fontTools vendors the Unicode Scripts.txt property table; we re-emit it as
a flat (start, end, code) TSV so the package has no runtime dependency on
fontTools. Run from the repo root:

    python tools/gen_script_ranges.py
"""

import inspect
import re
from pathlib import Path

from fontTools.unicodedata import Scripts

OUT = Path(__file__).resolve().parent.parent / "src" / "polyglot_forge" / "data" / "script_ranges.tsv"


def unicode_version() -> str:
    src = inspect.getsource(Scripts)
    m = re.search(r"Scripts-([0-9.]+)\.txt", src)
    return m.group(1) if m else "unknown"


def main() -> None:
    version = unicode_version()
    starts = Scripts.RANGES
    values = Scripts.VALUES
    rows = []
    for i, start in enumerate(starts):
        end = (starts[i + 1] - 1) if i + 1 < len(starts) else 0x10FFFF
        code = values[i]
        if code == "Zzzz":
            continue  # gaps fall back to Zzzz at lookup time
        rows.append((start, end, code))
    with OUT.open("w", encoding="utf-8") as f:
        f.write("# Unicode Scripts property as (start, end, ISO 15924 code) ranges.\n")
        f.write(f"# unicode_version: {version}\n")
        f.write(f"# generated_by: tools/gen_script_ranges.py (fontTools vendored Scripts.txt)\n")
        for start, end, code in rows:
            f.write(f"{start:04X}\t{end:04X}\t{code}\n")
    print(f"wrote {len(rows)} ranges (Unicode {version}) to {OUT}")


if __name__ == "__main__":
    main()
