#!/usr/bin/env python3
"""Build tests/data/golden_chunks*.txt by hand from the line template.

The golden bytes are constructed with plain string concatenation, not via
the package, so the test checks the implementation against an independent
rendering: 23 eng_Latn->fra_Latn pairs packed into documents of ten lines
plus a three-line remainder, one blank line between documents, trailing
newline at EOF. The strict variant adds one trailing space per non-final
line inside each document.
"""

from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"


def pair_line(i: int) -> str:
    return f"[eng_Latn]: English sentence {i}. [fra_Latn]: Phrase française {i}."


def main() -> None:
    lines = [pair_line(i) for i in range(1, 24)]
    groups = [lines[0:10], lines[10:20], lines[20:23]]

    canonical = "\n\n".join("\n".join(g) for g in groups) + "\n"
    strict = "\n\n".join(" \n".join(g) for g in groups) + "\n"

    (DATA / "golden_chunks.txt").write_text(canonical, encoding="utf-8")
    (DATA / "golden_chunks_strict.txt").write_text(strict, encoding="utf-8")
    print(f"wrote {len(canonical)} + {len(strict)} bytes under {DATA}")


if __name__ == "__main__":
    main()
