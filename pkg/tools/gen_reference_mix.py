#!/usr/bin/env python3
"""Write src/polyglot_forge/data/reference_mix.json.

This is the composition of the two training mixes the tool's consistency
checks reproduce: per-row sample rates, original/final token counts, and
the share of each row in the full (bilingual) and bilingual-free
(monolingual) mixes, as percentages rounded to two decimals.
"""

import json
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "src" / "polyglot_forge" / "data" / "reference_mix.json"

ROWS = [
    # (data_type, category, rate, original_tokens, final_tokens, pct_bilingual, pct_monolingual)
    ("instruction", "EN", "0.1", 9204199807, 920419981, "0.32", "0.47"),
    ("instruction", "high", "0.2", 39403448029, 7880689606, "2.72", "4.01"),
    ("instruction", "medium-high", "0.5", 30651187534, 15325593767, "5.28", "7.81"),
    ("instruction", "medium", "5.0", 1444764863, 7223824315, "2.49", "3.68"),
    ("instruction", "medium-low", "20.0", 47691495, 953829900, "0.33", "0.49"),
    ("instruction", "low", "50.0", 3064796, 153239800, "0.05", "0.08"),
    ("instruction", "code/reasoning", "1.0", 612208775, 612208775, "0.21", "0.31"),
    ("code", "code", "1.0", 43478432765, 43478432765, "14.99", "22.15"),
    ("book", "Gutenberg", "1.0", 5173357710, 5173357710, "1.78", "2.64"),
    ("paper", "EN", "1.0", 38256934181, 38256934181, "13.19", "19.49"),
    ("paper", "ZH", "1.0", 61787372, 61787372, "0.02", "0.03"),
    ("monolingual", "EN", "0.1", 3002029817, 300202982, "0.10", "0.15"),
    ("monolingual", "high", "0.5", 40411201964, 20205600982, "6.97", "10.29"),
    ("monolingual", "medium-high", "1.0", 27515227962, 27515227962, "9.49", "14.02"),
    ("monolingual", "medium", "5.0", 2747484380, 13737421900, "4.74", "7.00"),
    ("monolingual", "medium-low", "20.0", 481935633, 9638712660, "3.32", "4.91"),
    ("monolingual", "low", "50.0", 97535696, 4876784800, "1.68", "2.48"),
    ("bilingual", "very high", "0.1", 85001097362, 4250054868, "1.47", None),
    ("bilingual", "high", "0.1", 207688940222, 20768894022, "7.16", None),
    ("bilingual", "medium-high", "0.2", 46777497823, 9355499565, "3.23", None),
    ("bilingual", "medium", "0.5", 64375100302, 32187550151, "11.10", None),
    ("bilingual", "medium-low", "1.0", 20361578347, 20361578347, "7.02", None),
    ("bilingual", "low", "2.0", 2503240829, 5006481658, "1.73", None),
    ("bilingual", "very low", "10.0", 175309923, 1753099230, "0.60", None),
]


def main() -> None:
    doc = {
        "description": "Reference training-data mix used by built-in consistency checks.",
        "rows": [
            {
                "data_type": t,
                "category": c,
                "rate": rate,
                "original_tokens": orig,
                "final_tokens": final,
                "pct_bilingual_mix": pb,
                "pct_monolingual_mix": pm,
            }
            for (t, c, rate, orig, final, pb, pm) in ROWS
        ],
    }
    OUT.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {len(ROWS)} rows to {OUT}")


if __name__ == "__main__":
    main()
