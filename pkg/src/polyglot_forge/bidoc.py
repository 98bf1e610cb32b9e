"""Pack bilingual records into fixed-size pseudo-documents.

Each document holds up to ten formatted sentence pairs of one language
direction, one pair per line:

    [eng_Latn]: Hello. [fra_Latn]: Bonjour.

Strict-listing mode adds one trailing space per non-final line for
byte-exact replication of the legacy layout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Iterable, Iterator

from .records import BiRecord, PairLabel


@dataclass(frozen=True)
class PseudoDoc:
    pair: PairLabel
    body: str
    n_pairs: int

    def to_json_dict(self) -> dict:
        return {"pair": self.pair.render(), "body": self.body, "n_pairs": self.n_pairs}


def format_pair_line(rec: BiRecord) -> str:
    """Interpolate the four fields into the bracket-tag template, verbatim."""
    return f"[{rec.src_lang.render()}]: {rec.src_txt} [{rec.tgt_lang.render()}]: {rec.tgt_txt}"


def chunk_pairs(
    records: Iterable[BiRecord],
    chunk: int = 10,
    drop_remainder: bool = False,
    strict_listing: bool = False,
) -> Iterator[PseudoDoc]:
    """Greedily pack same-direction records into documents of `chunk` lines.

    Leftover pairs form one short final document unless drop_remainder is
    set. Mixing directions in one input stream is an error; chunk each
    direction separately.
    """
    if chunk < 1:
        raise ValueError("chunk must be >= 1")
    joiner = " \n" if strict_listing else "\n"
    direction: tuple[str, str] | None = None
    pair: PairLabel | None = None
    lines: list[str] = []

    def flush() -> PseudoDoc:
        doc = PseudoDoc(pair, joiner.join(lines), len(lines))
        lines.clear()
        return doc

    for rec in records:
        rec_direction = (rec.src_lang.render(), rec.tgt_lang.render())
        if direction is None:
            direction = rec_direction
            pair = PairLabel(rec.src_lang, rec.tgt_lang)
        elif rec_direction != direction:
            raise ValueError(f"direction switch inside one stream: {direction} -> {rec_direction}")
        lines.append(format_pair_line(rec))
        if len(lines) == chunk:
            yield flush()
    if lines and not drop_remainder:
        yield flush()


def write_docs_text(docs: Iterable[PseudoDoc], sink: IO, separator: str = "\n\n") -> int:
    """Render documents as raw text, separator between them, trailing LF."""
    n = 0
    for doc in docs:
        if n:
            sink.write(separator)
        sink.write(doc.body)
        n += 1
    if n:
        sink.write("\n")
    return n
