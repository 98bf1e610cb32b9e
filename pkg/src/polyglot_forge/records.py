"""Harmonized corpus record model and streaming JSONL I/O.

One JSONL line per record, UTF-8, LF endings. Field order in output is
fixed so files are byte-diffable; unknown input keys survive round trips
in an opaque `extras` map.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator, Union

MONO_FIELDS = ("text", "lang", "url", "collection", "source", "original_lang")
BI_FIELDS = (
    "src_lang",
    "src_txt",
    "tgt_lang",
    "tgt_txt",
    "url",
    "collection",
    "source",
    "original_src_lang",
    "original_tgt_lang",
)


@dataclass(frozen=True)
class LanguageTag:
    """ISO 639-3 code (or "unknown") plus ISO 15924 script, e.g. eng_Latn."""

    code: str
    script: str = "Zzzz"

    def render(self) -> str:
        return f"{self.code}_{self.script}"

    def __str__(self) -> str:
        return self.render()

    @classmethod
    def parse(cls, label: str) -> "LanguageTag":
        """Parse "code_Script"; a missing script suffix maps to Zzzz."""
        code, sep, script = label.rpartition("_")
        if sep and len(script) == 4 and script.isalpha():
            return cls(code.lower(), script.title())
        return cls(label.lower(), "Zzzz")


@dataclass(frozen=True)
class PairLabel:
    """Directed language pair, rendered "src-tgt" (eng_Latn-zho_Hani)."""

    src: LanguageTag
    tgt: LanguageTag

    def render(self) -> str:
        return f"{self.src.render()}-{self.tgt.render()}"

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class MonoRecord:
    text: str
    lang: LanguageTag
    url: str | None = None
    collection: str = ""
    source: str = ""
    original_lang: str = ""
    extras: dict = field(default_factory=dict)
    line_no: int = field(default=0, compare=False)

    kind = "mono"

    def to_json_dict(self) -> dict:
        out = {
            "text": self.text,
            "lang": self.lang.render(),
            "url": self.url,
            "collection": self.collection,
            "source": self.source,
            "original_lang": self.original_lang,
        }
        out.update(self.extras)
        return out


@dataclass(frozen=True)
class BiRecord:
    src_lang: LanguageTag
    src_txt: str
    tgt_lang: LanguageTag
    tgt_txt: str
    url: str | None = None
    collection: str = ""
    source: str = ""
    original_src_lang: str = ""
    original_tgt_lang: str = ""
    extras: dict = field(default_factory=dict)
    line_no: int = field(default=0, compare=False)

    kind = "bi"

    def to_json_dict(self) -> dict:
        out = {
            "src_lang": self.src_lang.render(),
            "src_txt": self.src_txt,
            "tgt_lang": self.tgt_lang.render(),
            "tgt_txt": self.tgt_txt,
            "url": self.url,
            "collection": self.collection,
            "source": self.source,
            "original_src_lang": self.original_src_lang,
            "original_tgt_lang": self.original_tgt_lang,
        }
        out.update(self.extras)
        return out


Record = Union[MonoRecord, BiRecord]


@dataclass(frozen=True)
class BadLine:
    """A line the parser could not turn into a record. The stream goes on."""

    line_no: int
    reason: str


class JsonlWriteError(OSError):
    """Sink failed mid-write; `written` records made it out before the abort."""

    def __init__(self, written: int, cause: BaseException):
        super().__init__(f"write aborted after {written} records: {cause}")
        self.written = written


def _require_str(obj: dict, key: str) -> str:
    value = obj.get(key)
    if not isinstance(value, str):
        raise KeyError(key)
    return value


def _opt_str(obj: dict, key: str, default: str = "") -> str:
    value = obj.get(key, default)
    return value if isinstance(value, str) else default


def mono_from_json_dict(obj: dict, line_no: int = 0) -> MonoRecord:
    text = _require_str(obj, "text")
    lang_raw = _require_str(obj, "lang")
    url = obj.get("url")
    extras = {k: v for k, v in obj.items() if k not in MONO_FIELDS}
    return MonoRecord(
        text=text,
        lang=LanguageTag.parse(lang_raw),
        url=url if isinstance(url, str) else None,
        collection=_opt_str(obj, "collection"),
        source=_opt_str(obj, "source"),
        original_lang=_opt_str(obj, "original_lang", lang_raw),
        extras=extras,
        line_no=line_no,
    )


def bi_from_json_dict(obj: dict, line_no: int = 0) -> BiRecord:
    src_lang_raw = _require_str(obj, "src_lang")
    tgt_lang_raw = _require_str(obj, "tgt_lang")
    url = obj.get("url")
    extras = {k: v for k, v in obj.items() if k not in BI_FIELDS}
    return BiRecord(
        src_lang=LanguageTag.parse(src_lang_raw),
        src_txt=_require_str(obj, "src_txt"),
        tgt_lang=LanguageTag.parse(tgt_lang_raw),
        tgt_txt=_require_str(obj, "tgt_txt"),
        url=url if isinstance(url, str) else None,
        collection=_opt_str(obj, "collection"),
        source=_opt_str(obj, "source"),
        original_src_lang=_opt_str(obj, "original_src_lang", src_lang_raw),
        original_tgt_lang=_opt_str(obj, "original_tgt_lang", tgt_lang_raw),
        extras=extras,
        line_no=line_no,
    )


def read_jsonl(stream: IO, kind: str) -> Iterator[Record | BadLine]:
    """Yield records (and BadLine markers) from newline-delimited JSON.

    `kind` is "mono" or "bi". A malformed line never aborts the stream:
    it comes out as a BadLine carrying the 1-based line number, and
    parsing continues with the next line.
    """
    if kind not in ("mono", "bi"):
        raise ValueError(f"kind must be 'mono' or 'bi', got {kind!r}")
    parse = mono_from_json_dict if kind == "mono" else bi_from_json_dict
    for line_no, raw in enumerate(stream, 1):
        if isinstance(raw, bytes):
            try:
                line = raw.decode("utf-8")
            except UnicodeDecodeError as e:
                yield BadLine(line_no, f"invalid UTF-8: {e.reason}")
                continue
        else:
            line = raw
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as e:
            yield BadLine(line_no, f"malformed JSON: {e.msg}")
            continue
        if not isinstance(obj, dict):
            yield BadLine(line_no, "not a JSON object")
            continue
        try:
            yield parse(obj, line_no)
        except KeyError as e:
            yield BadLine(line_no, f"missing or non-string field: {e.args[0]}")


def iter_records(stream: IO, kind: str, bad: list | None = None) -> Iterator[Record]:
    """Like read_jsonl but yields records only; BadLines go into `bad`."""
    for item in read_jsonl(stream, kind):
        if isinstance(item, BadLine):
            if bad is not None:
                bad.append(item)
        else:
            yield item


def record_to_line(record: Record) -> str:
    return json.dumps(record.to_json_dict(), ensure_ascii=False, separators=(",", ":"))


def write_jsonl(records: Iterable[Record], sink: IO) -> int:
    """Write one JSON line per record; returns the number written."""
    written = 0
    binary = not hasattr(sink, "encoding")  # text streams carry .encoding
    try:
        for record in records:
            line = record_to_line(record) + "\n"
            sink.write(line.encode("utf-8") if binary else line)
            written += 1
    except OSError as e:
        raise JsonlWriteError(written, e) from e
    return written
