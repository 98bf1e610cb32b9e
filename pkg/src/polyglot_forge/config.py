"""Pipeline configuration: JSON file, published schema, full validation.

Validation collects every offending key before failing, so one run of the
CLI reports the whole set of problems. Relative paths resolve against the
config file's directory.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import jsonschema

from .cleanse import CleanConfig
from .code_filter import BucketRule, CodeFilterRules
from .mixer import MixInput, MixPlanError, as_rate


class ConfigError(ValueError):
    """Carries every validation message found in one pass."""

    def __init__(self, messages: list[str]):
        super().__init__("; ".join(messages))
        self.messages = messages


@dataclass(frozen=True)
class InputSpec:
    path: Path
    kind: str  # mono | bi | code
    collection: str = ""
    source: str = ""


@dataclass(frozen=True)
class ChunkConfig:
    size: int = 10
    format: str = "jsonl"
    delimiter: str = "\n\n"  # between documents in text format
    strict_listing: bool = False
    drop_remainder: bool = False


@dataclass(frozen=True)
class PipelineConfig:
    output_dir: Path
    inputs: tuple[InputSpec, ...] = ()
    clean: CleanConfig = CleanConfig()
    code_rules: CodeFilterRules = CodeFilterRules()
    mix: tuple[MixInput, ...] = ()
    chunk: ChunkConfig = ChunkConfig()
    script_sample_size: int = 100
    script_threshold: float = 0.5
    seed: int = 0
    threads: int = 1
    raw: dict = field(default_factory=dict, compare=False)


def config_schema() -> dict:
    return json.loads(resources.files("polyglot_forge.data").joinpath("config_schema.json").read_text("utf-8"))


def _build(doc: dict, base_dir: Path, messages: list[str]) -> PipelineConfig | None:
    inputs = []
    for i, item in enumerate(doc.get("inputs", [])):
        path = (base_dir / item["path"]).resolve()
        if not path.exists():
            messages.append(f"inputs[{i}].path: no such file: {item['path']}")
        inputs.append(
            InputSpec(
                path=path,
                kind=item["kind"],
                collection=item.get("collection", ""),
                source=item.get("source", ""),
            )
        )

    clean_doc = doc.get("clean", {})
    clean = CleanConfig(
        max_consecutive_repeats=clean_doc.get("max_consecutive_repeats", 5),
        length_ratio_max=clean_doc.get("length_ratio_max", 9.0),
        min_chars=clean_doc.get("min_chars", 1),
    )

    rules_doc = doc.get("code_rules", {})
    defaults = CodeFilterRules()

    def bucket(name: str, fallback: BucketRule) -> BucketRule:
        b = rules_doc.get(name)
        if b is None:
            return fallback
        return BucketRule(b["avg_line_max"], b["max_line_max"], b["alnum_min"])

    code_rules = CodeFilterRules(
        forks_over_25=bucket("forks_over_25", defaults.forks_over_25),
        forks_15_to_25=bucket("forks_15_to_25", defaults.forks_15_to_25),
        forks_under_15=bucket("forks_under_15", defaults.forks_under_15),
        language_min_count=rules_doc.get("language_min_count", defaults.language_min_count),
        always_keep=frozenset(rules_doc.get("always_keep", defaults.always_keep)),
    )

    mix_rows = []
    for i, row in enumerate(doc.get("mix", [])):
        try:
            mix_rows.append(
                MixInput(
                    data_type=row["data_type"],
                    category=row["category"],
                    original_tokens=row["original_tokens"],
                    rate=as_rate(row["rate"]),
                    stated_final_tokens=row.get("stated_final_tokens"),
                )
            )
        except MixPlanError as e:
            messages.append(f"mix[{i}]: {e}")

    chunk_doc = doc.get("chunk", {})
    chunk = ChunkConfig(
        size=chunk_doc.get("size", 10),
        format=chunk_doc.get("format", "jsonl"),
        delimiter=chunk_doc.get("delimiter", "\n\n"),
        strict_listing=chunk_doc.get("strict_listing", False),
        drop_remainder=chunk_doc.get("drop_remainder", False),
    )

    if messages:
        return None
    return PipelineConfig(
        output_dir=(base_dir / doc["output_dir"]).resolve(),
        inputs=tuple(inputs),
        clean=clean,
        code_rules=code_rules,
        mix=tuple(mix_rows),
        chunk=chunk,
        script_sample_size=doc.get("script_sample_size", 100),
        script_threshold=doc.get("script_threshold", 0.5),
        seed=doc.get("seed", 0),
        threads=doc.get("threads", 1),
        raw=doc,
    )


def load_config(path: Path | str, overrides: dict | None = None) -> PipelineConfig:
    """Load, schema-validate, and materialize a config file.

    `overrides` maps top-level keys (seed, threads, output_dir, inputs) to
    replacement values, applied before validation so bad flags are caught
    the same way as bad config keys.
    """
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError([f"config file not found: {path}"])
    except json.JSONDecodeError as e:
        raise ConfigError([f"config is not valid JSON: {e.msg} (line {e.lineno})"])
    if overrides:
        doc = {**doc, **{k: v for k, v in overrides.items() if v is not None}}

    validator = jsonschema.Draft202012Validator(config_schema())
    messages = [
        f"{'.'.join(str(p) for p in err.absolute_path) or '<root>'}: {err.message}"
        for err in sorted(validator.iter_errors(doc), key=lambda e: list(map(str, e.absolute_path)))
    ]
    if messages:
        raise ConfigError(messages)

    config = _build(doc, path.parent, messages)
    if messages or config is None:
        raise ConfigError(messages)
    return config
