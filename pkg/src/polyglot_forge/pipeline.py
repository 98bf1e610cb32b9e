"""Stage orchestration over an output directory.

Each stage consumes the newest upstream stage present (or the raw
configured inputs), writes its artifacts under ``output_dir/<stage>/``,
and records a manifest with input digests, record counts, data-table
versions, and the digest of the predecessor manifest, so a finished tree
is a verifiable chain. All randomness flows from the configured seed;
reruns with the same config and seed are byte-identical.
"""

from __future__ import annotations

import hashlib
import json
import random
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from . import __version__
from .bidoc import PseudoDoc, chunk_pairs, write_docs_text
from .census import CorpusStats, aggregate, normalize_category, tier_summary_json, write_stats_tsv
from .cleanse import DedupIndex, clean_birecord, clean_monorecord, content_digest
from .code_filter import CodeFileMeta, keep_code_file, language_frequency_filter
from .config import InputSpec, PipelineConfig
from .langid import CodeTable, canonical_pair, load_code_table, make_pair_label, normalize_code
from .mixer import MixPlan, SamplePlan, plan_mix
from .records import (
    BadLine,
    BiRecord,
    LanguageTag,
    MonoRecord,
    Record,
    iter_records,
    record_to_line,
)
from .script_detect import ScriptRanges, UndetectableScript, dataset_script, load_script_ranges

RECORD_STAGES = {
    "ingest": ("raw",),
    "clean": ("ingest", "raw"),
    "dedup": ("clean", "ingest", "raw"),
    "stats": ("dedup", "clean", "ingest", "raw"),
    "mix": ("dedup", "clean", "ingest", "raw"),
    "chunk": ("mix", "dedup", "clean", "ingest", "raw"),
}


class DataError(RuntimeError):
    """A data-level failure; partial artifacts stay on disk for inspection."""


_INDEX_PREFIX = re.compile(r"^\d{3}_")


def _plain_stem(path: Path) -> str:
    """File stem with any stage index prefix ("000_") removed."""
    return _INDEX_PREFIX.sub("", path.stem)


@dataclass(frozen=True)
class StageFile:
    path: Path
    kind: str  # mono | bi
    rel: str  # path as recorded in manifests


def sha256_file(path: Path) -> str:
    h = hashlib.sha256()
    with path.open("rb") as f:
        for block in iter(lambda: f.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


def _map_files(func: Callable, items: list, threads: int) -> list:
    if threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(func, items))
    return [func(item) for item in items]


class StageRunner:
    """Shared context for running stages against one config."""

    def __init__(self, cfg: PipelineConfig):
        self.cfg = cfg
        self._code_table: CodeTable | None = None
        self._script_ranges: ScriptRanges | None = None

    @property
    def code_table(self) -> CodeTable:
        if self._code_table is None:
            self._code_table = load_code_table()
        return self._code_table

    @property
    def script_ranges(self) -> ScriptRanges:
        if self._script_ranges is None:
            self._script_ranges = load_script_ranges()
        return self._script_ranges

    def data_versions(self) -> dict:
        return {
            "iso639_registry": self.code_table.registry_version,
            "unicode": self.script_ranges.unicode_version,
        }

    # -- manifest plumbing -------------------------------------------------

    def stage_dir(self, stage: str) -> Path:
        d = self.cfg.output_dir / stage
        d.mkdir(parents=True, exist_ok=True)
        return d

    def manifest_path(self, stage: str) -> Path:
        return self.cfg.output_dir / stage / "manifest.json"

    def read_manifest(self, stage: str) -> dict | None:
        path = self.manifest_path(stage)
        if not path.exists():
            return None
        return json.loads(path.read_text(encoding="utf-8"))

    def write_manifest(
        self,
        stage: str,
        inputs: list[dict],
        outputs: list[dict],
        counts: dict,
        source_stage: str | None,
    ) -> dict:
        prev = None
        if source_stage and source_stage != "raw":
            prev_path = self.manifest_path(source_stage)
            if prev_path.exists():
                prev = sha256_file(prev_path)
        # threads is an execution knob; outputs must not depend on it
        digestable = {k: v for k, v in self.cfg.raw.items() if k != "threads"}
        manifest = {
            "stage": stage,
            "tool_version": __version__,
            "seed": self.cfg.seed,
            "config_digest": hashlib.sha256(
                json.dumps(digestable, sort_keys=True).encode("utf-8")
            ).hexdigest(),
            "data_versions": self.data_versions(),
            "source_stage": source_stage,
            "previous_manifest_sha256": prev,
            "inputs": inputs,
            "outputs": outputs,
            "counts": counts,
        }
        self.manifest_path(stage).write_text(
            json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
        return manifest

    def resolve_record_inputs(self, stage: str) -> tuple[list[StageFile], str]:
        """Find the record files this stage consumes and their source stage."""
        for source in RECORD_STAGES[stage]:
            if source == "raw":
                files = [
                    StageFile(spec.path, spec.kind, str(spec.path))
                    for spec in self.cfg.inputs
                    if spec.kind in ("mono", "bi")
                ]
                if not files:
                    raise DataError(f"stage '{stage}': no record inputs configured and no upstream stage found")
                return files, "raw"
            manifest = self.read_manifest(source)
            if manifest is not None:
                files = [
                    StageFile(self.cfg.output_dir / out["path"], out["kind"], out["path"])
                    for out in manifest["outputs"]
                    if out.get("kind") in ("mono", "bi")
                ]
                return files, source
        raise DataError(f"stage '{stage}': nothing to consume")

    # -- ingest ------------------------------------------------------------

    def _detect_side_scripts(self, spec: InputSpec) -> tuple[str, str]:
        """One script per record side for a raw file; Zzzz when undetectable."""
        src_lines: list[str] = []
        tgt_lines: list[str] = []
        limit = self.cfg.script_sample_size
        with spec.path.open("rb") as f:
            for rec in iter_records(f, spec.kind):
                if isinstance(rec, BiRecord):
                    if rec.src_txt.strip() and len(src_lines) < limit:
                        src_lines.append(rec.src_txt)
                    if rec.tgt_txt.strip() and len(tgt_lines) < limit:
                        tgt_lines.append(rec.tgt_txt)
                    if len(src_lines) >= limit and len(tgt_lines) >= limit:
                        break
                else:
                    if rec.text.strip():
                        src_lines.append(rec.text)
                    if len(src_lines) >= limit:
                        break

        def detect(lines: list[str]) -> str:
            try:
                return dataset_script(lines, self.script_ranges, limit, self.cfg.script_threshold)
            except UndetectableScript:
                return "Zzzz"

        src_script = detect(src_lines)
        return src_script, detect(tgt_lines) if spec.kind == "bi" else src_script

    def _ingest_one(self, job: tuple[int, InputSpec]) -> dict:
        idx, spec = job
        out_path = self.stage_dir("ingest") / f"{idx:03d}_{spec.path.stem}.jsonl"
        src_script, tgt_script = self._detect_side_scripts(spec)
        table = self.code_table
        written = 0
        bad: list[BadLine] = []
        with spec.path.open("rb") as f, out_path.open("w", encoding="utf-8") as out:
            for rec in iter_records(f, spec.kind, bad):
                out.write(record_to_line(self._harmonize(rec, spec, src_script, tgt_script, table)) + "\n")
                written += 1
        return {
            "input": {"path": str(spec.path), "kind": spec.kind, "sha256": sha256_file(spec.path)},
            "output": {
                "path": f"ingest/{out_path.name}",
                "kind": spec.kind,
                "records": written,
                "sha256": sha256_file(out_path),
            },
            "bad_lines": len(bad),
        }

    def _harmonize(
        self, rec: Record, spec: InputSpec, src_script: str, tgt_script: str, table: CodeTable
    ) -> Record:
        if isinstance(rec, BiRecord):
            src_norm = normalize_code(rec.original_src_lang, table)
            tgt_norm = normalize_code(rec.original_tgt_lang, table)
            extras = dict(rec.extras)
            if src_norm.subtags:
                extras["original_src_lang_subtags"] = "-".join(src_norm.subtags)
            if tgt_norm.subtags:
                extras["original_tgt_lang_subtags"] = "-".join(tgt_norm.subtags)
            return BiRecord(
                src_lang=LanguageTag(src_norm.code, src_script),
                src_txt=rec.src_txt,
                tgt_lang=LanguageTag(tgt_norm.code, tgt_script),
                tgt_txt=rec.tgt_txt,
                url=rec.url,
                collection=rec.collection or spec.collection,
                source=rec.source or spec.source,
                original_src_lang=rec.original_src_lang,
                original_tgt_lang=rec.original_tgt_lang,
                extras=extras,
            )
        norm = normalize_code(rec.original_lang, table)
        extras = dict(rec.extras)
        if norm.subtags:
            extras["original_lang_subtags"] = "-".join(norm.subtags)
        return MonoRecord(
            text=rec.text,
            lang=LanguageTag(norm.code, src_script),
            url=rec.url,
            collection=rec.collection or spec.collection,
            source=rec.source or spec.source,
            original_lang=rec.original_lang,
            extras=extras,
        )

    def run_ingest(self) -> dict:
        specs = [s for s in self.cfg.inputs if s.kind in ("mono", "bi")]
        if not specs:
            raise DataError("ingest: no mono/bi inputs configured")
        results = _map_files(self._ingest_one, list(enumerate(specs)), self.cfg.threads)
        counts = {
            "records_out": sum(r["output"]["records"] for r in results),
            "bad_lines": sum(r["bad_lines"] for r in results),
        }
        return self.write_manifest(
            "ingest",
            [r["input"] for r in results],
            [r["output"] for r in results],
            counts,
            "raw",
        )

    # -- clean ---------------------------------------------------------------

    def _clean_one(self, job: tuple[int, StageFile, bool]) -> dict:
        idx, sf, audit = job
        out_path = self.stage_dir("clean") / f"{idx:03d}_{_plain_stem(sf.path)}.jsonl"
        audit_path = out_path.with_suffix(".drops.jsonl") if audit else None
        drops: dict[str, int] = {}
        written = 0
        bad: list[BadLine] = []
        audit_out = audit_path.open("w", encoding="utf-8") if audit_path else None
        try:
            with sf.path.open("rb") as f, out_path.open("w", encoding="utf-8") as out:
                for rec in iter_records(f, sf.kind, bad):
                    reason = (
                        clean_birecord(rec, self.cfg.clean)
                        if isinstance(rec, BiRecord)
                        else clean_monorecord(rec, self.cfg.clean)
                    )
                    if reason is None:
                        out.write(record_to_line(rec) + "\n")
                        written += 1
                    else:
                        drops[reason] = drops.get(reason, 0) + 1
                        if audit_out:
                            audit_out.write(
                                json.dumps(
                                    {"reason": reason, "record": rec.to_json_dict()},
                                    ensure_ascii=False,
                                    separators=(",", ":"),
                                )
                                + "\n"
                            )
        finally:
            if audit_out:
                audit_out.close()
        return {
            "output": {
                "path": f"clean/{out_path.name}",
                "kind": sf.kind,
                "records": written,
                "sha256": sha256_file(out_path),
            },
            "input": {"path": sf.rel, "kind": sf.kind, "sha256": sha256_file(sf.path)},
            "drops": drops,
            "bad_lines": len(bad),
        }

    def run_clean(self, audit_drops: bool = False) -> dict:
        files, source = self.resolve_record_inputs("clean")
        jobs = [(i, sf, audit_drops) for i, sf in enumerate(files)]
        results = _map_files(self._clean_one, jobs, self.cfg.threads)
        drops: dict[str, int] = {}
        for r in results:
            for reason, n in r["drops"].items():
                drops[reason] = drops.get(reason, 0) + n
        report = self.stage_dir("clean") / "drop_report.tsv"
        with report.open("w", encoding="utf-8") as f:
            f.write("reason\tcount\n")
            for reason in sorted(drops):
                f.write(f"{reason}\t{drops[reason]}\n")
        counts = {
            "records_out": sum(r["output"]["records"] for r in results),
            "dropped": sum(drops.values()),
            "drops": {k: drops[k] for k in sorted(drops)},
            "bad_lines": sum(r["bad_lines"] for r in results),
        }
        return self.write_manifest(
            "clean", [r["input"] for r in results], [r["output"] for r in results], counts, source
        )

    # -- dedup ---------------------------------------------------------------

    def run_dedup(self) -> dict:
        """Exact dedup across all files, serial in (file, line) order so the
        surviving copy of any duplicate is always the first one seen."""
        files, source = self.resolve_record_inputs("dedup")
        index = DedupIndex()
        outputs = []
        inputs = []
        duplicates = 0
        bad_total = 0
        for idx, sf in enumerate(files):
            out_path = self.stage_dir("dedup") / f"{idx:03d}_{_plain_stem(sf.path)}.jsonl"
            written = 0
            bad: list[BadLine] = []
            with sf.path.open("rb") as f, out_path.open("w", encoding="utf-8") as out:
                for rec in iter_records(f, sf.kind, bad):
                    if index.add(content_digest(rec)):
                        out.write(record_to_line(rec) + "\n")
                        written += 1
                    else:
                        duplicates += 1
            bad_total += len(bad)
            inputs.append({"path": sf.rel, "kind": sf.kind, "sha256": sha256_file(sf.path)})
            outputs.append(
                {
                    "path": f"dedup/{out_path.name}",
                    "kind": sf.kind,
                    "records": written,
                    "sha256": sha256_file(out_path),
                }
            )
        counts = {
            "records_out": sum(o["records"] for o in outputs),
            "duplicates": duplicates,
            "distinct_digests": len(index),
            "bad_lines": bad_total,
        }
        return self.write_manifest("dedup", inputs, outputs, counts, source)

    # -- stats ---------------------------------------------------------------

    def _stats_one(self, sf: StageFile) -> tuple[CorpusStats, int]:
        bad: list[BadLine] = []
        with sf.path.open("rb") as f:
            stats = aggregate(iter_records(f, sf.kind, bad))
        return stats, len(bad)

    def run_stats(self) -> dict:
        files, source = self.resolve_record_inputs("stats")
        results = _map_files(self._stats_one, files, self.cfg.threads)
        total = CorpusStats()
        bad_total = 0
        for stats, bad in results:
            total.merge(stats)
            bad_total += bad
        out_dir = self.stage_dir("stats")
        tsv_path = out_dir / "stats.tsv"
        with tsv_path.open("w", encoding="utf-8") as f:
            write_stats_tsv(total, f)
        summary_path = out_dir / "tier_summary.json"
        summary_path.write_text(tier_summary_json(total) + "\n", encoding="utf-8")
        inputs = [{"path": sf.rel, "kind": sf.kind, "sha256": sha256_file(sf.path)} for sf in files]
        outputs = [
            {"path": "stats/stats.tsv", "kind": "report", "records": len(total.per_key), "sha256": sha256_file(tsv_path)},
            {"path": "stats/tier_summary.json", "kind": "report", "records": 1, "sha256": sha256_file(summary_path)},
        ]
        counts = {
            "keys": len(total.per_key),
            "segments": total.total_segments,
            "tokens": total.total_tokens,
            "bad_lines": bad_total,
        }
        return self.write_manifest("stats", inputs, outputs, counts, source)

    # -- code filter -----------------------------------------------------------

    def run_codefilter(self) -> dict:
        specs = [s for s in self.cfg.inputs if s.kind == "code"]
        if not specs:
            raise DataError("codefilter: no code inputs configured")
        rules = self.cfg.code_rules

        # pass 1: language-label frequencies over all code inputs
        label_counts: dict[str, int] = {}
        for spec in specs:
            with spec.path.open("r", encoding="utf-8") as f:
                for line in f:
                    if not line.strip():
                        continue
                    try:
                        obj = json.loads(line)
                        label_counts[obj.get("language_label", "")] = (
                            label_counts.get(obj.get("language_label", ""), 0) + 1
                        )
                    except json.JSONDecodeError:
                        continue
        kept_labels = language_frequency_filter(label_counts, rules.language_min_count, rules.always_keep)

        out_dir = self.stage_dir("codefilter")
        inputs, outputs = [], []
        kept_total = 0
        dropped: dict[str, int] = {}
        bad_lines = 0
        audit_path = out_dir / "audit.jsonl"
        with audit_path.open("w", encoding="utf-8") as audit:
            for idx, spec in enumerate(specs):
                out_path = out_dir / f"{idx:03d}_{spec.path.stem}.jsonl"
                written = 0
                with spec.path.open("r", encoding="utf-8") as f, out_path.open("w", encoding="utf-8") as out:
                    for line in f:
                        if not line.strip():
                            continue
                        try:
                            obj = json.loads(line)
                            meta = CodeFileMeta(
                                content=obj["content"],
                                forks=int(obj["forks"]),
                                language_label=obj.get("language_label", ""),
                            )
                        except (json.JSONDecodeError, KeyError, TypeError, ValueError):
                            bad_lines += 1
                            continue
                        if meta.language_label not in kept_labels:
                            reason = "language-frequency"
                        else:
                            reason = keep_code_file(meta, rules)
                        verdict = "keep" if reason is None else "drop"
                        audit.write(
                            json.dumps(
                                {**obj, "verdict": verdict, **({"reason": reason} if reason else {})},
                                ensure_ascii=False,
                                separators=(",", ":"),
                            )
                            + "\n"
                        )
                        if reason is None:
                            out.write(json.dumps(obj, ensure_ascii=False, separators=(",", ":")) + "\n")
                            written += 1
                        else:
                            dropped[reason] = dropped.get(reason, 0) + 1
                kept_total += written
                inputs.append({"path": str(spec.path), "kind": "code", "sha256": sha256_file(spec.path)})
                outputs.append(
                    {"path": f"codefilter/{out_path.name}", "kind": "code", "records": written, "sha256": sha256_file(out_path)}
                )
        outputs.append(
            {"path": "codefilter/audit.jsonl", "kind": "report", "records": kept_total + sum(dropped.values()), "sha256": sha256_file(audit_path)}
        )
        counts = {
            "records_out": kept_total,
            "dropped": sum(dropped.values()),
            "drops": {k: dropped[k] for k in sorted(dropped)},
            "kept_labels": sorted(kept_labels),
            "bad_lines": bad_lines,
        }
        return self.write_manifest("codefilter", inputs, outputs, counts, "raw")

    # -- mix ---------------------------------------------------------------

    def _load_tiers(self) -> dict[str, str]:
        tsv = self.cfg.output_dir / "stats" / "stats.tsv"
        if not tsv.exists():
            raise DataError("mix: stats stage not found; run `stats` first")
        tiers: dict[str, str] = {}
        with tsv.open("r", encoding="utf-8") as f:
            next(f)
            for line in f:
                key, _segments, _tokens, tier = line.rstrip("\n").split("\t")
                tiers[key] = tier
        return tiers

    def run_mix(self, plan_only: bool = False) -> tuple[dict, MixPlan]:
        if not self.cfg.mix:
            raise DataError("mix: no mix rows configured")
        plan = plan_mix(list(self.cfg.mix))
        out_dir = self.stage_dir("mix")
        plan_path = out_dir / "plan.json"
        plan_path.write_text(
            json.dumps(plan.to_manifest(self.cfg.seed, __version__), indent=2) + "\n", encoding="utf-8"
        )
        outputs = [{"path": "mix/plan.json", "kind": "report", "records": len(plan.rows), "sha256": sha256_file(plan_path)}]
        if plan_only:
            manifest = self.write_manifest("mix", [], outputs, {"rows": len(plan.rows), "plan_only": True}, None)
            return manifest, plan

        files, source = self.resolve_record_inputs("mix")
        tiers = self._load_tiers()
        rates = {
            (row.data_type, normalize_category(row.category)): SamplePlan(row.rate, self.cfg.seed)
            for row in self.cfg.mix
        }
        inputs, sampled_total, bad_total = [], 0, 0
        for idx, sf in enumerate(files):
            out_path = out_dir / f"{idx:03d}_{_plain_stem(sf.path)}.jsonl"
            lines: list[str] = []
            bad: list[BadLine] = []
            with sf.path.open("rb") as f:
                for rec in iter_records(f, sf.kind, bad):
                    if isinstance(rec, BiRecord):
                        data_type = "bilingual"
                        src, tgt = canonical_pair(rec.src_lang, rec.tgt_lang)
                        key = make_pair_label(src, tgt)
                    else:
                        data_type = "monolingual"
                        key = rec.lang.render()
                    tier = tiers.get(key)
                    if tier is None:
                        raise DataError(f"mix: key {key} missing from stats stage; re-run `stats`")
                    sample = rates.get((data_type, tier))
                    if sample is None:
                        raise DataError(f"mix: no rate configured for {data_type}/{tier}")
                    n = sample.copies_for(content_digest(rec))
                    line = record_to_line(rec)
                    lines.extend([line] * n)
            bad_total += len(bad)
            # interleave oversampled copies; seeded per file for reproducibility
            rng = random.Random(self.cfg.seed * 1_000_003 + idx)
            rng.shuffle(lines)
            with out_path.open("w", encoding="utf-8") as out:
                out.write("".join(line + "\n" for line in lines))
            sampled_total += len(lines)
            inputs.append({"path": sf.rel, "kind": sf.kind, "sha256": sha256_file(sf.path)})
            outputs.append(
                {"path": f"mix/{out_path.name}", "kind": sf.kind, "records": len(lines), "sha256": sha256_file(out_path)}
            )
        counts = {"rows": len(plan.rows), "records_out": sampled_total, "bad_lines": bad_total}
        manifest = self.write_manifest("mix", inputs, outputs, counts, source)
        return manifest, plan

    # -- chunk ---------------------------------------------------------------

    def run_chunk(self) -> dict:
        files, source = self.resolve_record_inputs("chunk")
        chunk_cfg = self.cfg.chunk
        out_dir = self.stage_dir("chunk")
        buffers: dict[str, list[BiRecord]] = {}
        docs_out: dict[str, list[PseudoDoc]] = {}
        inputs = []
        skipped_mono = 0
        bad_total = 0

        def flush(direction: str, force: bool) -> None:
            buf = buffers[direction]
            while len(buf) >= chunk_cfg.size:
                head, buffers[direction] = buf[: chunk_cfg.size], buf[chunk_cfg.size :]
                buf = buffers[direction]
                docs_out[direction].extend(
                    chunk_pairs(head, chunk_cfg.size, strict_listing=chunk_cfg.strict_listing)
                )
            if force and buf and not chunk_cfg.drop_remainder:
                docs_out[direction].extend(
                    chunk_pairs(buf, chunk_cfg.size, strict_listing=chunk_cfg.strict_listing)
                )
                buffers[direction] = []

        for sf in files:
            inputs.append({"path": sf.rel, "kind": sf.kind, "sha256": sha256_file(sf.path)})
            if sf.kind != "bi":
                skipped_mono += 1
                continue
            bad: list[BadLine] = []
            with sf.path.open("rb") as f:
                for rec in iter_records(f, sf.kind, bad):
                    direction = make_pair_label(rec.src_lang, rec.tgt_lang)
                    buffers.setdefault(direction, []).append(rec)
                    docs_out.setdefault(direction, [])
                    flush(direction, force=False)
            bad_total += len(bad)
        for direction in buffers:
            flush(direction, force=True)

        outputs = []
        n_docs = 0
        for direction in sorted(docs_out):
            docs = docs_out[direction]
            if not docs:
                continue
            if chunk_cfg.format == "text":
                out_path = out_dir / f"{direction}.docs.txt"
                with out_path.open("w", encoding="utf-8") as out:
                    write_docs_text(docs, out, separator=chunk_cfg.delimiter)
            else:
                out_path = out_dir / f"{direction}.docs.jsonl"
                with out_path.open("w", encoding="utf-8") as out:
                    for doc in docs:
                        out.write(json.dumps(doc.to_json_dict(), ensure_ascii=False, separators=(",", ":")) + "\n")
            n_docs += len(docs)
            outputs.append(
                {"path": f"chunk/{out_path.name}", "kind": "docs", "records": len(docs), "sha256": sha256_file(out_path)}
            )
        counts = {"documents": n_docs, "directions": len(outputs), "skipped_non_bilingual_files": skipped_mono, "bad_lines": bad_total}
        return self.write_manifest("chunk", inputs, outputs, counts, source)

    # -- report ---------------------------------------------------------------

    def run_report(self) -> dict:
        stages = ["ingest", "clean", "dedup", "stats", "codefilter", "mix", "chunk"]
        found = {}
        for stage in stages:
            manifest = self.read_manifest(stage)
            if manifest:
                found[stage] = {
                    "counts": manifest["counts"],
                    "outputs": [o["path"] for o in manifest["outputs"]],
                    "previous_manifest_sha256": manifest["previous_manifest_sha256"],
                }
        report = {
            "tool_version": __version__,
            "seed": self.cfg.seed,
            "data_versions": self.data_versions(),
            "stages": found,
        }
        out_dir = self.stage_dir("report")
        (out_dir / "report.json").write_text(json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        return report


def run_all(runner: StageRunner, audit_drops: bool = False, plan_only: bool = False) -> None:
    runner.run_ingest()
    runner.run_clean(audit_drops=audit_drops)
    runner.run_dedup()
    runner.run_stats()
    if runner.cfg.mix:
        runner.run_mix(plan_only=plan_only)
    if any(sf.kind == "bi" for sf in runner.cfg.inputs):
        runner.run_chunk()
