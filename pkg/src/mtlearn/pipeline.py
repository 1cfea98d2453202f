"""End-to-end experiment orchestration.

A JSON manifest describes an experiment: which languages to pair up, where
their pivot-aligned data lives, how to split and subsample, and which
trainer to run. `run_experiment` drives corpus construction, subset
generation, per-cell training/decoding/scoring with a bounded worker pool,
and records every (pair, fraction) cell in a ledger that survives
interruption: re-running skips finished cells, so a killed run resumes
where it stopped. `build_report` turns a complete ledger into the report
bundle (CSV tables, SVG charts, JSON summary).

Everything emitted is deterministic: artifact reuse is guarded by content
fingerprints, aggregation rows are sorted, and floats are serialized via
repr, so two runs of the same manifest produce byte-identical bundles no
matter how the work was scheduled. With the builtin trainer the worker
pool is thread-based, which parallelizes external commands fully but EM
training only up to interpreter lock contention; the 5-language synthetic
experiment finishes well inside desk-scale budgets either way.

Manifest schema (paths are resolved relative to the manifest file)::

    {
      "languages": ["es", "pt"],
      "data_sources": {"es": {"pivot": "...", "target": "..."}, ...},
      "output_dir": "out",
      "split": {"dev_ratio": 0.1, "test_ratio": 0.2, "seed": 7},   # optional
      "fractions": [0.2, ..., 1.0],                                # optional
      "seed": 42,                                                  # optional
      "trainer": {"kind": "builtin-em", "em_iterations": 5},       # optional
      "max_parallel_jobs": 2,                                      # optional
      "matrices": {"written": {"es-pt": 86.4, ...}, "spoken": ...} # optional
    }
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from pathlib import Path

from . import analysis, bleu, charts, corpus, sampling, trainer
from ._rng import derive_seed


class ManifestError(ValueError):
    """The experiment manifest is missing, malformed, or inconsistent."""


class LedgerError(RuntimeError):
    """The run ledger cannot support the requested operation."""


def fraction_slug(fraction: float) -> str:
    """Filesystem-safe name for a fraction: 0.2 -> '0.2', 1.0 -> '1.0'."""
    s = f"{fraction:.4f}".rstrip("0")
    return s + "0" if s.endswith(".") else s


def _write_text_atomic(path: Path, text: str) -> None:
    """Write UTF-8 text so readers never observe a half-written file."""
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8", newline="\n")
    os.replace(tmp, path)


def _sha256_file(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


# ---------------------------------------------------------------------------
# Manifest
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExperimentManifest:
    languages: tuple[str, ...]
    data_sources: dict[str, tuple[Path, Path]]  # lang -> (pivot, target)
    output_dir: Path
    dev_ratio: float = 0.1
    test_ratio: float = 0.2
    split_seed: int | None = None
    fractions: tuple[float, ...] = field(default_factory=sampling.fraction_grid)
    seed: int = 0
    trainer_spec: trainer.TrainerSpec = field(
        default_factory=lambda: trainer.TrainerSpec(kind="builtin-em")
    )
    max_parallel_jobs: int = 1
    matrices: tuple[analysis.IntelligibilityMatrix, analysis.IntelligibilityMatrix] | None = None

    def __post_init__(self) -> None:
        if len(self.languages) < 2:
            raise ManifestError("need at least 2 languages")
        if len(set(self.languages)) != len(self.languages):
            raise ManifestError(f"duplicate languages: {self.languages}")
        for lang in self.languages:
            if lang not in self.data_sources:
                raise ManifestError(f"no data_sources entry for language {lang!r}")
        if self.max_parallel_jobs < 1:
            raise ManifestError("max_parallel_jobs must be >= 1")
        fracs = self.fractions
        if not fracs or sorted(set(fracs)) != list(fracs):
            raise ManifestError(f"fractions must be unique and ascending: {fracs}")
        if any(not 0.0 < f <= 1.0 for f in fracs):
            raise ManifestError(f"fractions must lie in (0, 1]: {fracs}")
        if fracs[-1] != 1.0:
            raise ManifestError("fractions must include 1.0 (full data)")

    def pairs(self) -> list[tuple[str, str]]:
        """All ordered language pairs, in manifest language order."""
        return [
            (a, b) for a in self.languages for b in self.languages if a != b
        ]

    def pair_split_seed(self, src: str, tgt: str) -> int:
        base = self.split_seed if self.split_seed is not None else derive_seed(self.seed, "split")
        return derive_seed(base, src, tgt)

    def pair_subset_seed(self, src: str, tgt: str) -> int:
        return derive_seed(self.seed, "subsample", src, tgt)


_MANIFEST_KEYS = {
    "languages", "data_sources", "output_dir", "split", "fractions",
    "seed", "trainer", "max_parallel_jobs", "matrices",
}


def _parse_matrix(medium: str, scores: dict) -> analysis.IntelligibilityMatrix:
    try:
        parsed = {
            analysis.parse_pair(pair): float(value)
            for pair, value in scores.items()
        }
        return analysis.IntelligibilityMatrix(medium=medium, scores=parsed)
    except (ValueError, TypeError, AttributeError) as exc:
        raise ManifestError(f"bad {medium} matrix: {exc}") from exc


def load_manifest(path: str | Path) -> ExperimentManifest:
    """Load and validate an experiment manifest from a JSON file.

    All validation problems raise ManifestError so the CLI can map them to
    the configuration-error exit status.
    """
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ManifestError(f"cannot read manifest {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ManifestError(f"manifest {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ManifestError("manifest must be a JSON object")
    unknown = set(raw) - _MANIFEST_KEYS
    if unknown:
        raise ManifestError(f"unknown manifest keys: {sorted(unknown)}")
    for key in ("languages", "data_sources", "output_dir"):
        if key not in raw:
            raise ManifestError(f"manifest is missing required key {key!r}")

    base = path.parent

    languages = raw["languages"]
    if not isinstance(languages, list) or not all(isinstance(l, str) for l in languages):
        raise ManifestError("languages must be a list of language codes")
    try:
        for lang in languages:
            corpus.validate_lang(lang)
    except ValueError as exc:
        raise ManifestError(str(exc)) from exc

    sources = raw["data_sources"]
    if not isinstance(sources, dict):
        raise ManifestError("data_sources must be an object")
    data_sources: dict[str, tuple[Path, Path]] = {}
    for lang, entry in sources.items():
        if not isinstance(entry, dict) or "pivot" not in entry or "target" not in entry:
            raise ManifestError(
                f"data_sources[{lang!r}] must have 'pivot' and 'target' paths"
            )
        pivot = (base / entry["pivot"]).resolve()
        target = (base / entry["target"]).resolve()
        for p in (pivot, target):
            if not p.is_file():
                raise ManifestError(f"data source file not found: {p}")
        data_sources[lang] = (pivot, target)

    split = raw.get("split", {})
    if not isinstance(split, dict) or set(split) - {"dev_ratio", "test_ratio", "seed"}:
        raise ManifestError("split accepts only dev_ratio, test_ratio, seed")

    trainer_raw = raw.get("trainer", {"kind": "builtin-em"})
    if not isinstance(trainer_raw, dict):
        raise ManifestError("trainer must be an object")
    allowed = {"kind", "em_iterations", "command_template", "workdir", "timeout"}
    if set(trainer_raw) - allowed:
        raise ManifestError(f"unknown trainer keys: {sorted(set(trainer_raw) - allowed)}")
    trainer_kwargs = dict(trainer_raw)
    trainer_kwargs.setdefault("kind", "builtin-em")
    if "workdir" in trainer_kwargs:
        trainer_kwargs["workdir"] = str((base / trainer_kwargs["workdir"]).resolve())
    try:
        spec = trainer.TrainerSpec(**trainer_kwargs)
    except (ValueError, TypeError) as exc:
        raise ManifestError(f"bad trainer spec: {exc}") from exc

    matrices = None
    if "matrices" in raw:
        mat_raw = raw["matrices"]
        if not isinstance(mat_raw, dict) or set(mat_raw) != {"written", "spoken"}:
            raise ManifestError("matrices must have exactly 'written' and 'spoken'")
        matrices = (
            _parse_matrix("written", mat_raw["written"]),
            _parse_matrix("spoken", mat_raw["spoken"]),
        )

    try:
        return ExperimentManifest(
            languages=tuple(languages),
            data_sources=data_sources,
            output_dir=(base / raw["output_dir"]).resolve(),
            dev_ratio=float(split.get("dev_ratio", 0.1)),
            test_ratio=float(split.get("test_ratio", 0.2)),
            split_seed=split.get("seed"),
            fractions=tuple(float(f) for f in raw.get("fractions", sampling.fraction_grid())),
            seed=int(raw.get("seed", 0)),
            trainer_spec=spec,
            max_parallel_jobs=int(raw.get("max_parallel_jobs", 1)),
            matrices=matrices,
        )
    except ManifestError:
        raise
    except (ValueError, TypeError) as exc:
        raise ManifestError(str(exc)) from exc


def manifest_fingerprint(manifest: ExperimentManifest) -> str:
    """Content hash of everything that can change experiment results.

    Includes input file contents, split/subset parameters, and the trainer
    configuration; deliberately excludes output_dir and max_parallel_jobs,
    which must not affect results.
    """
    payload = {
        "languages": list(manifest.languages),
        "sources": {
            lang: [_sha256_file(pivot), _sha256_file(target)]
            for lang, (pivot, target) in sorted(manifest.data_sources.items())
        },
        "split": {
            "dev_ratio": repr(manifest.dev_ratio),
            "test_ratio": repr(manifest.test_ratio),
            "seed": manifest.split_seed,
        },
        "fractions": [repr(f) for f in manifest.fractions],
        "seed": manifest.seed,
        "trainer": {
            "kind": manifest.trainer_spec.kind,
            "em_iterations": manifest.trainer_spec.em_iterations,
            "command_template": manifest.trainer_spec.command_template,
        },
    }
    text = json.dumps(payload, sort_keys=True)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


# ---------------------------------------------------------------------------
# Ledger
# ---------------------------------------------------------------------------


@dataclass
class CellRecord:
    src: str
    tgt: str
    fraction: float
    status: str = "pending"  # pending | done | failed
    bleu: float | None = None
    hypothesis_path: str | None = None
    wall_time: float | None = None
    error: str | None = None

    def to_dict(self) -> dict:
        return {
            "src": self.src,
            "tgt": self.tgt,
            "fraction": self.fraction,
            "status": self.status,
            "bleu": self.bleu,
            "hypothesis_path": self.hypothesis_path,
            "wall_time": self.wall_time,
            "error": self.error,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CellRecord":
        return cls(**d)


@dataclass
class RunLedger:
    """Per-cell status for one experiment, keyed by (src, tgt, fraction)."""

    fingerprint: str
    cells: dict[tuple[str, str, float], CellRecord]

    def key_str(self, key: tuple[str, str, float]) -> str:
        src, tgt, fraction = key
        return f"{src}-{tgt}/{fraction_slug(fraction)}"

    def all_done(self) -> bool:
        return all(c.status == "done" for c in self.cells.values())

    def failed(self) -> list[CellRecord]:
        return [c for c in self.cells.values() if c.status == "failed"]

    def to_json(self) -> str:
        cells = {self.key_str(k): c.to_dict() for k, c in self.cells.items()}
        return json.dumps(
            {"fingerprint": self.fingerprint, "cells": cells},
            indent=2,
            sort_keys=True,
        ) + "\n"

    def save(self, path: Path) -> None:
        _write_text_atomic(path, self.to_json())

    @classmethod
    def load(cls, path: Path) -> "RunLedger":
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        cells = {}
        for record in raw["cells"].values():
            cell = CellRecord.from_dict(record)
            cells[(cell.src, cell.tgt, cell.fraction)] = cell
        return cls(fingerprint=raw["fingerprint"], cells=cells)


# ---------------------------------------------------------------------------
# Run
# ---------------------------------------------------------------------------


@dataclass
class _PairData:
    """In-memory working set for one ordered pair."""

    src: str
    tgt: str
    train_pairs: list[tuple[str, str]]
    test_src: list[str]
    test_tgt: list[str]
    subsets: dict[float, sampling.SubsetManifest]


def _prepare_pair(
    manifest: ExperimentManifest,
    bitexts: dict[str, corpus.PivotBitext],
    src: str,
    tgt: str,
) -> _PairData:
    """Build (or reuse) the corpus and subset artifacts for one pair."""
    out = manifest.output_dir
    pair_dir = out / "corpus" / f"{src}-{tgt}"
    split_seed = manifest.pair_split_seed(src, tgt)
    spec = corpus.SplitSpec(
        train_ratio=1.0 - manifest.dev_ratio - manifest.test_ratio,
        dev_ratio=manifest.dev_ratio,
        test_ratio=manifest.test_ratio,
        seed=split_seed,
    )
    src_pivot, src_target = manifest.data_sources[src]
    tgt_pivot, tgt_target = manifest.data_sources[tgt]
    fingerprint = hashlib.sha256(
        json.dumps(
            {
                "files": [
                    _sha256_file(src_pivot), _sha256_file(src_target),
                    _sha256_file(tgt_pivot), _sha256_file(tgt_target),
                ],
                "ratios": [repr(manifest.dev_ratio), repr(manifest.test_ratio)],
                "seed": split_seed,
            },
            sort_keys=True,
        ).encode("utf-8")
    ).hexdigest()

    meta_path = pair_dir / "meta.json"
    reuse = False
    if meta_path.is_file():
        try:
            meta = json.loads(meta_path.read_text(encoding="utf-8"))
            reuse = meta.get("fingerprint") == fingerprint
        except (json.JSONDecodeError, OSError):
            reuse = False

    if reuse:
        train_rows = corpus.read_pairs_tsv(pair_dir / "train.tsv")
        test_rows = corpus.read_pairs_tsv(pair_dir / "test.tsv")
    else:
        pair = corpus.build_parallel(bitexts[src], bitexts[tgt])
        train, dev, test = corpus.split_pair(pair, spec)
        corpus.write_split_bundle(
            pair_dir, src, tgt, train, dev, test, spec,
            extra_meta={"fingerprint": fingerprint},
        )
        train_rows = train.pairs
        test_rows = test.pairs

    if manifest.trainer_spec.kind == "external":
        # External commands read the test source from a file.
        src_lines = "\n".join(s for s, _ in test_rows) + "\n"
        test_src_path = pair_dir / "test.src.txt"
        if not test_src_path.is_file() or test_src_path.read_text(encoding="utf-8") != src_lines:
            _write_text_atomic(test_src_path, src_lines)

    subset_dir = out / "subsets" / f"{src}-{tgt}"
    subset_seed = manifest.pair_subset_seed(src, tgt)
    subsets: dict[float, sampling.SubsetManifest] = {}
    for fraction in manifest.fractions:
        sm = sampling.subsample(len(train_rows), fraction, subset_seed, src=src, tgt=tgt)
        subsets[fraction] = sm
        sm_path = subset_dir / f"{fraction_slug(fraction)}.json"
        text = sm.to_json() + "\n"
        if not sm_path.is_file() or sm_path.read_text(encoding="utf-8") != text:
            _write_text_atomic(sm_path, text)

    return _PairData(
        src=src,
        tgt=tgt,
        train_pairs=train_rows,
        test_src=[s for s, _ in test_rows],
        test_tgt=[t for _, t in test_rows],
        subsets=subsets,
    )


def _run_cell(
    manifest: ExperimentManifest, data: _PairData, fraction: float
) -> tuple[float, str]:
    """Train, decode, and score one (pair, fraction) cell.

    Returns (bleu, hypothesis path relative to output_dir) after writing
    the hypothesis file atomically.
    """
    out = manifest.output_dir
    slug = fraction_slug(fraction)
    rel_hyp = f"hyps/{data.src}-{data.tgt}/{slug}.txt"
    hyp_path = out / rel_hyp
    subset = data.subsets[fraction]
    subset_pairs = [data.train_pairs[i] for i in subset.indices]

    if manifest.trainer_spec.kind == "builtin-em":
        table = trainer.train_model1(
            subset_pairs, manifest.trainer_spec.em_iterations
        )
        hyps = [trainer.decode(table, s) for s in data.test_src]
        _write_text_atomic(hyp_path, "\n".join(hyps) + "\n")
    else:
        subset_tsv = out / "subsets" / f"{data.src}-{data.tgt}" / f"{slug}.train.tsv"
        _write_text_atomic(
            subset_tsv,
            "".join(f"{s}\t{t}\n" for s, t in subset_pairs),
        )
        hyp_path.parent.mkdir(parents=True, exist_ok=True)
        hyp_set = trainer.run_external(
            manifest.trainer_spec,
            str(subset_tsv),
            str(out / "corpus" / f"{data.src}-{data.tgt}" / "test.src.txt"),
            str(hyp_path),
            pair_id=(data.src, data.tgt),
            fraction=fraction,
        )
        hyps = list(hyp_set.hypotheses)

    score = bleu.corpus_bleu(hyps, data.test_tgt).score
    return score, rel_hyp


def run_experiment(manifest: ExperimentManifest) -> RunLedger:
    """Run every (pair, fraction) cell, resuming any earlier progress.

    Cells already marked done (with their hypothesis file still present)
    are skipped. A failing cell is recorded as failed and does not stop
    the others. The ledger is persisted after every cell so a killed run
    loses at most the cell it was working on.
    """
    out = manifest.output_dir
    out.mkdir(parents=True, exist_ok=True)
    fingerprint = manifest_fingerprint(manifest)

    ledger_path = out / "ledger.json"
    ledger: RunLedger | None = None
    if ledger_path.is_file():
        try:
            prev = RunLedger.load(ledger_path)
            if prev.fingerprint == fingerprint:
                ledger = prev
        except (json.JSONDecodeError, KeyError, TypeError, OSError):
            ledger = None
    if ledger is None:
        ledger = RunLedger(fingerprint=fingerprint, cells={})
    expected_keys = [
        (src, tgt, fraction)
        for src, tgt in manifest.pairs()
        for fraction in manifest.fractions
    ]
    for src, tgt, fraction in expected_keys:
        if (src, tgt, fraction) not in ledger.cells:
            ledger.cells[(src, tgt, fraction)] = CellRecord(
                src=src, tgt=tgt, fraction=fraction
            )
    # Drop stale cells so |cells| == |pairs| x |fractions| always holds.
    ledger.cells = {k: ledger.cells[k] for k in expected_keys}

    bitexts = {
        lang: corpus.load_pivot_bitext(pivot, target, lang)
        for lang, (pivot, target) in manifest.data_sources.items()
    }
    pair_data = {
        (src, tgt): _prepare_pair(manifest, bitexts, src, tgt)
        for src, tgt in manifest.pairs()
    }

    todo = []
    for key in expected_keys:
        record = ledger.cells[key]
        hyp_ok = (
            record.hypothesis_path is not None
            and (out / record.hypothesis_path).is_file()
        )
        if not (record.status == "done" and hyp_ok):
            todo.append(key)

    lock = threading.Lock()

    def worker(key: tuple[str, str, float]) -> None:
        src, tgt, fraction = key
        started = time.monotonic()
        try:
            score, rel_hyp = _run_cell(manifest, pair_data[(src, tgt)], fraction)
            record = CellRecord(
                src=src, tgt=tgt, fraction=fraction, status="done",
                bleu=score, hypothesis_path=rel_hyp,
                wall_time=time.monotonic() - started,
            )
        except Exception as exc:  # cell failures must not sink the run
            record = CellRecord(
                src=src, tgt=tgt, fraction=fraction, status="failed",
                wall_time=time.monotonic() - started, error=str(exc),
            )
        with lock:
            ledger.cells[key] = record
            ledger.save(ledger_path)

    if todo:
        with ThreadPoolExecutor(max_workers=manifest.max_parallel_jobs) as pool:
            futures = [pool.submit(worker, key) for key in todo]
            for future in as_completed(futures):
                future.result()

    ledger.save(ledger_path)

    rows = ["pair,fraction,bleu"]
    for key in sorted(ledger.cells):
        record = ledger.cells[key]
        if record.status == "done":
            rows.append(
                f"{record.src}-{record.tgt},{repr(float(record.fraction))},"
                f"{repr(float(record.bleu))}"
            )
    _write_text_atomic(out / "scores.csv", "\n".join(rows) + "\n")
    return ledger


# ---------------------------------------------------------------------------
# Report
# ---------------------------------------------------------------------------


def _safe_pearson(xs: list[float], ys: list[float]) -> float | None:
    """Pearson r, or None when it is undefined for this data."""
    try:
        return analysis.pearson(xs, ys)
    except ValueError:
        return None


def _scatter_svg(
    points: list[analysis.ScatterPoint],
    r: float | None,
    medium_label: str,
    excluded_source: str | None,
) -> str:
    r_text = f"Pearson r = {r:.3f}" if r is not None else "Pearson r undefined"
    marked = [
        (
            p.auc,
            p.intelligibility,
            analysis.pair_str(p.pair_id),
            p.pair_id[0] == excluded_source,
        )
        for p in points
    ]
    return charts.scatter_chart(
        f"AUC vs {medium_label} intelligibility ({r_text})",
        "learning-curve AUC",
        f"{medium_label} intelligibility",
        marked,
    )


def report_from_auc(
    auc_by_pair: dict[tuple[str, str], float],
    matrices: tuple[analysis.IntelligibilityMatrix, analysis.IntelligibilityMatrix],
    output_dir: str | Path,
    exclude_source: str = "ro",
) -> dict:
    """Emit the correlation half of the report bundle from AUC values.

    Writes auc.csv, the three scatter CSVs and SVGs, and summary.json.
    Pearson values are null when fewer than 3 scatter points match a
    matrix or the matched values have no variance. Returns the summary.
    """
    out = Path(output_dir)
    written, spoken = matrices

    auc_rows = [
        analysis.AucScore(auc=auc_by_pair[pair], pair_id=pair)
        for pair in sorted(auc_by_pair)
    ]
    _write_text_atomic(out / "auc.csv", analysis.auc_to_csv(auc_rows))

    points_written = analysis.build_scatter(auc_by_pair, written)
    points_spoken = analysis.build_scatter(auc_by_pair, spoken)
    points_excl = analysis.filter_by_source(points_spoken, exclude_source)

    r_written = _safe_pearson(
        [p.auc for p in points_written], [p.intelligibility for p in points_written]
    )
    r_spoken = _safe_pearson(
        [p.auc for p in points_spoken], [p.intelligibility for p in points_spoken]
    )
    r_excl = _safe_pearson(
        [p.auc for p in points_excl], [p.intelligibility for p in points_excl]
    )

    _write_text_atomic(
        out / "scatter_written.csv", analysis.scatter_to_csv(points_written)
    )
    _write_text_atomic(
        out / "scatter_spoken.csv", analysis.scatter_to_csv(points_spoken)
    )
    _write_text_atomic(
        out / "scatter_spoken_excl_ro.csv",
        analysis.scatter_to_csv(points_spoken, excluded_source=exclude_source),
    )

    plots = out / "plots"
    if points_written:
        _write_text_atomic(
            plots / "scatter_written.svg",
            _scatter_svg(points_written, r_written, "written", None),
        )
    if points_spoken:
        _write_text_atomic(
            plots / "scatter_spoken.svg",
            _scatter_svg(points_spoken, r_spoken, "spoken", None),
        )
        _write_text_atomic(
            plots / "scatter_spoken_excl_ro.svg",
            _scatter_svg(points_spoken, r_excl, "spoken", exclude_source),
        )

    summary = {
        "auc": {analysis.pair_str(pair): auc_by_pair[pair] for pair in sorted(auc_by_pair)},
        "pearson_written": r_written,
        "pearson_spoken": r_spoken,
        "pearson_spoken_excl_ro": r_excl,
    }
    _write_text_atomic(
        out / "summary.json", json.dumps(summary, indent=2, sort_keys=True) + "\n"
    )
    return summary


def build_report(
    ledger: RunLedger,
    matrices: tuple[analysis.IntelligibilityMatrix, analysis.IntelligibilityMatrix],
    output_dir: str | Path,
    exclude_source: str = "ro",
) -> dict:
    """Turn a complete ledger into the full report bundle.

    Refuses to run unless every cell is done: a partial grid would silently
    bias every curve it touches.
    """
    if not ledger.all_done():
        unfinished = [
            ledger.key_str(k) for k, c in sorted(ledger.cells.items())
            if c.status != "done"
        ]
        raise LedgerError(
            f"ledger has {len(unfinished)} unfinished cells: "
            + ", ".join(unfinished[:8])
            + ("..." if len(unfinished) > 8 else "")
        )
    out = Path(output_dir)

    raw_by_pair: dict[tuple[str, str], list[tuple[float, float]]] = {}
    for (src, tgt, fraction), record in ledger.cells.items():
        raw_by_pair.setdefault((src, tgt), []).append((fraction, record.bleu))

    curves = [
        analysis.relative_curve(raw_by_pair[pair], pair_id=pair)
        for pair in sorted(raw_by_pair)
    ]
    _write_text_atomic(out / "curves.csv", analysis.curves_to_csv(curves))

    sources = sorted({pair[0] for pair in raw_by_pair})
    for src in sources:
        series = {
            analysis.pair_str(c.pair_id): [
                (p.fraction * 100.0, p.relative) for p in c.points
            ]
            for c in curves
            if c.pair_id[0] == src
        }
        _write_text_atomic(
            out / "plots" / f"curves_{src}.svg",
            charts.line_chart(
                f"Learning curves from {src}",
                "training data used (%)",
                "relative BLEU",
                series,
            ),
        )

    auc_by_pair = {
        c.pair_id: analysis.auc_trapezoid(c).auc for c in curves
    }
    return report_from_auc(auc_by_pair, matrices, out, exclude_source=exclude_source)
