"""Parallel corpus construction by pivoting through English.

Each language arrives as a pair of line-aligned text files: one English
(pivot) file and one file in the language itself. Two languages are joined
into a parallel corpus by matching identical pivot sentences, where
"identical" means equal after whitespace collapsing and Unicode NFC
normalization (case is preserved). The joined corpus is then split into
train/dev/test with a seeded, platform-independent shuffle.
"""

from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path

from ._rng import permutation

PIVOT_LANG = "en"

_LANG_RE = re.compile(r"^[a-z]{2}$")


def validate_lang(code: str) -> str:
    """Check that a language code is two ASCII lowercase letters."""
    if not isinstance(code, str) or not _LANG_RE.match(code):
        raise ValueError(f"invalid language code: {code!r} (want 2 lowercase ASCII letters)")
    return code


@dataclass
class PivotBitext:
    """One language's sentences line-aligned to English pivot sentences."""

    lang: str
    pivot_lines: list[str]
    target_lines: list[str]

    def __post_init__(self):
        validate_lang(self.lang)
        if len(self.pivot_lines) != len(self.target_lines):
            raise ValueError(
                f"pivot/target line counts differ for {self.lang}: "
                f"{len(self.pivot_lines)} vs {len(self.target_lines)}"
            )

    def __len__(self) -> int:
        return len(self.pivot_lines)


@dataclass
class ParallelPair:
    """Constructed sentence pairs for one ordered language pair.

    ``provenance[i]`` is the (line index in the source bitext, line index in
    the target bitext) of the pivot occurrence that produced ``pairs[i]``.
    """

    src: str
    tgt: str
    pairs: list[tuple[str, str]]
    provenance: list[tuple[int, int]] = field(default_factory=list)

    def __post_init__(self):
        validate_lang(self.src)
        validate_lang(self.tgt)
        if self.src == self.tgt:
            raise ValueError(f"source and target language are both {self.src!r}")
        if self.provenance and len(self.provenance) != len(self.pairs):
            raise ValueError("provenance length does not match pair count")

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class SplitSpec:
    """Train/dev/test ratios plus the shuffle seed."""

    train_ratio: float
    dev_ratio: float
    test_ratio: float
    seed: int

    def __post_init__(self):
        for name, r in (("train", self.train_ratio), ("dev", self.dev_ratio), ("test", self.test_ratio)):
            if not 0.0 < r < 1.0:
                raise ValueError(f"{name}_ratio must be in (0, 1), got {r}")
        total = self.train_ratio + self.dev_ratio + self.test_ratio
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"ratios must sum to 1, got {total!r}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


def load_pivot_bitext(pivot_path: str | Path, target_path: str | Path, lang: str) -> PivotBitext:
    """Load a (pivot file, target file) pair into a PivotBitext.

    Both files must be UTF-8 with one sentence per line and equal line
    counts. Raises ValueError on a count mismatch; I/O and decoding errors
    (OSError, UnicodeDecodeError) propagate unchanged.
    """
    validate_lang(lang)
    pivot_lines = _read_lines(pivot_path)
    target_lines = _read_lines(target_path)
    if len(pivot_lines) != len(target_lines):
        raise ValueError(
            f"line count mismatch: {pivot_path} has {len(pivot_lines)} lines, "
            f"{target_path} has {len(target_lines)}"
        )
    return PivotBitext(lang=lang, pivot_lines=pivot_lines, target_lines=target_lines)


def _read_lines(path: str | Path) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        return fh.read().splitlines()


def normalize_pivot(sentence: str) -> str:
    """Normal form used for pivot sentence identity.

    Strips leading/trailing whitespace, collapses internal whitespace runs
    to single spaces, and applies Unicode NFC. Case is preserved; the
    operation is idempotent.
    """
    return unicodedata.normalize("NFC", " ".join(sentence.split()))


def build_parallel(a: PivotBitext, b: PivotBitext) -> ParallelPair:
    """Join two pivot bitexts into a parallel corpus for (a.lang, b.lang).

    A pivot sentence occurring k_a times in ``a`` and k_b times in ``b``
    yields min(k_a, k_b) pairs, matching occurrences in order (i-th with
    i-th). Output follows ``a``'s line order. Lines whose normalized pivot
    is empty are ignored; matching blank subtitle lines against each other
    would pair unrelated sentences.
    """
    if a.lang == b.lang:
        raise ValueError(f"cannot build a parallel pair from {a.lang!r} twice")
    if len(a) == 0 or len(b) == 0:
        raise ValueError("both bitexts must be nonempty")

    b_occurrences: dict[str, list[int]] = {}
    for j, pivot in enumerate(b.pivot_lines):
        key = normalize_pivot(pivot)
        if key:
            b_occurrences.setdefault(key, []).append(j)

    pairs: list[tuple[str, str]] = []
    provenance: list[tuple[int, int]] = []
    seen: dict[str, int] = {}
    for i, pivot in enumerate(a.pivot_lines):
        key = normalize_pivot(pivot)
        if not key:
            continue
        occ = seen.get(key, 0)
        seen[key] = occ + 1
        matches = b_occurrences.get(key)
        if matches is not None and occ < len(matches):
            j = matches[occ]
            pairs.append((a.target_lines[i], b.target_lines[j]))
            provenance.append((i, j))

    if not pairs:
        raise ValueError(f"no pivot sentences shared between {a.lang} and {b.lang}")
    return ParallelPair(src=a.lang, tgt=b.lang, pairs=pairs, provenance=provenance)


def split_pair(pair: ParallelPair, spec: SplitSpec) -> tuple[ParallelPair, ParallelPair, ParallelPair]:
    """Partition a ParallelPair into (train, dev, test).

    Dev and test receive floor(ratio * N) pairs each and train receives the
    remainder. Membership comes from a seeded permutation (see ``_rng``),
    so a given seed and input always produce the same partition; within each
    part the original pair order is kept.
    """
    n = len(pair)
    if n < 10:
        raise ValueError(f"need at least 10 pairs to split, got {n}")
    n_dev = int(spec.dev_ratio * n)
    n_test = int(spec.test_ratio * n)
    n_train = n - n_dev - n_test

    order = permutation(n, spec.seed)
    train_idx = sorted(order[:n_train])
    dev_idx = sorted(order[n_train:n_train + n_dev])
    test_idx = sorted(order[n_train + n_dev:])

    def take(indices: list[int]) -> ParallelPair:
        return ParallelPair(
            src=pair.src,
            tgt=pair.tgt,
            pairs=[pair.pairs[i] for i in indices],
            provenance=[pair.provenance[i] for i in indices] if pair.provenance else [],
        )

    return take(train_idx), take(dev_idx), take(test_idx)


def write_pairs_tsv(pair: ParallelPair, path: str | Path) -> None:
    """Write sentence pairs as 2-column TSV (src TAB tgt, one per line).

    Tabs inside sentences would corrupt the format and are replaced by
    single spaces.
    """
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for src_sent, tgt_sent in pair.pairs:
            fh.write(src_sent.replace("\t", " "))
            fh.write("\t")
            fh.write(tgt_sent.replace("\t", " "))
            fh.write("\n")


def read_pairs_tsv(path: str | Path) -> list[tuple[str, str]]:
    """Read sentence pairs from a 2-column TSV file."""
    out: list[tuple[str, str]] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh.read().splitlines(), start=1):
            cols = line.split("\t")
            if len(cols) != 2:
                raise ValueError(f"{path}:{lineno}: expected 2 tab-separated columns, got {len(cols)}")
            out.append((cols[0], cols[1]))
    return out


def write_split_bundle(
    directory: str | Path,
    src: str,
    tgt: str,
    train: ParallelPair,
    dev: ParallelPair,
    test: ParallelPair,
    spec: SplitSpec,
    extra_meta: dict | None = None,
) -> None:
    """Write train/dev/test TSVs plus the JSON sidecar for one pair."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    write_pairs_tsv(train, directory / "train.tsv")
    write_pairs_tsv(dev, directory / "dev.tsv")
    write_pairs_tsv(test, directory / "test.tsv")
    meta = {
        "src": src,
        "tgt": tgt,
        "counts": {"train": len(train), "dev": len(dev), "test": len(test)},
        "seed": spec.seed,
        "ratios": {"train": spec.train_ratio, "dev": spec.dev_ratio, "test": spec.test_ratio},
    }
    if extra_meta:
        meta.update(extra_meta)
    with open(directory / "meta.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
