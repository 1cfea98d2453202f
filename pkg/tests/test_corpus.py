"""Tests for pivot-aligned corpus construction and splitting."""

import itertools
import json
import unicodedata

import pytest

from mtlearn import corpus


def bitext(lang, pivots, targets):
    return corpus.PivotBitext(lang=lang, pivot_lines=list(pivots), target_lines=list(targets))


class TestLoadPivotBitext:
    def test_reads_aligned_files(self, tmp_path):
        pivot = tmp_path / "en.txt"
        target = tmp_path / "es.txt"
        pivot.write_text("One\nTwo\nThree\n", encoding="utf-8")
        target.write_text("Uno\nDos\nTres\n", encoding="utf-8")
        bt = corpus.load_pivot_bitext(pivot, target, "es")
        assert len(bt) == 3
        assert bt.pivot_lines[1] == "Two"
        assert bt.target_lines[2] == "Tres"

    def test_line_count_mismatch(self, tmp_path):
        pivot = tmp_path / "en.txt"
        target = tmp_path / "es.txt"
        pivot.write_text("a\nb\nc\n", encoding="utf-8")
        target.write_text("a\nb\n", encoding="utf-8")
        with pytest.raises(ValueError, match="mismatch"):
            corpus.load_pivot_bitext(pivot, target, "es")

    def test_empty_files_are_valid(self, tmp_path):
        pivot = tmp_path / "en.txt"
        target = tmp_path / "es.txt"
        pivot.write_text("", encoding="utf-8")
        target.write_text("", encoding="utf-8")
        assert len(corpus.load_pivot_bitext(pivot, target, "es")) == 0

    def test_missing_file_raises_oserror(self, tmp_path):
        with pytest.raises(OSError):
            corpus.load_pivot_bitext(tmp_path / "no.txt", tmp_path / "no2.txt", "es")

    def test_invalid_utf8(self, tmp_path):
        pivot = tmp_path / "en.txt"
        target = tmp_path / "es.txt"
        pivot.write_bytes(b"\xff\xfe bad bytes\n")
        target.write_text("x\n", encoding="utf-8")
        with pytest.raises(UnicodeDecodeError):
            corpus.load_pivot_bitext(pivot, target, "es")

    def test_bad_lang_code(self, tmp_path):
        pivot = tmp_path / "en.txt"
        pivot.write_text("a\n", encoding="utf-8")
        for bad in ("ES", "esp", "e", "e1"):
            with pytest.raises(ValueError):
                corpus.load_pivot_bitext(pivot, pivot, bad)


class TestNormalizePivot:
    def test_whitespace_collapse(self):
        assert corpus.normalize_pivot("  Hello   world ") == "Hello world"

    def test_identity_on_normal_form(self):
        assert corpus.normalize_pivot("Hello world") == "Hello world"

    def test_nfd_becomes_nfc(self):
        nfd = unicodedata.normalize("NFD", "Café")
        assert nfd != "Café"  # really decomposed
        out = corpus.normalize_pivot(nfd)
        assert out == "Café"
        assert out == unicodedata.normalize("NFC", out)

    def test_case_preserved(self):
        assert corpus.normalize_pivot("MiXeD Case") == "MiXeD Case"

    def test_all_unicode_whitespace_collapses(self):
        # str.split() separates on every Unicode whitespace character,
        # including tabs and thin spaces.
        assert corpus.normalize_pivot("a\t\tb   c") == "a b c"

    def test_idempotent(self):
        for text in ("  x  y ", "Café", "a\tb", ""):
            once = corpus.normalize_pivot(text)
            assert corpus.normalize_pivot(once) == once


class TestBuildParallel:
    def test_single_intersection(self):
        a = bitext("es", ["X", "Y"], ["equis", "ygriega"])
        b = bitext("pt", ["Y", "Z"], ["ipsilon", "ze"])
        pair = corpus.build_parallel(a, b)
        assert pair.pairs == [("ygriega", "ipsilon")]
        assert pair.src == "es" and pair.tgt == "pt"

    def test_duplicate_pivot_capped_at_min_count(self):
        a = bitext("es", ["X", "X", "Q"], ["x1", "x2", "q"])
        b = bitext("pt", ["X"], ["px"])
        pair = corpus.build_parallel(a, b)
        assert pair.pairs == [("x1", "px")]

    def test_occurrence_order_pairing_exhaustive(self):
        # Brute-force oracle: when "X" occurs twice on both sides, the
        # i-th occurrence in a must pair with the i-th occurrence in b.
        a = bitext("es", ["X", "M", "X"], ["xa1", "m", "xa2"])
        b = bitext("pt", ["N", "X", "X"], ["n", "xb1", "xb2"])
        pair = corpus.build_parallel(a, b)
        assert ("xa1", "xb1") in pair.pairs
        assert ("xa2", "xb2") in pair.pairs
        assert ("xa1", "xb2") not in pair.pairs

    def test_full_overlap_in_order(self):
        pivots = [f"sentence {i}" for i in range(6)]
        a = bitext("es", pivots, [f"es{i}" for i in range(6)])
        b = bitext("pt", pivots, [f"pt{i}" for i in range(6)])
        pair = corpus.build_parallel(a, b)
        assert pair.pairs == [(f"es{i}", f"pt{i}") for i in range(6)]

    def test_normalization_applies_to_matching(self):
        a = bitext("es", ["  Hello   world "], ["hola"])
        b = bitext("pt", [unicodedata.normalize("NFD", "Hello world")], ["ola"])
        pair = corpus.build_parallel(a, b)
        assert pair.pairs == [("hola", "ola")]

    def test_empty_normalized_pivots_never_match(self):
        a = bitext("es", ["   ", "real line"], ["blank-es", "es"])
        b = bitext("pt", ["", "real line"], ["blank-pt", "pt"])
        pair = corpus.build_parallel(a, b)
        assert pair.pairs == [("es", "pt")]

    def test_zero_matches_error(self):
        a = bitext("es", ["A"], ["a"])
        b = bitext("pt", ["B"], ["b"])
        with pytest.raises(ValueError, match="no pivot sentences shared"):
            corpus.build_parallel(a, b)

    def test_same_language_error(self):
        a = bitext("es", ["A"], ["a"])
        with pytest.raises(ValueError):
            corpus.build_parallel(a, a)

    def test_pair_count_symmetry(self):
        # Property over a few constructed corpora with duplicates.
        for seed in range(5):
            pivots_a = [f"s{(i * 7 + seed) % 10}" for i in range(30)]
            pivots_b = [f"s{(i * 3 + seed) % 12}" for i in range(25)]
            a = bitext("es", pivots_a, [f"a{i}" for i in range(30)])
            b = bitext("pt", pivots_b, [f"b{i}" for i in range(25)])
            ab = corpus.build_parallel(a, b)
            ba = corpus.build_parallel(b, a)
            assert len(ab) == len(ba)

    def test_provenance_tracks_matched_occurrences(self):
        a = bitext("es", ["X", "M", "X"], ["xa1", "m", "xa2"])
        b = bitext("pt", ["N", "X", "X"], ["n", "xb1", "xb2"])
        pair = corpus.build_parallel(a, b)
        for (a_idx, b_idx), (src_sent, tgt_sent) in zip(pair.provenance, pair.pairs):
            assert a.target_lines[a_idx] == src_sent
            assert b.target_lines[b_idx] == tgt_sent
            assert corpus.normalize_pivot(a.pivot_lines[a_idx]) == corpus.normalize_pivot(
                b.pivot_lines[b_idx]
            )


def make_pair(n):
    pivots = [f"line {i}" for i in range(n)]
    a = bitext("es", pivots, [f"es{i}" for i in range(n)])
    b = bitext("pt", pivots, [f"pt{i}" for i in range(n)])
    return corpus.build_parallel(a, b)


class TestSplitPair:
    def test_size_arithmetic_10(self):
        spec = corpus.SplitSpec(train_ratio=0.8, dev_ratio=0.1, test_ratio=0.1, seed=7)
        train, dev, test = corpus.split_pair(make_pair(10), spec)
        assert (len(train), len(dev), len(test)) == (8, 1, 1)

    def test_floor_and_remainder_100(self):
        spec = corpus.SplitSpec(train_ratio=0.98, dev_ratio=0.01, test_ratio=0.01, seed=1)
        train, dev, test = corpus.split_pair(make_pair(100), spec)
        assert (len(train), len(dev), len(test)) == (98, 1, 1)

    def test_deterministic(self):
        spec = corpus.SplitSpec(train_ratio=0.7, dev_ratio=0.1, test_ratio=0.2, seed=99)
        first = corpus.split_pair(make_pair(50), spec)
        second = corpus.split_pair(make_pair(50), spec)
        for x, y in zip(first, second):
            assert x.pairs == y.pairs

    def test_partition_is_exhaustive_and_disjoint(self):
        spec = corpus.SplitSpec(train_ratio=0.7, dev_ratio=0.1, test_ratio=0.2, seed=5)
        pair = make_pair(73)
        train, dev, test = corpus.split_pair(pair, spec)
        combined = sorted(
            itertools.chain(train.pairs, dev.pairs, test.pairs)
        )
        assert combined == sorted(pair.pairs)
        assert len(set(combined)) == len(pair.pairs)

    def test_order_preserved_within_parts(self):
        spec = corpus.SplitSpec(train_ratio=0.6, dev_ratio=0.2, test_ratio=0.2, seed=3)
        pair = make_pair(40)
        position = {p: i for i, p in enumerate(pair.pairs)}
        for part in corpus.split_pair(pair, spec):
            positions = [position[p] for p in part.pairs]
            assert positions == sorted(positions)

    def test_seed_changes_partition(self):
        pair = make_pair(60)
        spec1 = corpus.SplitSpec(train_ratio=0.7, dev_ratio=0.1, test_ratio=0.2, seed=1)
        spec2 = corpus.SplitSpec(train_ratio=0.7, dev_ratio=0.1, test_ratio=0.2, seed=2)
        assert corpus.split_pair(pair, spec1)[0].pairs != corpus.split_pair(pair, spec2)[0].pairs

    def test_too_few_pairs(self):
        spec = corpus.SplitSpec(train_ratio=0.8, dev_ratio=0.1, test_ratio=0.1, seed=0)
        with pytest.raises(ValueError):
            corpus.split_pair(make_pair(9), spec)

    def test_split_spec_validation(self):
        with pytest.raises(ValueError):
            corpus.SplitSpec(train_ratio=0.5, dev_ratio=0.1, test_ratio=0.1, seed=0)
        with pytest.raises(ValueError):
            corpus.SplitSpec(train_ratio=1.0, dev_ratio=0.0, test_ratio=0.0, seed=0)
        with pytest.raises(ValueError):
            corpus.SplitSpec(train_ratio=0.8, dev_ratio=0.1, test_ratio=0.1, seed=-1)


class TestTsvIO:
    def test_roundtrip(self, tmp_path):
        pair = make_pair(12)
        path = tmp_path / "pairs.tsv"
        corpus.write_pairs_tsv(pair, path)
        assert corpus.read_pairs_tsv(path) == pair.pairs

    def test_embedded_tabs_become_spaces(self, tmp_path):
        pair = corpus.ParallelPair(
            src="es", tgt="pt", pairs=[("has\ttab", "ok")], provenance=[(0, 0)]
        )
        path = tmp_path / "pairs.tsv"
        corpus.write_pairs_tsv(pair, path)
        assert corpus.read_pairs_tsv(path) == [("has tab", "ok")]

    def test_malformed_row_rejected(self, tmp_path):
        path = tmp_path / "bad.tsv"
        path.write_text("only one column\n", encoding="utf-8")
        with pytest.raises(ValueError, match="2 tab-separated"):
            corpus.read_pairs_tsv(path)

    def test_split_bundle_files(self, tmp_path):
        spec = corpus.SplitSpec(train_ratio=0.7, dev_ratio=0.1, test_ratio=0.2, seed=4)
        pair = make_pair(30)
        train, dev, test = corpus.split_pair(pair, spec)
        corpus.write_split_bundle(tmp_path / "es-pt", "es", "pt", train, dev, test, spec)
        for name in ("train.tsv", "dev.tsv", "test.tsv", "meta.json"):
            assert (tmp_path / "es-pt" / name).is_file()
        meta = json.loads((tmp_path / "es-pt" / "meta.json").read_text(encoding="utf-8"))
        assert meta["src"] == "es"
        assert meta["counts"] == {"train": len(train), "dev": len(dev), "test": len(test)}
        assert meta["seed"] == 4
