"""Tests for the self-contained corpus BLEU scorer.

The hand-worked score and the brute-force counter below were derived
independently of the implementation, so they act as oracles rather than
snapshots.
"""

import json
import math
import random

import pytest

from mtlearn import bleu


class TestTokenizer:
    def test_punctuation_isolated(self):
        assert bleu.tokenize_13a("Hello, world!") == ["Hello", ",", "world", "!"]

    def test_whitespace_normalized_first(self):
        assert bleu.tokenize_13a("  a   b\tc ") == ["a", "b", "c"]

    def test_decimal_point_kept_inside_number(self):
        assert bleu.tokenize_13a("pi is 3.14 today") == ["pi", "is", "3.14", "today"]

    def test_thousands_comma_kept_inside_number(self):
        assert bleu.tokenize_13a("1,000 items") == ["1,000", "items"]

    def test_period_split_when_not_between_digits(self):
        assert bleu.tokenize_13a("End.") == ["End", "."]
        assert bleu.tokenize_13a("3. 4") == ["3", ".", "4"]
        assert bleu.tokenize_13a("a.5") == ["a", ".", "5"]
        assert bleu.tokenize_13a("5.a") == ["5", ".", "a"]

    def test_number_at_string_edges_splits(self):
        # '.' at the very start or end has no digit on both sides.
        assert bleu.tokenize_13a(".5") == [".", "5"]
        assert bleu.tokenize_13a("5.") == ["5", "."]

    def test_unicode_letters_kept_together(self):
        assert bleu.tokenize_13a("Café olé") == ["Café", "olé"]

    def test_hyphen_splits(self):
        assert bleu.tokenize_13a("state-of-the-art") == [
            "state", "-", "of", "-", "the", "-", "art"
        ]

    def test_empty_and_whitespace_only(self):
        assert bleu.tokenize_13a("") == []
        assert bleu.tokenize_13a("   ") == []

    def test_superscript_digit_is_not_word_char(self):
        # Unicode category No, unlike Nd, splits off.
        assert bleu.tokenize_13a("x²") == ["x", "²"]


# ---------------------------------------------------------------------------
# Brute-force oracle: counts n-grams with nested loops and explicit dicts,
# sharing no code with the implementation under test.
# ---------------------------------------------------------------------------


def oracle_bleu(hyp_token_lists, ref_token_lists):
    matches = {1: 0, 2: 0, 3: 0, 4: 0}
    totals = {1: 0, 2: 0, 3: 0, 4: 0}
    hyp_len = sum(len(t) for t in hyp_token_lists)
    ref_len = sum(len(t) for t in ref_token_lists)
    for hyp, ref in zip(hyp_token_lists, ref_token_lists):
        for n in (1, 2, 3, 4):
            hyp_ngrams = {}
            for i in range(len(hyp) - n + 1):
                g = tuple(hyp[i:i + n])
                hyp_ngrams[g] = hyp_ngrams.get(g, 0) + 1
            ref_ngrams = {}
            for i in range(len(ref) - n + 1):
                g = tuple(ref[i:i + n])
                ref_ngrams[g] = ref_ngrams.get(g, 0) + 1
            for g, count in hyp_ngrams.items():
                matches[n] += min(count, ref_ngrams.get(g, 0))
            totals[n] += max(len(hyp) - n + 1, 0)
    precisions = []
    for n in (1, 2, 3, 4):
        precisions.append(matches[n] / totals[n] if totals[n] else 0.0)
    if hyp_len == 0:
        bp = 0.0
    elif hyp_len > ref_len:
        bp = 1.0
    else:
        bp = math.exp(1.0 - ref_len / hyp_len)
    if any(p == 0.0 for p in precisions):
        return 0.0
    return 100.0 * bp * math.exp(sum(math.log(p) for p in precisions) / 4.0)


def random_sentence(rnd, vocab, lo=1, hi=15):
    return " ".join(rnd.choice(vocab) for _ in range(rnd.randrange(lo, hi)))


class TestCorpusBleu:
    def test_identity_corpus_scores_100(self):
        refs = [
            "the cat sat on the mat",
            "a quick brown fox jumps over dogs",
            "numbers like 3.14 survive tokenization",
        ]
        assert bleu.corpus_bleu(list(refs), refs).score == 100.0

    def test_hand_derived_example(self):
        # hyp "a b c d f" vs ref "a b c d e f":
        #   unigrams 5/5, bigrams 3/4 (df misses), trigrams 2/3 (cdf
        #   misses), 4-grams 1/2 (bcdf misses); BP = exp(1 - 6/5).
        result = bleu.corpus_bleu(["a b c d f"], ["a b c d e f"])
        assert result.precisions == (1.0, 0.75, 2.0 / 3.0, 0.5)
        assert result.brevity_penalty == pytest.approx(math.exp(-0.2), abs=1e-15)
        assert result.score == pytest.approx(57.89, abs=0.01)
        # Full-precision value of 100*exp(-0.2)*(0.25)**0.25:
        assert result.score == pytest.approx(57.89300674674099, abs=1e-10)

    def test_zero_precision_gives_zero(self):
        # No 4-gram overlap at all: p4 == 0 -> score 0 without smoothing.
        result = bleu.corpus_bleu(["a b c d e"], ["a b c x e f"])
        assert result.precisions[3] == 0.0
        assert result.score == 0.0

    def test_brevity_penalty_only_when_shorter(self):
        long_hyp = bleu.corpus_bleu(["a b c d e f g"], ["a b c d e"])
        assert long_hyp.brevity_penalty == 1.0
        short_hyp = bleu.corpus_bleu(["a b c d e"], ["a b c d e f g"])
        assert short_hyp.brevity_penalty == pytest.approx(math.exp(1 - 7 / 5))

    def test_clipping_counts(self):
        # "the the the" against a single "the": clipped to 1 match of 3.
        result = bleu.corpus_bleu(["the the the"], ["the cat sat"])
        assert result.precisions[0] == pytest.approx(1.0 / 3.0)

    def test_corpus_level_aggregation_not_average(self):
        # Corpus BLEU sums counts before dividing, so it differs from the
        # mean of per-sentence scores when segment lengths differ.
        hyps = ["a b c d e", "x"]
        refs = ["a b c d e", "y"]
        combined = bleu.corpus_bleu(hyps, refs)
        first_only = bleu.corpus_bleu(hyps[:1], refs[:1])
        assert combined.score < first_only.score
        # Unigram pool: 5 matches of 6 hypothesis tokens.
        assert combined.precisions[0] == pytest.approx(5.0 / 6.0)

    def test_matches_bruteforce_oracle_on_random_corpora(self):
        rnd = random.Random(20240817)
        vocab = ["a", "b", "c", "d", "e", "f", "g", "h", "the", "cat", "42"]
        for trial in range(50):
            n = rnd.randrange(1, 8)
            hyps = [random_sentence(rnd, vocab) for _ in range(n)]
            refs = [random_sentence(rnd, vocab) for _ in range(n)]
            result = bleu.corpus_bleu(hyps, refs)
            expected = oracle_bleu(
                [bleu.tokenize_13a(h) for h in hyps],
                [bleu.tokenize_13a(r) for r in refs],
            )
            assert result.score == expected, f"trial {trial}"

    def test_empty_hypothesis_lines(self):
        result = bleu.corpus_bleu(["", ""], ["a b", "c d"])
        assert result.hyp_len == 0
        assert result.brevity_penalty == 0.0
        assert result.score == 0.0

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError, match="counts differ"):
            bleu.corpus_bleu(["a"], ["a", "b"])

    def test_empty_corpus_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            bleu.corpus_bleu([], [])

    def test_serialization_rounds_to_2_decimals(self):
        result = bleu.corpus_bleu(["a b c d f"], ["a b c d e f"])
        data = json.loads(result.to_json())
        assert data["score"] == 57.89
        assert data["hyp_len"] == 5
        assert data["ref_len"] == 6
        # Internal value keeps full precision.
        assert result.score != data["score"]
