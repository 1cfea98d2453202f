"""Self-contained corpus-level BLEU with a fixed tokenizer.

The scorer is deliberately dependency-free so that every number it produces
can be audited from this file alone: a fixed rule-set tokenizer in the
spirit of the WMT "13a" convention, clipped n-gram precisions for n = 1..4
aggregated at the corpus level, uniform weights, no smoothing, and the
standard brevity penalty. Scores are on the 0-100 scale.
"""

from __future__ import annotations

import json
import math
import unicodedata
from collections import Counter
from dataclasses import dataclass

MAX_ORDER = 4


def _is_word_char(ch: str) -> bool:
    # Letters are Unicode general category L*, digits are Nd. This covers
    # the Romance diacritics that str.isalnum alone would also pass but
    # excludes oddities like superscript digits (category No).
    cat = unicodedata.category(ch)
    return cat[0] == "L" or cat == "Nd"


def _is_digit(ch: str) -> bool:
    return unicodedata.category(ch) == "Nd"


def tokenize_13a(text: str) -> list[str]:
    """Tokenize text with the scorer's fixed rule set.

    Whitespace is normalized first. Every character that is neither a
    letter (category L*) nor a digit (category Nd) is then split into its
    own token, except '.' and ',' when both immediate neighbors are digits
    (keeping decimal and thousands separators inside numbers, e.g. "3.14").

    >>> tokenize_13a("Hello, world!")
    ['Hello', ',', 'world', '!']
    """
    norm = " ".join(text.split())
    out: list[str] = []
    last = len(norm) - 1
    for i, ch in enumerate(norm):
        if _is_word_char(ch):
            out.append(ch)
        elif ch in ".," and 0 < i < last and _is_digit(norm[i - 1]) and _is_digit(norm[i + 1]):
            out.append(ch)
        else:
            out.append(" ")
            out.append(ch)
            out.append(" ")
    return "".join(out).split()


@dataclass(frozen=True)
class BleuScore:
    """Corpus BLEU plus its sufficient statistics.

    ``precisions`` are the four clipped n-gram precisions as fractions in
    [0, 1]. ``score`` is held at full precision here; serialization rounds
    it to 2 decimal places.
    """

    score: float
    precisions: tuple[float, float, float, float]
    brevity_penalty: float
    hyp_len: int
    ref_len: int

    def to_dict(self) -> dict:
        return {
            "score": round(self.score, 2),
            "precisions": list(self.precisions),
            "brevity_penalty": self.brevity_penalty,
            "hyp_len": self.hyp_len,
            "ref_len": self.ref_len,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _ngram_counts(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def corpus_bleu(hypotheses: list[str], references: list[str]) -> BleuScore:
    """Corpus-level BLEU of hypotheses against single references.

    Clipped match counts and total counts are summed over all segments
    before dividing (corpus-level aggregation), precisions use uniform 1/4
    weights, and there is no smoothing: if any order has zero matches the
    score is 0. The brevity penalty is exp(1 - ref_len/hyp_len) when the
    hypothesis corpus is shorter than the reference corpus, else 1.
    """
    if len(hypotheses) != len(references):
        raise ValueError(
            f"hypothesis/reference counts differ: {len(hypotheses)} vs {len(references)}"
        )
    if not hypotheses:
        raise ValueError("cannot score an empty corpus")

    matches = [0] * MAX_ORDER
    totals = [0] * MAX_ORDER
    hyp_len = 0
    ref_len = 0
    for hyp, ref in zip(hypotheses, references):
        hyp_tokens = tokenize_13a(hyp)
        ref_tokens = tokenize_13a(ref)
        hyp_len += len(hyp_tokens)
        ref_len += len(ref_tokens)
        for n in range(1, MAX_ORDER + 1):
            hyp_counts = _ngram_counts(hyp_tokens, n)
            if not hyp_counts:
                continue
            ref_counts = _ngram_counts(ref_tokens, n)
            matches[n - 1] += sum(min(c, ref_counts[g]) for g, c in hyp_counts.items())
            totals[n - 1] += len(hyp_tokens) - n + 1

    precisions = tuple(m / t if t > 0 else 0.0 for m, t in zip(matches, totals))

    if hyp_len == 0:
        brevity_penalty = 0.0
    elif hyp_len > ref_len:
        brevity_penalty = 1.0
    else:
        brevity_penalty = math.exp(1.0 - ref_len / hyp_len)

    if all(p > 0.0 for p in precisions):
        log_avg = sum(math.log(p) for p in precisions) / MAX_ORDER
        score = 100.0 * brevity_penalty * math.exp(log_avg)
    else:
        score = 0.0

    return BleuScore(
        score=score,
        precisions=precisions,  # type: ignore[arg-type]
        brevity_penalty=brevity_penalty,
        hyp_len=hyp_len,
        ref_len=ref_len,
    )
