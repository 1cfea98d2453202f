"""
Tokenization and corpus BLEU
============================

How hypothesis translations are scored: a fixed 13a-style tokenizer feeds
n-gram precisions that are pooled over the whole corpus, with a brevity
penalty and no smoothing.

Run with: python3 demos/02_bleu_scoring.py
"""

from mtlearn import bleu

##############################################################################
# The tokenizer lowercases nothing and keeps letters and digits together.
# Punctuation becomes its own token, except that '.' and ',' stay inside
# numbers like 3.14 or 1,000.

for text in ["Hello, world!", "pi is 3.14", "1,000 items.", "End."]:
    print(f"{text!r:18} -> {bleu.tokenize_13a(text)}")

##############################################################################
# A perfect hypothesis scores 100. Scores are corpus-level: clipped n-gram
# matches are summed over all sentences before any division happens, which
# is not the same as averaging per-sentence scores.

refs = ["the cat sat on the mat", "it rained all day yesterday"]
print("\nidentity:", bleu.corpus_bleu(refs, refs).score)

##############################################################################
# A close but shorter hypothesis shows all the moving parts at once. With
# hypothesis "a b c d f" against reference "a b c d e f", the four n-gram
# precisions are 5/5, 3/4, 2/3, and 1/2, and the brevity penalty is
# exp(1 - 6/5) because the hypothesis is one token short.

result = bleu.corpus_bleu(["a b c d f"], ["a b c d e f"])
print("\nshort hypothesis:")
print("  precisions      ", [round(p, 4) for p in result.precisions])
print("  brevity penalty ", round(result.brevity_penalty, 6))
print("  BLEU            ", round(result.score, 2))

##############################################################################
# Without smoothing, a corpus in which some n-gram order never matches
# scores exactly zero. Very short corpora hit this through the 4-gram
# precision long before the unigrams look bad.

result = bleu.corpus_bleu(["a b c d"], ["a x b y c z d w"])
print("\nno bigram matches at all:", result.score)

##############################################################################
# The full breakdown serializes to JSON for logging or dashboards.

print("\nserialized:", bleu.corpus_bleu(["a b c d f"], ["a b c d e f"]).to_json())
