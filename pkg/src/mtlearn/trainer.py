"""Translation models for training subsets.

Two trainers share one contract. The built-in trainer is IBM Model 1 with
EM and a NULL source token; decoding is per-token argmax over the learned
lexical table, which is crude but deterministic and shows genuine
data-scaling behavior. The external adapter runs an arbitrary command with
file-path placeholders so a real NMT stack can be plugged into the same
pipeline.
"""

from __future__ import annotations

import math
import subprocess
from collections import defaultdict
from dataclasses import dataclass

NULL_TOKEN = "<NULL>"

DEFAULT_EXTERNAL_TIMEOUT = 86400.0  # seconds; external systems may train for hours


class ExternalTrainerError(RuntimeError):
    """An external trainer command failed; carries captured diagnostics."""


@dataclass(frozen=True)
class LexicalTable:
    """Lexical translation probabilities t(tgt | src) from IBM Model 1.

    entries maps each source token (including NULL_TOKEN) to a distribution
    over target tokens. Every inner distribution sums to 1 within 1e-9.
    log_likelihoods[k] is the training-corpus log-likelihood under the
    parameters entering EM iteration k, so the sequence is non-decreasing.
    skipped_pairs counts training pairs dropped because one side was empty.
    """

    entries: dict[str, dict[str, float]]
    log_likelihoods: tuple[float, ...]
    skipped_pairs: int = 0

    def __post_init__(self) -> None:
        for src, dist in self.entries.items():
            if not dist:
                raise ValueError(f"empty distribution for source token {src!r}")
            total = sum(dist.values())
            if abs(total - 1.0) > 1e-9:
                raise ValueError(f"distribution for {src!r} sums to {total!r}, not 1")


@dataclass(frozen=True)
class TrainerSpec:
    """How to obtain hypotheses for one training subset.

    kind is "builtin-em" (uses em_iterations) or "external" (uses
    command_template, which must contain the placeholders {train},
    {test_src} and {hyp_out}; {workdir} is substituted when present).
    """

    kind: str
    em_iterations: int = 5
    command_template: str = ""
    workdir: str = "."
    timeout: float = DEFAULT_EXTERNAL_TIMEOUT

    def __post_init__(self) -> None:
        if self.kind not in ("builtin-em", "external"):
            raise ValueError(f"unknown trainer kind: {self.kind!r}")
        if self.kind == "builtin-em" and self.em_iterations < 1:
            raise ValueError("em_iterations must be >= 1")
        if self.kind == "external":
            for placeholder in ("{train}", "{test_src}", "{hyp_out}"):
                if placeholder not in self.command_template:
                    raise ValueError(
                        f"external command_template must contain {placeholder}"
                    )


@dataclass(frozen=True)
class HypothesisSet:
    """Translated sentences aligned one-to-one with the test source lines."""

    hypotheses: tuple[str, ...]
    pair_id: tuple[str, str] | None = None
    fraction: float | None = None


def train_model1(
    train_pairs: list[tuple[str, str]], iterations: int
) -> LexicalTable:
    """Train IBM Model 1 lexical probabilities t(tgt | src) with EM.

    Each source sentence is whitespace-tokenized and prepended with the
    NULL token; initialization is uniform over co-occurring token pairs.
    Pairs with an empty side are skipped (counted in skipped_pairs), and an
    entirely empty corpus is an error.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")

    tokenized: list[tuple[list[str], list[str]]] = []
    skipped = 0
    for src_sentence, tgt_sentence in train_pairs:
        src_tokens = src_sentence.split()
        tgt_tokens = tgt_sentence.split()
        if not src_tokens or not tgt_tokens:
            skipped += 1
            continue
        tokenized.append(([NULL_TOKEN] + src_tokens, tgt_tokens))
    if not tokenized:
        raise ValueError("no usable training pairs (empty corpus)")

    # Uniform initialization over co-occurring pairs: each source token
    # starts with equal mass on every target token it appears alongside.
    cooc: dict[str, set[str]] = defaultdict(set)
    for src_tokens, tgt_tokens in tokenized:
        for s in src_tokens:
            cooc[s].update(tgt_tokens)
    t_prob: dict[str, dict[str, float]] = {
        s: {t: 1.0 / len(ts) for t in ts} for s, ts in cooc.items()
    }

    log_likelihoods: list[float] = []
    for _ in range(iterations):
        counts: dict[str, dict[str, float]] = defaultdict(lambda: defaultdict(float))
        totals: dict[str, float] = defaultdict(float)
        log_likelihood = 0.0
        for src_tokens, tgt_tokens in tokenized:
            log_len = math.log(len(src_tokens))
            for t in tgt_tokens:
                # Each target token is generated by one of the source
                # tokens (NULL included) with probability t(t|s)/|src|.
                probs = [t_prob[s][t] for s in src_tokens]
                denom = sum(probs)
                log_likelihood += math.log(denom) - log_len
                for s, p in zip(src_tokens, probs):
                    share = p / denom
                    counts[s][t] += share
                    totals[s] += share
        log_likelihoods.append(log_likelihood)
        t_prob = {
            s: {t: c / totals[s] for t, c in tcounts.items()}
            for s, tcounts in counts.items()
        }

    return LexicalTable(
        entries=t_prob,
        log_likelihoods=tuple(log_likelihoods),
        skipped_pairs=skipped,
    )


def decode(table: LexicalTable, src_sentence: str) -> str:
    """Translate one sentence by per-token argmax over the lexical table.

    Ties are broken lexicographically (smallest target token wins) so the
    output is identical across platforms and dict orderings. Tokens absent
    from the table pass through verbatim; word order is preserved.
    """
    out: list[str] = []
    for token in src_sentence.split():
        dist = table.entries.get(token)
        if dist is None:
            out.append(token)
        else:
            out.append(min(dist.items(), key=lambda kv: (-kv[1], kv[0]))[0])
    return " ".join(out)


def run_external(
    spec: TrainerSpec,
    train_path: str,
    test_src_path: str,
    hyp_out_path: str,
    pair_id: tuple[str, str] | None = None,
    fraction: float | None = None,
) -> HypothesisSet:
    """Run an external trainer command and load its hypothesis file.

    The command template's placeholders are substituted with the given
    paths, the command runs through the shell in spec.workdir with the
    inherited environment, and the resulting hypothesis file must have
    exactly one line per test source line.
    """
    if spec.kind != "external":
        raise ValueError(f"run_external requires kind 'external', got {spec.kind!r}")

    command = spec.command_template.format(
        train=train_path,
        test_src=test_src_path,
        hyp_out=hyp_out_path,
        workdir=spec.workdir,
    )
    try:
        proc = subprocess.run(
            command,
            shell=True,
            cwd=spec.workdir,
            capture_output=True,
            text=True,
            timeout=spec.timeout,
        )
    except subprocess.TimeoutExpired as exc:
        raise ExternalTrainerError(
            f"external trainer timed out after {spec.timeout}s: {command}"
        ) from exc
    if proc.returncode != 0:
        raise ExternalTrainerError(
            f"external trainer exited {proc.returncode}: {command}\n"
            f"stdout:\n{proc.stdout}\nstderr:\n{proc.stderr}"
        )

    with open(test_src_path, encoding="utf-8") as fh:
        n_expected = len(fh.read().splitlines())
    try:
        with open(hyp_out_path, encoding="utf-8") as fh:
            hypotheses = fh.read().splitlines()
    except OSError as exc:
        raise ExternalTrainerError(
            f"external trainer produced no hypothesis file at {hyp_out_path}: {exc}"
        ) from exc
    if len(hypotheses) != n_expected:
        raise ExternalTrainerError(
            f"hypothesis file {hyp_out_path} has {len(hypotheses)} lines, "
            f"expected {n_expected}"
        )

    return HypothesisSet(
        hypotheses=tuple(hypotheses), pair_id=pair_id, fraction=fraction
    )
