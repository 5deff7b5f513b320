"""Interpolated trigram language model.

    P(w | u v) = l1 * P3(w | u v) + l2 * P2(w | v) + l3 * P1(w) + l4 / |V|

Each component is a maximum-likelihood ratio that counts as 0 when its context
was never seen. Utterances are padded with two begin tokens and carry no end
token, so a sequence's probability is the product over its own words only.
"""
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from pyrsistent import pmap

from app.core.exceptions import ModelError, WeightsError

BOS = "<s>"
ORDER = 3
MODEL_HEADER = "ngram-model 1"
WEIGHT_TOLERANCE = 1e-12


@dataclass(frozen=True)
class InterpolationWeights:
    trigram: float
    bigram: float
    unigram: float
    uniform: float

    def __post_init__(self):
        values = self.as_tuple()
        if any(not math.isfinite(v) or v < 0 for v in values):
            raise WeightsError(f"interpolation weights must be non-negative, got {values}")
        if abs(math.fsum(values) - 1.0) > WEIGHT_TOLERANCE:
            raise WeightsError(f"interpolation weights must sum to 1, got {math.fsum(values)!r}")

    def as_tuple(self):
        return (self.trigram, self.bigram, self.unigram, self.uniform)

    @classmethod
    def parse(cls, text):
        """Parse 'l1,l2,l3,l4'."""
        parts = text.replace(",", " ").split()
        if len(parts) != 4:
            raise WeightsError(f"expected four comma separated weights, got {text!r}")
        try:
            return cls(*(float(p) for p in parts))
        except ValueError as exc:
            raise WeightsError(f"weights must be numbers, got {text!r}") from exc


DEFAULT_WEIGHTS = InterpolationWeights(0.5, 0.3, 0.15, 0.05)


@dataclass(frozen=True)
class NGramModel:
    """k-gram counts for k = 1..3 plus the derived context totals.

    `counts[k - 1]` maps k-tuples to counts; `context_totals[k - 1]` maps the
    (k-1)-token context of a k-gram to the number of k-grams sharing it.
    """
    counts: tuple
    weights: InterpolationWeights = DEFAULT_WEIGHTS
    context_totals: tuple = field(init=False, compare=False)
    vocabulary: frozenset = field(init=False, compare=False)
    token_total: int = field(init=False, compare=False)

    def __post_init__(self):
        if len(self.counts) != ORDER:
            raise ModelError(f"expected count tables for orders 1..{ORDER}")
        totals = []
        for table in self.counts:
            context = Counter()
            for gram, count in table.items():
                context[gram[:-1]] += count
            totals.append(pmap(context))
        object.__setattr__(self, "context_totals", tuple(totals))
        object.__setattr__(self, "vocabulary", frozenset(gram[0] for gram in self.counts[0]))
        object.__setattr__(self, "token_total", sum(self.counts[0].values()))
        if not self.vocabulary:
            raise ModelError("model has an empty vocabulary")

    @cached_property
    def sorted_vocabulary(self):
        return tuple(sorted(self.vocabulary))

    def count(self, *gram):
        return self.counts[len(gram) - 1].get(tuple(gram), 0)


def train(corpus, weights=DEFAULT_WEIGHTS):
    """Count unigrams, bigrams and trigrams over padded utterances."""
    tables = [Counter() for _ in range(ORDER)]
    for utterance in corpus:
        tokens = tuple(utterance)
        if not tokens:
            continue
        padded = (BOS,) * (ORDER - 1) + tokens
        for i in range(ORDER - 1, len(padded)):
            for k in range(1, ORDER + 1):
                tables[k - 1][padded[i - k + 1:i + 1]] += 1
    if not tables[0]:
        raise ModelError("cannot train on an empty corpus")
    return NGramModel(tuple(pmap(t) for t in tables), weights)


def _ratio(numerator, denominator):
    return numerator / denominator if denominator else 0.0


def _context_pair(context):
    context = tuple(context)[-(ORDER - 1):]
    return (BOS,) * (ORDER - 1 - len(context)) + context


def next_token_prob(model, context, word, weights=None):
    """Interpolated P(word | context); unknown words only get the uniform share."""
    weights = weights or model.weights
    u, v = _context_pair(context)
    p3 = _ratio(model.count(u, v, word), model.context_totals[2].get((u, v), 0))
    p2 = _ratio(model.count(v, word), model.context_totals[1].get((v,), 0))
    p1 = _ratio(model.count(word), model.token_total)
    p4 = 1.0 / len(model.vocabulary)
    return weights.trigram * p3 + weights.bigram * p2 + weights.unigram * p1 + weights.uniform * p4


def next_token_distribution(model, context, weights=None):
    """Probabilities over `model.sorted_vocabulary` for one context."""
    return np.array([next_token_prob(model, context, w, weights) for w in model.sorted_vocabulary])


def sequence_log_prob(model, tokens, weights=None, normalize_length=False):
    """Natural-log probability of a token sequence; -inf when some factor is zero."""
    tokens = tuple(tokens)
    if not tokens:
        raise ModelError("cannot score an empty sequence")
    padded = (BOS,) * (ORDER - 1) + tokens
    probs = np.array([
        next_token_prob(model, padded[i - ORDER + 1:i], padded[i], weights)
        for i in range(ORDER - 1, len(padded))
    ])
    with np.errstate(divide="ignore"):
        total = float(np.log(probs).sum())
    return total / len(tokens) if normalize_length else total


def read_corpus(text):
    """One utterance per line, whitespace tokenized, lowercased; blank lines skipped."""
    return [tuple(line.lower().split()) for line in text.splitlines() if line.strip()]


def write_model(model):
    lines = [MODEL_HEADER, "lambda " + " ".join(repr(w) for w in model.weights.as_tuple())]
    for k, table in enumerate(model.counts, start=1):
        for gram in sorted(table):
            lines.append(f"{k} {' '.join(gram)} {table[gram]}")
    return "\n".join(lines) + "\n"


def read_model(text):
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or lines[0].strip() != MODEL_HEADER:
        raise ModelError(f"model file must start with {MODEL_HEADER!r}")
    if len(lines) < 2 or not lines[1].startswith("lambda "):
        raise ModelError("model file line 2 must be 'lambda l1 l2 l3 l4'")
    weights = InterpolationWeights.parse(lines[1][len("lambda "):])
    tables = [dict() for _ in range(ORDER)]
    for number, line in enumerate(lines[2:], start=3):
        fields = line.split()
        try:
            k, count = int(fields[0]), int(fields[-1])
        except (ValueError, IndexError) as exc:
            raise ModelError(f"line {number}: malformed count line {line!r}") from exc
        gram = tuple(fields[1:-1])
        if not 1 <= k <= ORDER or len(gram) != k or count < 1:
            raise ModelError(f"line {number}: malformed count line {line!r}")
        tables[k - 1][gram] = count
    return NGramModel(tuple(pmap(t) for t in tables), weights)
