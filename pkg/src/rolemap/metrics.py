"""Evaluation protocols: ranking metrics and mapping-level P/R/F1.

Ranking metrics take a mined ranking plus a label file over pairs.  Relevance
is binary for precision and average precision (anything but "not" counts);
NDCG uses graded gains 0..4 for not / sub / self / close / far with log2
discounting.  Conventions pinned here, since only sampled pools are ever
labeled in practice:

* AP@k divides by the number of relevant pairs inside the top k (0 if none);
* the NDCG normalizer is the ideal reordering of the top-k labels themselves
  (0 if every gain in the pool is 0).

Mapping metrics compare predicted cluster pairs against a gold mapping whose
entities are span lists written by annotators.  A predicted cluster resolves
to a gold entity when they share at least one span string after lowercasing
and whitespace collapsing; an unresolvable cluster simply counts as wrong.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

from .entity_clustering import ClusteredDocument
from .interchange import ParseError, ValidationError
from .mapper import Mapping
from .mining import RankedPair

LABELS = ("not", "sub", "self", "close", "far")
GAINS = {"not": 0, "sub": 1, "self": 2, "close": 3, "far": 4}

SpanSets = tuple[frozenset[str], frozenset[str]]


def normalize_span(span: str) -> str:
    return " ".join(span.split()).lower()


# ---------------------------------------------------------------------------
# Ranking metrics
# ---------------------------------------------------------------------------

def _top_k_labels(ranking: list[RankedPair], labels: dict[tuple[str, str], str],
                  k: int) -> list[str]:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k > len(ranking):
        raise ValueError(f"k={k} exceeds ranking length {len(ranking)}")
    picked = []
    for pair in ranking[:k]:
        key = (pair.base_doc, pair.target_doc)
        label = labels.get(key) or labels.get((key[1], key[0]))
        if label is None:
            raise ValueError(f"missing label for pair {key} in top {k}")
        if label not in LABELS:
            raise ValueError(f"unknown label {label!r} for pair {key}")
        picked.append(label)
    return picked


def precision_at_k(ranking: list[RankedPair], labels: dict[tuple[str, str], str],
                   k: int) -> float:
    picked = _top_k_labels(ranking, labels, k)
    return sum(1 for label in picked if label != "not") / k


def average_precision_at_k(ranking: list[RankedPair], labels: dict[tuple[str, str], str],
                           k: int) -> float:
    picked = _top_k_labels(ranking, labels, k)
    hits = 0
    precision_sum = 0.0
    for rank, label in enumerate(picked, start=1):
        if label != "not":
            hits += 1
            precision_sum += hits / rank
    return precision_sum / hits if hits else 0.0


def ndcg_at_k(ranking: list[RankedPair], labels: dict[tuple[str, str], str],
              k: int) -> float:
    picked = _top_k_labels(ranking, labels, k)
    gains = [GAINS[label] for label in picked]
    dcg = sum(g / math.log2(rank + 1) for rank, g in enumerate(gains, start=1))
    ideal = sum(g / math.log2(rank + 1)
                for rank, g in enumerate(sorted(gains, reverse=True), start=1))
    return dcg / ideal if ideal > 0 else 0.0


def read_labels_csv(path: str | Path) -> dict[tuple[str, str], str]:
    """Read a ``base_doc,target_doc,label`` file; '#' lines are comments."""
    path = Path(path)
    rows = [line for line in path.read_text(encoding="utf-8").splitlines()
            if line.strip() and not line.startswith("#")]
    reader = csv.DictReader(rows)
    expected = {"base_doc", "target_doc", "label"}
    if reader.fieldnames is None or set(reader.fieldnames) != expected:
        raise ParseError(f"{path}: label file must have columns {sorted(expected)}")
    labels = {}
    for row in reader:
        if row["label"] not in LABELS:
            raise ValidationError(f"{path}: unknown label {row['label']!r}")
        labels[(row["base_doc"], row["target_doc"])] = row["label"]
    return labels


# ---------------------------------------------------------------------------
# Mapping-level precision / recall / F1
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PRF:
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class GoldMapping:
    """Annotated entity correspondences, each side a set of spans."""

    pairs: tuple[SpanSets, ...]


def gold_mapping_from_dict(obj: dict) -> GoldMapping:
    if not isinstance(obj, dict) or not isinstance(obj.get("pairs"), list):
        raise ValidationError("gold mapping: top level must be an object with a 'pairs' list")
    pairs: list[SpanSets] = []
    for i, pair_obj in enumerate(obj["pairs"]):
        try:
            base_spans = pair_obj["base"]["spans"]
            target_spans = pair_obj["target"]["spans"]
        except (TypeError, KeyError):
            raise ValidationError(
                f"gold mapping: pair {i} must carry base.spans and target.spans") from None
        if not base_spans or not target_spans:
            raise ValidationError(f"gold mapping: pair {i} has an empty span list")
        pairs.append((frozenset(normalize_span(s) for s in base_spans),
                      frozenset(normalize_span(s) for s in target_spans)))

    for side, name in ((0, "base"), (1, "target")):
        for i in range(len(pairs)):
            for j in range(i + 1, len(pairs)):
                if pairs[i][side] & pairs[j][side]:
                    raise ValidationError(
                        f"gold mapping: pairs {i} and {j} share {name} spans (not injective)")
    return GoldMapping(pairs=tuple(pairs))


def load_gold_mapping(path: str | Path) -> GoldMapping:
    path = Path(path)
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: malformed JSON: {exc}") from exc
    return gold_mapping_from_dict(obj)


def mapping_span_pairs(mapping: Mapping, base: ClusteredDocument,
                       target: ClusteredDocument) -> list[SpanSets]:
    """Predicted pairs as normalized span sets, ready for gold resolution."""
    pairs = []
    for b_id, t_id in mapping.pairs:
        pairs.append((
            frozenset(normalize_span(s) for s in base.cluster(b_id).spans),
            frozenset(normalize_span(s) for s in target.cluster(t_id).spans),
        ))
    return pairs


def mapping_prf(predicted: list[SpanSets], gold: GoldMapping) -> PRF:
    """Score one predicted mapping against the gold pairs."""
    correct = 0
    matched_gold: set[int] = set()
    for base_spans, target_spans in predicted:
        for gi, (gold_base, gold_target) in enumerate(gold.pairs):
            if base_spans & gold_base and target_spans & gold_target:
                correct += 1
                matched_gold.add(gi)
                break
    precision = correct / len(predicted) if predicted else 0.0
    recall = len(matched_gold) / len(gold.pairs) if gold.pairs else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return PRF(precision=precision, recall=recall, f1=f1)


def best_mapping_prf(predictions: list[list[SpanSets]], gold: GoldMapping, k: int) -> PRF:
    """Best-F1 scoring among the top-k predicted mappings (ties: earlier rank)."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not predictions:
        return PRF(0.0, 0.0, 0.0)
    best = None
    for candidate in predictions[:k]:
        prf = mapping_prf(candidate, gold)
        if best is None or prf.f1 > best.f1:
            best = prf
    return best
