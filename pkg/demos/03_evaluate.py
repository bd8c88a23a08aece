"""The two evaluation protocols on worked examples.

First the ranking metrics (P@k / AP@k / NDCG@k with gains 0..4 over the
not / sub / self / close / far labels), then mapping-level precision, recall
and F1 against an annotated gold mapping.

    python demos/03_evaluate.py
"""

from rolemap.metrics import (
    GoldMapping,
    average_precision_at_k,
    mapping_prf,
    ndcg_at_k,
    normalize_span,
    precision_at_k,
)
from rolemap.mining import RankedPair

# A ten-pair ranking with its (hypothetical) annotation: the top pair is a
# far analogy, rank 2 is a false positive, and so on.
labels_in_rank_order = ["far", "not", "self", "not", "close",
                        "sub", "not", "far", "not", "not"]
ranking = []
labels = {}
for i, label in enumerate(labels_in_rank_order):
    pair = RankedPair(base_doc=f"doc{i}", target_doc=f"doc{i + 10}",
                      analogy_score=float(10 - i), mapping_size=2, median_total=1.0)
    ranking.append(pair)
    labels[(pair.base_doc, pair.target_doc)] = label

print("k   P@k     AP@k    NDCG@k")
for k in (1, 3, 5, 10):
    print(f"{k:<3} {precision_at_k(ranking, labels, k):<7.4f} "
          f"{average_precision_at_k(ranking, labels, k):<7.4f} "
          f"{ndcg_at_k(ranking, labels, k):.4f}")

# Mapping-level evaluation: the annotator wrote entity names; a predicted
# cluster resolves to a gold entity when they share a span (case and
# whitespace insensitive).
gold = GoldMapping(pairs=(
    (frozenset({"the heart"}), frozenset({"the station"})),
    (frozenset({"blood"}), frozenset({"water"})),
    (frozenset({"oxygen"}), frozenset({"minerals"})),
))


def spanset(*texts):
    return frozenset(normalize_span(t) for t in texts)


predicted = [
    (spanset("The Heart"), spanset("the station")),   # correct despite casing
    (spanset("blood"), spanset("water")),             # correct
    (spanset("oxygen"), spanset("the pipes")),        # wrong target
]
prf = mapping_prf(predicted, gold)
print(f"\nmapping eval: precision {prf.precision:.3f} "
      f"recall {prf.recall:.3f} F1 {prf.f1:.3f}")
