"""Corpus-scale analogy mining: rank every document pair.

True analogies are rare, while incidental pairs with one or two strong entity
matches are common, so the ranking score favors wide mappings over single
spikes: the number of mapped pairs times the median of their cell totals.
Each unordered document pair is scored once (the pipeline is symmetric up to
transposition), with the lexicographically smaller doc_id as base.

A failing pair is logged and ranked with score 0; one malformed document must
not abort a corpus run.
"""

from __future__ import annotations

import csv
import io
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

from .config import EngineConfig
from .entity_clustering import ClusteredDocument, cluster_document
from .interchange import DocumentExtraction, EmbeddingTable
from .mapper import Mapping, find_mappings
from .qa_filter import filter_document
from .similarity import apply_relation_bonus, score_pairs

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RankedPair:
    base_doc: str
    target_doc: str
    analogy_score: float
    mapping_size: int
    median_total: float


def median_total(mapping: Mapping) -> float:
    """Median of the mapping's cell totals; even counts average the middle two."""
    totals = sorted(cell.total for cell in mapping.cells)
    n = len(totals)
    if n == 0:
        return 0.0
    if n % 2 == 1:
        return totals[n // 2]
    return (totals[n // 2 - 1] + totals[n // 2]) / 2.0


def analogy_score(mapping: Mapping) -> float:
    return len(mapping) * median_total(mapping)


def prepare_document(doc: DocumentExtraction, emb: EmbeddingTable,
                     config: EngineConfig) -> ClusteredDocument:
    """Filter and cluster one document (the per-document half of the pipeline)."""
    filtered = filter_document(doc, config.filter).document
    return cluster_document(filtered, emb, config.clustering)


def map_pair(base: ClusteredDocument, target: ClusteredDocument, emb: EmbeddingTable,
             config: EngineConfig) -> list[Mapping]:
    """Score, apply relation bonuses and search mappings for one pair."""
    matrix = apply_relation_bonus(score_pairs(base, target, emb, config.similarity),
                                  config.similarity)
    return find_mappings(matrix, config.beam)


def mine(corpus: list[DocumentExtraction], emb: EmbeddingTable, config: EngineConfig,
         jobs: int = 1) -> list[RankedPair]:
    """Rank all unordered document pairs by analogy score, best first."""
    if len(corpus) < 2:
        raise ValueError(f"mining needs at least 2 documents, got {len(corpus)}")

    docs = sorted(corpus, key=lambda d: d.doc_id)
    prepared: dict[str, ClusteredDocument | Exception] = {}
    for doc in docs:
        try:
            prepared[doc.doc_id] = prepare_document(doc, emb, config)
        except Exception as exc:
            logger.warning("document %s failed preparation: %s", doc.doc_id, exc)
            prepared[doc.doc_id] = exc

    def score_one(pair: tuple[DocumentExtraction, DocumentExtraction]) -> RankedPair:
        base_doc, target_doc = pair
        try:
            base = prepared[base_doc.doc_id]
            target = prepared[target_doc.doc_id]
            if isinstance(base, Exception):
                raise base
            if isinstance(target, Exception):
                raise target
            top = map_pair(base, target, emb, config)[0]
            result = RankedPair(
                base_doc=base_doc.doc_id, target_doc=target_doc.doc_id,
                analogy_score=analogy_score(top), mapping_size=len(top),
                median_total=median_total(top))
            logger.info("scored pair (%s, %s): %.4f", result.base_doc,
                        result.target_doc, result.analogy_score)
            return result
        except Exception as exc:
            logger.warning("pair (%s, %s) failed, scoring 0: %s",
                           base_doc.doc_id, target_doc.doc_id, exc)
            return RankedPair(base_doc=base_doc.doc_id, target_doc=target_doc.doc_id,
                              analogy_score=0.0, mapping_size=0, median_total=0.0)

    pairs = list(combinations(docs, 2))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            ranked = list(pool.map(score_one, pairs))
    else:
        ranked = [score_one(pair) for pair in pairs]

    ranked.sort(key=lambda r: (-r.analogy_score, r.base_doc, r.target_doc))
    return ranked


def ranking_to_csv(ranked: list[RankedPair], metadata: dict[str, str]) -> str:
    """Serialize a ranking; the leading '#' line carries the run metadata."""
    buffer = io.StringIO()
    meta = " ".join(f"{key}={metadata[key]}" for key in sorted(metadata))
    buffer.write(f"# {meta}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["base_doc", "target_doc", "analogy_score", "mapping_size", "median_total"])
    for pair in ranked:
        writer.writerow([pair.base_doc, pair.target_doc, repr(pair.analogy_score),
                         pair.mapping_size, repr(pair.median_total)])
    return buffer.getvalue()


def write_ranking_csv(ranked: list[RankedPair], path: str | Path,
                      metadata: dict[str, str]) -> None:
    Path(path).write_text(ranking_to_csv(ranked, metadata), encoding="utf-8")


def read_ranking_csv(path: str | Path) -> list[RankedPair]:
    rows = [line for line in Path(path).read_text(encoding="utf-8").splitlines()
            if line.strip() and not line.startswith("#")]
    reader = csv.DictReader(rows)
    ranked = []
    for row in reader:
        ranked.append(RankedPair(
            base_doc=row["base_doc"], target_doc=row["target_doc"],
            analogy_score=float(row["analogy_score"]),
            mapping_size=int(row["mapping_size"]),
            median_total=float(row["median_total"])))
    return ranked
