"""Cluster-to-cluster similarity with relational bonuses.

Two entities are considered similar when the questions asked about them are
similar, never when their own names are: the engine is deliberately blind to
the entity spans themselves.  For a base cluster b and target cluster t the
base score is the sum of cosines between b's and t's associated question
embeddings, keeping only pairs at or above the question threshold (``fmq``
mode).  In ``fmv`` mode the verbs of the questions are compared instead,
against the lower verb threshold.

On top of the pairwise scores, a *complete relation* earns a bonus: when two
question matches, landing on two different base clusters and two different
target clusters, come from one base sentence and one target sentence and agree
on the verbs, the two participating cells each gain a constant alpha.  A
relation fires at most once per unique (base sentence, target sentence, base
verb, target verb, cluster pair, cluster pair) key, so repeated verbs cannot
inflate the bonus quadratically.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .entity_clustering import ClusteredDocument, EntityCluster
from .interchange import EmbeddingTable, cosine

MODE_FMQ = "fmq"
MODE_FMV = "fmv"
MODES = (MODE_FMQ, MODE_FMV)


@dataclass(frozen=True)
class SimilarityConfig:
    mode: str = MODE_FMQ
    question_cos_threshold: float = 0.7
    verb_cos_threshold: float = 0.5
    relation_bonus_alpha: float = 1.0
    dedupe_questions: bool = True
    # Strict variant: a complete relation additionally requires the base verb
    # and the target verb to be the same string.
    relation_bonus_same_verb: bool = False

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if not 0.0 <= self.question_cos_threshold <= 1.0:
            raise ValueError("question_cos_threshold must lie in [0, 1]")
        if not 0.0 <= self.verb_cos_threshold <= 1.0:
            raise ValueError("verb_cos_threshold must lie in [0, 1]")
        if self.relation_bonus_alpha < 0:
            raise ValueError("relation_bonus_alpha must be >= 0")

    @property
    def active_threshold(self) -> float:
        return self.question_cos_threshold if self.mode == MODE_FMQ else self.verb_cos_threshold


@dataclass(frozen=True)
class QuestionMatch:
    """One thresholded cosine between a base and a target record."""

    base_ref: tuple[int, int]
    target_ref: tuple[int, int]
    base_cluster: int
    target_cluster: int
    base_verb: str
    target_verb: str
    score: float


@dataclass(frozen=True)
class RelationPartner:
    """Why a cell earned a bonus: the other pair of the complete relation."""

    partner_base: int
    partner_target: int
    base_sentence: int
    target_sentence: int
    base_verb: str
    target_verb: str


@dataclass(frozen=True)
class SimilarityCell:
    base_cluster: int
    target_cluster: int
    base_score: float = 0.0
    bonus: float = 0.0
    matches: tuple[QuestionMatch, ...] = ()
    relation_partners: tuple[RelationPartner, ...] = ()

    @property
    def total(self) -> float:
        return self.base_score + self.bonus


@dataclass(frozen=True)
class SimilarityMatrix:
    base_ids: tuple[int, ...]
    target_ids: tuple[int, ...]
    cells: dict[tuple[int, int], SimilarityCell] = field(repr=False)

    def cell(self, base_id: int, target_id: int) -> SimilarityCell:
        return self.cells[(base_id, target_id)]

    def total(self, base_id: int, target_id: int) -> float:
        return self.cells[(base_id, target_id)].total

    def iter_cells(self):
        for base_id in self.base_ids:
            for target_id in self.target_ids:
                yield self.cells[(base_id, target_id)]

    @classmethod
    def from_totals(cls, totals: np.ndarray) -> "SimilarityMatrix":
        """Wrap a plain score array as a matrix of match-free cells."""
        totals = np.asarray(totals, dtype=np.float64)
        n, m = totals.shape
        cells = {
            (i, j): SimilarityCell(base_cluster=i, target_cluster=j,
                                   base_score=float(totals[i, j]))
            for i in range(n) for j in range(m)
        }
        return cls(base_ids=tuple(range(n)), target_ids=tuple(range(m)), cells=cells)


def _cluster_items(clustered: ClusteredDocument, cluster: EntityCluster,
                   cfg: SimilarityConfig) -> list[tuple[str, str, tuple[int, int]]]:
    """(compared key, verb, record ref) per member record, optionally deduped.

    In fmq mode the compared key is the question string, in fmv mode the verb.
    With deduplication on, each distinct key keeps its first record ref in
    document order, so repeating an identical question cannot masquerade as
    extra structure.
    """
    items: list[tuple[str, str, tuple[int, int]]] = []
    seen: set[str] = set()
    for ref in cluster.member_records:
        record = clustered.record_at(ref)
        key = record.question if cfg.mode == MODE_FMQ else record.verb
        if cfg.dedupe_questions:
            if key in seen:
                continue
            seen.add(key)
        items.append((key, record.verb, ref))
    return items


def score_pairs(base: ClusteredDocument, target: ClusteredDocument,
                emb: EmbeddingTable, cfg: SimilarityConfig) -> SimilarityMatrix:
    """Compute the full base-cluster x target-cluster score matrix."""
    base_items = {c.cluster_id: _cluster_items(base, c, cfg) for c in base.clusters}
    target_items = {c.cluster_id: _cluster_items(target, c, cfg) for c in target.clusters}

    required = {key for items in base_items.values() for key, _, _ in items}
    required |= {key for items in target_items.values() for key, _, _ in items}
    emb.require(required)

    threshold = cfg.active_threshold
    cells: dict[tuple[int, int], SimilarityCell] = {}
    for b in base.clusters:
        for t in target.clusters:
            score = 0.0
            matches = []
            for b_key, b_verb, b_ref in base_items[b.cluster_id]:
                b_vec = emb.vector(b_key)
                for t_key, t_verb, t_ref in target_items[t.cluster_id]:
                    sim = cosine(b_vec, emb.vector(t_key))
                    if sim >= threshold:
                        score += sim
                        matches.append(QuestionMatch(
                            base_ref=b_ref, target_ref=t_ref,
                            base_cluster=b.cluster_id, target_cluster=t.cluster_id,
                            base_verb=b_verb, target_verb=t_verb, score=sim))
            cells[(b.cluster_id, t.cluster_id)] = SimilarityCell(
                base_cluster=b.cluster_id, target_cluster=t.cluster_id,
                base_score=score, matches=tuple(matches))

    return SimilarityMatrix(
        base_ids=tuple(c.cluster_id for c in base.clusters),
        target_ids=tuple(c.cluster_id for c in target.clusters),
        cells=cells,
    )


def apply_relation_bonus(matrix: SimilarityMatrix, cfg: SimilarityConfig) -> SimilarityMatrix:
    """Add alpha to both cells of every complete relation, once per relation.

    Two matches form a complete relation when they share the base sentence,
    the target sentence, the base verb and the target verb, while landing on
    distinct base clusters and distinct target clusters.  Match pairs are
    scanned in canonical order, so when two relation instances collapse onto
    one dedupe key the first in canonical order wins.
    """
    all_matches = [m for cell in matrix.iter_cells() for m in cell.matches]
    all_matches.sort(key=lambda m: (m.base_cluster, m.target_cluster, m.base_ref, m.target_ref))

    fired: set[tuple] = set()
    bonus: dict[tuple[int, int], float] = {}
    partners: dict[tuple[int, int], list[RelationPartner]] = {}

    for i, m1 in enumerate(all_matches):
        for m2 in all_matches[i + 1:]:
            if m1.base_cluster == m2.base_cluster or m1.target_cluster == m2.target_cluster:
                continue
            if m1.base_ref[0] != m2.base_ref[0] or m1.target_ref[0] != m2.target_ref[0]:
                continue
            if m1.base_verb != m2.base_verb or m1.target_verb != m2.target_verb:
                continue
            if cfg.relation_bonus_same_verb and m1.base_verb != m1.target_verb:
                continue
            key = (m1.base_ref[0], m1.target_ref[0], m1.base_verb, m1.target_verb,
                   frozenset({m1.base_cluster, m2.base_cluster}),
                   frozenset({m1.target_cluster, m2.target_cluster}))
            if key in fired:
                continue
            fired.add(key)
            for receiver, partner in ((m1, m2), (m2, m1)):
                cell_key = (receiver.base_cluster, receiver.target_cluster)
                bonus[cell_key] = bonus.get(cell_key, 0.0) + cfg.relation_bonus_alpha
                partners.setdefault(cell_key, []).append(RelationPartner(
                    partner_base=partner.base_cluster, partner_target=partner.target_cluster,
                    base_sentence=receiver.base_ref[0], target_sentence=receiver.target_ref[0],
                    base_verb=receiver.base_verb, target_verb=receiver.target_verb))

    cells = dict(matrix.cells)
    for cell_key, amount in bonus.items():
        cells[cell_key] = replace(cells[cell_key], bonus=cells[cell_key].bonus + amount,
                                  relation_partners=tuple(partners[cell_key]))
    return replace(matrix, cells=cells)


def matrix_to_dict(matrix: SimilarityMatrix, base: ClusteredDocument,
                   target: ClusteredDocument) -> dict:
    """Debug form of the matrix: every nonzero cell with its justifications."""
    cells = []
    for cell in matrix.iter_cells():
        if cell.total == 0 and not cell.matches:
            continue
        cells.append({
            "base_cluster": cell.base_cluster,
            "target_cluster": cell.target_cluster,
            "base_score": cell.base_score,
            "bonus": cell.bonus,
            "total": cell.total,
            "matches": [
                {
                    "base_question": base.record_at(m.base_ref).question,
                    "target_question": target.record_at(m.target_ref).question,
                    "base_verb": m.base_verb,
                    "target_verb": m.target_verb,
                    "score": m.score,
                }
                for m in cell.matches
            ],
            "relation_partners": [
                {
                    "partner_base": p.partner_base,
                    "partner_target": p.partner_target,
                    "base_sentence": p.base_sentence,
                    "target_sentence": p.target_sentence,
                    "base_verb": p.base_verb,
                    "target_verb": p.target_verb,
                }
                for p in cell.relation_partners
            ],
        })
    return {
        "base_ids": list(matrix.base_ids),
        "target_ids": list(matrix.target_ids),
        "cells": cells,
    }
