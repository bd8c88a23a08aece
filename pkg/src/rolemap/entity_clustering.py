"""Merging surface phrasings of one entity into clusters.

Different mentions of an entity ("the animal cell", "the cell", "cell") would
confuse an assignment between entities, so the distinct answer spans of a
filtered document are merged bottom-up: pairwise distance is 1 - cosine of the
span embeddings, and merging continues while the smallest inter-cluster
linkage distance is still within the configured threshold.

Determinism contract:

* spans are indexed by first appearance in document order, and a cluster is
  identified by its earliest member throughout the merge;
* equal-distance merge candidates are resolved toward the smallest
  (cluster_id, cluster_id) pair;
* final clusters are numbered by first appearance of their earliest member.

Clustering is per-document; base and target are never clustered together.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .interchange import DocumentExtraction, EmbeddingTable, SrlRecord

LINKAGES = ("average", "complete", "single")


@dataclass(frozen=True)
class ClusteringConfig:
    linkage_distance_threshold: float = 1.0
    linkage: str = "average"

    def __post_init__(self):
        if not self.linkage_distance_threshold > 0:
            raise ValueError("linkage_distance_threshold must be positive")
        if self.linkage not in LINKAGES:
            raise ValueError(f"linkage must be one of {LINKAGES}")


@dataclass(frozen=True)
class EntityCluster:
    """A set of answer spans treated as one entity."""

    cluster_id: int
    spans: tuple[str, ...]
    representative: str
    member_records: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class ClusteredDocument:
    document: DocumentExtraction
    clusters: tuple[EntityCluster, ...]

    def record_at(self, ref: tuple[int, int]) -> SrlRecord:
        return self.document.record_at(ref)

    def cluster(self, cluster_id: int) -> EntityCluster:
        for c in self.clusters:
            if c.cluster_id == cluster_id:
                return c
        raise KeyError(f"no cluster with id {cluster_id} in {self.document.doc_id!r}")


def _linkage_distance(dist: np.ndarray, members_a: list[int], members_b: list[int],
                      linkage: str) -> float:
    block = dist[np.ix_(members_a, members_b)]
    if linkage == "average":
        return float(block.mean())
    if linkage == "complete":
        return float(block.max())
    return float(block.min())


def agglomerate(dist: np.ndarray, threshold: float, linkage: str = "average") -> list[list[int]]:
    """Bottom-up clustering of indices 0..n-1 over a symmetric distance matrix.

    Merging stops once the minimum inter-cluster linkage distance exceeds the
    threshold (a pair exactly at the threshold still merges).  Returns the
    partition as lists of member indices, ordered by smallest member.
    """
    n = dist.shape[0]
    if dist.shape != (n, n):
        raise ValueError("distance matrix must be square")
    clusters: dict[int, list[int]] = {i: [i] for i in range(n)}
    while len(clusters) > 1:
        ids = sorted(clusters)
        best: tuple[float, int, int] | None = None
        for a in range(len(ids)):
            for b in range(a + 1, len(ids)):
                i, j = ids[a], ids[b]
                d = _linkage_distance(dist, clusters[i], clusters[j], linkage)
                if best is None or d < best[0] or (d == best[0] and (i, j) < best[1:]):
                    best = (d, i, j)
        if best[0] > threshold:
            break
        _, i, j = best
        clusters[i] = sorted(clusters[i] + clusters[j])
        del clusters[j]
    return [clusters[i] for i in sorted(clusters)]


def cluster_entities(doc: DocumentExtraction, emb: EmbeddingTable,
                     cfg: ClusteringConfig) -> list[EntityCluster]:
    """Cluster the distinct answer spans of an (already filtered) document.

    Clustering operates on distinct span strings; each record occurrence is
    carried back on the cluster that owns its answer text, so the partition is
    total and disjoint over the kept records.
    """
    span_order: list[str] = []
    seen: set[str] = set()
    for _, _, record in doc.iter_records():
        text = record.answer.text
        if text not in seen:
            seen.add(text)
            span_order.append(text)
    if not span_order:
        return []

    emb.require(set(span_order))
    vectors = np.stack([emb.vector(s) for s in span_order])
    dist = 1.0 - vectors @ vectors.T
    # Exact symmetry and a zero diagonal, so tie-breaking never depends on
    # which triangle a pair was read from.
    dist = np.triu(dist, 1)
    dist = dist + dist.T

    partition = agglomerate(dist, cfg.linkage_distance_threshold, cfg.linkage)

    span_to_cluster = {}
    for cluster_id, members in enumerate(partition):
        for idx in members:
            span_to_cluster[span_order[idx]] = cluster_id

    member_records: dict[int, list[tuple[int, int]]] = {i: [] for i in range(len(partition))}
    for sentence_index, position, record in doc.iter_records():
        member_records[span_to_cluster[record.answer.text]].append((sentence_index, position))

    clusters = []
    for cluster_id, members in enumerate(partition):
        spans = tuple(span_order[idx] for idx in members)
        representative = min(spans, key=lambda s: (len(s), s))
        clusters.append(EntityCluster(
            cluster_id=cluster_id,
            spans=spans,
            representative=representative,
            member_records=tuple(member_records[cluster_id]),
        ))
    return clusters


def cluster_document(doc: DocumentExtraction, emb: EmbeddingTable,
                     cfg: ClusteringConfig) -> ClusteredDocument:
    return ClusteredDocument(document=doc, clusters=tuple(cluster_entities(doc, emb, cfg)))


def format_clusters(clusters: list[EntityCluster] | tuple[EntityCluster, ...]) -> str:
    """Human-readable numbered dump, one cluster per line, spans quoted."""
    lines = []
    for cluster in clusters:
        spans = ", ".join(f"'{span}'" for span in cluster.spans)
        lines.append(f"{cluster.cluster_id + 1}) {spans}.")
    return "\n".join(lines)
