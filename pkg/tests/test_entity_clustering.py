"""Agglomerative entity clustering against hand-traced oracles.

TRACE_CASES freezes the expected partition of eleven small distance matrices
(up to 6 points), each derived by walking the agglomerative procedure by hand:
repeatedly merge the closest pair of clusters (ties to the smallest id pair,
ids being the smallest member index) while the linkage distance stays within
the threshold.  The traces are spelled out in comments so they can be
re-audited without running anything.
"""

import numpy as np
import pytest

from rolemap.entity_clustering import (
    ClusteringConfig,
    agglomerate,
    cluster_entities,
    format_clusters,
)
from rolemap.interchange import MissingKeyError

from helpers import doc, record, table


def matrix(n, entries):
    dist = np.zeros((n, n))
    for (i, j), value in entries.items():
        dist[i, j] = value
        dist[j, i] = value
    return dist


# Shared 5-point matrix for cases 4-6:
#   d01=.5 d02=.7 d03=1.3 d04=1.2 d12=.4 d13=1.1 d14=1.3 d23=1.2 d24=1.25 d34=.9
FIVE = matrix(5, {(0, 1): 0.5, (0, 2): 0.7, (0, 3): 1.3, (0, 4): 1.2,
                  (1, 2): 0.4, (1, 3): 1.1, (1, 4): 1.3,
                  (2, 3): 1.2, (2, 4): 1.25, (3, 4): 0.9})

# Chain 0-1-2-3-4 with links 0.5, everything else 2.0.
CHAIN = matrix(5, {(0, 1): 0.5, (1, 2): 0.5, (2, 3): 0.5, (3, 4): 0.5,
                   (0, 2): 2.0, (0, 3): 2.0, (0, 4): 2.0,
                   (1, 3): 2.0, (1, 4): 2.0, (2, 4): 2.0})

TRACE_CASES = [
    # 1. Two identical points: merge at 0, done.
    (matrix(2, {(0, 1): 0.0}), 1.0, "average", [[0, 1]]),
    # 2. Single point: nothing to merge.
    (matrix(1, {}), 1.0, "average", [[0]]),
    # 3. merge (0,1)@0.2; d({01},2)=avg(1.5,1.4)=1.45>1 stop.
    (matrix(3, {(0, 1): 0.2, (0, 2): 1.5, (1, 2): 1.4}), 1.0, "average",
     [[0, 1], [2]]),
    # 4. FIVE, average, 1.0: (1,2)@.4; (0,{12})@avg(.5,.7)=.6;
    #    (3,4)@.9; d({012},{34})=(1.3+1.2+1.1+1.3+1.2+1.25)/6=1.225>1 stop.
    (FIVE, 1.0, "average", [[0, 1, 2], [3, 4]]),
    # 5. FIVE, average, 1.25: continues past 1.225 -> everything merges.
    (FIVE, 1.25, "average", [[0, 1, 2, 3, 4]]),
    # 6. FIVE, complete, 1.25: (1,2)@.4; (0,{12})@max(.5,.7)=.7; (3,4)@.9;
    #    d({012},{34})=max=1.3>1.25 stop.
    (FIVE, 1.25, "complete", [[0, 1, 2], [3, 4]]),
    # 7. Chain matrix, single, 0.5: successive 0.5 links absorb the chain:
    #    (0,1)@.5; ({01},2)@min(2,.5)=.5; ({012},3)@.5; ({0123},4)@.5.
    (CHAIN, 0.5, "single", [[0, 1, 2, 3, 4]]),
    # 8. Chain matrix, complete, 0.5: (0,1)@.5 then (2,3)@.5 (smallest id
    #    pair among equal candidates); every remaining max-linkage is 2.
    (CHAIN, 0.5, "complete", [[0, 1], [2, 3], [4]]),
    # 9. Two tight pairs far apart: (0,1)@.1, (2,3)@.2, cross 1.8 > 1 stop.
    (matrix(4, {(0, 1): 0.1, (2, 3): 0.2, (0, 2): 1.8, (0, 3): 1.8,
                (1, 2): 1.8, (1, 3): 1.8}), 1.0, "average",
     [[0, 1], [2, 3]]),
    # 10. Tie at 0.4 between (0,1) and (1,2): (0,1) wins by id pair;
    #     then d({01},2)=avg(1.2,.4)=.8<=1 merges everything.
    (matrix(3, {(0, 1): 0.4, (1, 2): 0.4, (0, 2): 1.2}), 1.0, "average",
     [[0, 1, 2]]),
    # 11. Same tie under complete linkage: d({01},2)=max(1.2,.4)=1.2>1 stop.
    (matrix(3, {(0, 1): 0.4, (1, 2): 0.4, (0, 2): 1.2}), 1.0, "complete",
     [[0, 1], [2]]),
]


class TestAgglomerateTraces:

    @pytest.mark.parametrize("dist,threshold,linkage,expected",
                             TRACE_CASES, ids=[f"case{i + 1}" for i in range(len(TRACE_CASES))])
    def test_partition_matches_manual_trace(self, dist, threshold, linkage, expected):
        assert agglomerate(dist, threshold, linkage) == expected

    def test_six_point_matrix(self):
        # (0,5)@.1; (1,2)@.3; d({12},3)=avg(.5,.6)=.55; remaining linkages:
        # d({05},{123})=avg(1.2,1.3,1.1, 1.4,1.2,1.3)=1.25, d({05},4)=avg(1.5,1.6)=1.55,
        # d({123},4)=avg(1.2,1.4,1.3)=1.3 -> stop at 1.0.
        dist = matrix(6, {(0, 5): 0.1, (1, 2): 0.3, (1, 3): 0.5, (2, 3): 0.6,
                          (0, 1): 1.2, (0, 2): 1.3, (0, 3): 1.1, (0, 4): 1.5,
                          (1, 4): 1.2, (1, 5): 1.4, (2, 4): 1.4, (2, 5): 1.2,
                          (3, 4): 1.3, (3, 5): 1.3, (4, 5): 1.6})
        assert agglomerate(dist, 1.0, "average") == [[0, 5], [1, 2, 3], [4]]


class TestAgglomerateProperties:

    def random_distance(self, rng, n):
        raw = rng.uniform(0.0, 2.0, size=(n, n))
        dist = np.triu(raw, 1)
        return dist + dist.T

    def test_threshold_monotonicity_100_instances(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            n = int(rng.integers(2, 8))
            dist = self.random_distance(rng, n)
            thresholds = sorted(rng.uniform(0.0, 2.0, size=4))
            counts = [len(agglomerate(dist, t, "average")) for t in thresholds]
            assert counts == sorted(counts, reverse=True)

    def test_partition_property(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            n = int(rng.integers(1, 8))
            dist = self.random_distance(rng, n)
            partition = agglomerate(dist, 1.0, "average")
            members = sorted(i for cluster in partition for i in cluster)
            assert members == list(range(n))

    def test_agrees_with_scipy_on_tie_free_matrices(self):
        # Independent implementation check; random matrices are tie-free, so
        # differing tie-break rules cannot change the partition.
        from scipy.cluster.hierarchy import fcluster, linkage as scipy_linkage
        from scipy.spatial.distance import squareform

        rng = np.random.default_rng(11)
        for _ in range(60):
            n = int(rng.integers(2, 9))
            dist = self.random_distance(rng, n)
            threshold = float(rng.uniform(0.1, 1.9))
            for method in ("average", "complete", "single"):
                ours = {frozenset(c) for c in agglomerate(dist, threshold, method)}
                labels = fcluster(scipy_linkage(squareform(dist), method=method),
                                  t=threshold, criterion="distance")
                theirs = {frozenset(np.flatnonzero(labels == lab).tolist())
                          for lab in set(labels)}
                assert ours == theirs


class TestClusterEntities:

    def spans_doc(self):
        return doc("d", [
            ("The plasma membrane controls movement.", [
                record("control", "what controls something?", "the plasma membrane"),
            ]),
            ("Plasma membrane is selective.", [
                record("select", "what selects something?", "plasma membrane"),
            ]),
            ("Channels open.", [
                record("open", "what opens?", "channels"),
            ]),
        ])

    def spans_table(self):
        return table({
            "the plasma membrane": [1.0, 0.0, 0.0],
            "plasma membrane": [1.0, 0.0, 0.0],
            "channels": [-1.0, 0.0, 0.0],
        })

    def test_identical_phrasings_merge_with_shortest_representative(self):
        clusters = cluster_entities(self.spans_doc(), self.spans_table(), ClusteringConfig())
        assert [c.spans for c in clusters] == [
            ("the plasma membrane", "plasma membrane"), ("channels",)]
        assert clusters[0].representative == "plasma membrane"
        assert clusters[0].member_records == ((0, 0), (1, 0))

    def test_singleton_cluster(self):
        clusters = cluster_entities(self.spans_doc(), self.spans_table(), ClusteringConfig())
        assert clusters[1].spans == ("channels",)
        assert clusters[1].representative == "channels"

    def test_representative_tie_is_lexicographic(self):
        d = doc("d", [("S.", [record("use", "what uses something?", "bb"),
                              record("use", "what does something use?", "aa")])])
        emb = table({"aa": [1.0, 0.0], "bb": [1.0, 0.0]})
        clusters = cluster_entities(d, emb, ClusteringConfig())
        assert len(clusters) == 1
        assert clusters[0].representative == "aa"

    def test_missing_embedding_key(self):
        emb = table({"the plasma membrane": [1.0, 0.0, 0.0],
                     "plasma membrane": [1.0, 0.0, 0.0]})
        with pytest.raises(MissingKeyError, match="channels"):
            cluster_entities(self.spans_doc(), emb, ClusteringConfig())

    def test_empty_document_clusters_to_nothing(self):
        assert cluster_entities(doc("d", [("S.", [])]), self.spans_table(),
                                ClusteringConfig()) == []

    def test_tiny_threshold_keeps_non_duplicates_apart(self):
        emb = table({
            "a": [1.0, 0.0, 0.0], "b": [1.0, 0.0, 0.0],  # exact duplicates
            "c": [0.0, 1.0, 0.0],
        })
        d = doc("d", [("S.", [record("use", "what uses something?", s)
                              for s in ("a", "b", "c")])])
        clusters = cluster_entities(d, emb, ClusteringConfig(linkage_distance_threshold=1e-9))
        assert [c.spans for c in clusters] == [("a", "b"), ("c",)]

    def test_format_clusters_shape(self):
        clusters = cluster_entities(self.spans_doc(), self.spans_table(), ClusteringConfig())
        text = format_clusters(clusters)
        assert text.splitlines() == [
            "1) 'the plasma membrane', 'plasma membrane'.",
            "2) 'channels'.",
        ]

    def test_config_validation(self):
        with pytest.raises(ValueError):
            ClusteringConfig(linkage_distance_threshold=0.0)
        with pytest.raises(ValueError):
            ClusteringConfig(linkage="ward")
