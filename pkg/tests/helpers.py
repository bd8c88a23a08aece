"""Builders shared across the test suite."""

from __future__ import annotations

import numpy as np

from rolemap.interchange import (
    AnswerSpan,
    DocumentExtraction,
    EmbeddingTable,
    Sentence,
    SrlRecord,
    WH_WORDS,
)


def answer(text: str, prob: float = 0.8, verb: bool = False, noun: bool = True,
           pronoun: bool = False) -> AnswerSpan:
    return AnswerSpan(text=text, answer_prob=prob, contains_verb=verb,
                      contains_noun=noun, is_pronoun=pronoun)


def record(verb: str, question: str, ans: AnswerSpan | str,
           q_prob: float = 0.9, wh: str | None = None) -> SrlRecord:
    if isinstance(ans, str):
        ans = answer(ans)
    if wh is None:
        head = question.split()[0].strip("?,.!").lower()
        wh = head if head in WH_WORDS[:7] else "other"
    return SrlRecord(verb=verb, question=question, question_prob=q_prob,
                     question_wh=wh, answer=ans)


def doc(doc_id: str, sentences: list[tuple[str, list[SrlRecord]]],
        prompt: str | None = None) -> DocumentExtraction:
    return DocumentExtraction(
        doc_id=doc_id,
        prompt=prompt,
        sentences=tuple(
            Sentence(index=i, text=text, records=tuple(records))
            for i, (text, records) in enumerate(sentences)
        ),
    )


def table(vectors: dict[str, list[float] | np.ndarray], normalize: bool = False) -> EmbeddingTable:
    """Embedding table from raw vectors; set normalize=True for convenience vectors."""
    prepared: dict[str, np.ndarray] = {}
    dimension = None
    for key, vec in vectors.items():
        arr = np.asarray(vec, dtype=np.float64)
        if normalize:
            arr = arr / np.linalg.norm(arr)
        if dimension is None:
            dimension = arr.size
        assert arr.size == dimension, f"inconsistent dimensions in test table ({key})"
        arr.setflags(write=False)
        prepared[key] = arr
    return EmbeddingTable(dimension=dimension or 0, vectors=prepared)


def random_pair_fixture(rng: np.random.Generator, dim: int = 12):
    """A random filtered-and-clustered document pair with correlated questions.

    Question and verb vectors are drawn around a few anchor directions shared
    by both sides, so cross-document cosines land on both sides of the
    0.7 / 0.5 thresholds.  The two documents use disjoint string pools, which
    keeps every cosine continuous -- score ties have probability zero, so
    transposition tests can demand exact pair-set inversion.
    """
    from rolemap.entity_clustering import ClusteringConfig, cluster_document
    from rolemap.qa_filter import FilterConfig, filter_document

    questions = {"base": [f"what q{i}s something?" for i in range(8)],
                 "target": [f"what p{i}s something?" for i in range(8)]}
    verbs = {"base": [f"bv{i}" for i in range(5)],
             "target": [f"tv{i}" for i in range(5)]}
    spans = {"base": [f"entity b{i}" for i in range(6)],
             "target": [f"entity t{i}" for i in range(6)]}

    anchors = rng.normal(size=(3, dim))
    vectors: dict[str, np.ndarray] = {}
    for side in ("base", "target"):
        for i, q in enumerate(questions[side]):
            v = anchors[i % 3] + 0.6 * rng.normal(size=dim)
            vectors[q] = v / np.linalg.norm(v)
        for i, verb in enumerate(verbs[side]):
            v = anchors[i % 3] + 0.8 * rng.normal(size=dim)
            vectors[verb] = v / np.linalg.norm(v)
        for s in spans[side]:
            v = rng.normal(size=dim)
            vectors[s] = v / np.linalg.norm(v)
    emb = table(vectors)

    def random_doc(doc_id: str, side: str) -> DocumentExtraction:
        sentences = []
        for _ in range(int(rng.integers(2, 5))):
            records = [
                record(str(rng.choice(verbs[side])), str(rng.choice(questions[side])),
                       answer(str(rng.choice(spans[side])),
                              prob=float(rng.uniform(0.3, 1.0))),
                       q_prob=float(rng.uniform(0.3, 1.0)))
                for _ in range(int(rng.integers(1, 5)))
            ]
            sentences.append(("Synthetic sentence.", records))
        return doc(doc_id, sentences)

    cfg_filter, cfg_cluster = FilterConfig(), ClusteringConfig()

    def prepare(document):
        return cluster_document(filter_document(document, cfg_filter).document,
                                emb, cfg_cluster)

    return prepare(random_doc("base", "base")), prepare(random_doc("target", "target")), emb
