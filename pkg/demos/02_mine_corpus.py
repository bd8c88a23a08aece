"""Mine a small synthetic corpus and rank its document pairs.

Builds four tiny documents in memory: two describe the same pumping/filtering
process in different words (the planted analogy), two are unrelated fillers.
The planted pair should come out on top of the ranking.

    python demos/02_mine_corpus.py
"""

import numpy as np

from rolemap.config import EngineConfig
from rolemap.interchange import AnswerSpan, DocumentExtraction, EmbeddingTable, Sentence, SrlRecord
from rolemap.mining import mine, ranking_to_csv


def rec(verb, question, span):
    return SrlRecord(verb=verb, question=question, question_prob=0.9, question_wh="what",
                     answer=AnswerSpan(text=span, answer_prob=0.8, contains_verb=False,
                                       contains_noun=True, is_pronoun=False))


def make_doc(doc_id, sentences):
    return DocumentExtraction(doc_id=doc_id, prompt=None, sentences=tuple(
        Sentence(index=i, text=text, records=tuple(records))
        for i, (text, records) in enumerate(sentences)))


heart = make_doc("heart", [
    ("The heart pumps blood.",
     [rec("pump", "what pumps something?", "the heart"),
      rec("pump", "what does something pump?", "blood")]),
    ("Blood carries oxygen.",
     [rec("carry", "what carries something?", "blood"),
      rec("carry", "what does something carry?", "oxygen")]),
])
plant = make_doc("plant", [
    ("The station pushes water.",
     [rec("push", "what pushes something?", "the station"),
      rec("push", "what does something push?", "water")]),
    ("Water transports minerals.",
     [rec("transport", "what transports something?", "water"),
      rec("transport", "what does something transport?", "minerals")]),
])
moon = make_doc("moon", [
    ("The moon orbits the earth.",
     [rec("orbit", "what orbits something?", "the moon")]),
])
rust = make_doc("rust", [
    ("Rain rusts iron.",
     [rec("rust", "what rusts something?", "rain")]),
])

# Hand-build the embedding table: paraphrased questions share a plane at
# cosine 0.8 (above the 0.7 threshold), everything else is orthogonal or
# repelling.  A real corpus would get these vectors from a sentence encoder.
dim = 26
vectors: dict[str, np.ndarray] = {}
axis = 0


def fresh():
    global axis
    v = np.zeros(dim)
    v[axis] = 1.0
    axis += 1
    return v


for q_a, q_b in (("what pumps something?", "what pushes something?"),
                 ("what does something pump?", "what does something push?"),
                 ("what carries something?", "what transports something?"),
                 ("what does something carry?", "what does something transport?")):
    u, w = fresh(), fresh()
    vectors[q_a] = u
    vectors[q_b] = 0.8 * u + 0.6 * w
for q in ("what orbits something?", "what rusts something?"):
    vectors[q] = fresh()
for verb in ("pump", "push", "carry", "transport", "orbit", "rust"):
    vectors[verb] = fresh()
# Spans of one document at 120 degrees so they stay separate clusters.
triangle = [(1.0, 0.0), (-0.5, np.sqrt(3) / 2), (-0.5, -np.sqrt(3) / 2)]
for doc_spans in (["the heart", "blood", "oxygen"],
                  ["the station", "water", "minerals"],
                  ["the moon"], ["rain"]):
    for i, span in enumerate(doc_spans):
        v = np.zeros(dim)
        v[24], v[25] = triangle[i]
        vectors[span] = v

emb = EmbeddingTable(dimension=dim, vectors=vectors)

ranked = mine([heart, plant, moon, rust], emb, EngineConfig())
print(ranking_to_csv(ranked, {"engine": "demo", "mode": "fmq"}))

top = ranked[0]
print(f"planted pair ranks first: ({top.base_doc}, {top.target_doc}) "
      f"score = {top.mapping_size} mapped pairs x median {top.median_total:.2f} "
      f"= {top.analogy_score:.2f}")
