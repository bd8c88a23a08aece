"""Walk through the mapping pipeline on the cell/factory pair, stage by stage.

Run from the repository root:

    python demos/01_map_documents.py
"""

from pathlib import Path

from rolemap.config import EngineConfig
from rolemap.entity_clustering import cluster_document, format_clusters
from rolemap.interchange import document_embedding_keys, load_document, load_embeddings
from rolemap.mapper import find_mappings, render_mapping
from rolemap.qa_filter import filter_document
from rolemap.similarity import apply_relation_bonus, score_pairs

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "cell_factory"

config = EngineConfig()  # the published defaults

# Stage 0: load the interchange files. The documents arrive with their
# (verb, question, answer) records already extracted; the engine itself never
# looks at raw text.
base_doc = load_document(FIXTURES / "animal_cell.json")
target_doc = load_document(FIXTURES / "factory.json")

# Stage 1: drop records the similarity engine should never see (wrong
# wh-word, "be" verbs, low-probability extractions, non-entity answers).
base_filtered = filter_document(base_doc, config.filter)
target_filtered = filter_document(target_doc, config.filter)
print(f"filter: kept {sum(len(s.records) for s in base_filtered.document.sentences)} "
      f"base records, rejected {len(base_filtered.rejections)}:")
for rejection in base_filtered.rejections:
    print(f"  sentence {rejection.sentence_index}, record {rejection.record_position}: "
          f"{rejection.reason}")

# The embedding table must cover every surviving question, verb and answer.
required = document_embedding_keys(base_filtered.document) \
    | document_embedding_keys(target_filtered.document)
emb = load_embeddings(FIXTURES / "embeddings.jsonl", required)

# Stage 2: merge alternative phrasings of one entity.
base = cluster_document(base_filtered.document, emb, config.clustering)
target = cluster_document(target_filtered.document, emb, config.clustering)
print("\nbase entities:")
print(format_clusters(base.clusters))

# Stage 3: score every cluster pair by its shared question roles, then add
# the bonus for complete relations (two matches from one sentence pair that
# agree on the verbs).
matrix = apply_relation_bonus(score_pairs(base, target, emb, config.similarity),
                              config.similarity)
print("\nstrongest cells:")
cells = sorted(matrix.iter_cells(), key=lambda c: -c.total)[:5]
for cell in cells:
    b = base.cluster(cell.base_cluster).representative
    t = target.cluster(cell.target_cluster).representative
    print(f"  {b!r} ~ {t!r}: questions {cell.base_score:.1f} + bonus {cell.bonus:.1f}")

# Stage 4: beam search for the best consistent assignment.
top = find_mappings(matrix, config.beam)[0]
print(f"\ntop mapping (score {top.score:.1f}):")
for (b_id, t_id), cell in zip(top.pairs, top.cells):
    b = base.cluster(b_id).representative
    t = target.cluster(t_id).representative
    questions = {base.record_at(m.base_ref).question for m in cell.matches}
    print(f"  {b!r} -> {t!r}  (total {cell.total:.1f}, via {sorted(questions)})")

# The same mapping as a graph, ready for graphviz.
out = Path("/tmp/cell_factory.dot")
out.write_text(render_mapping(top, base, target))
print(f"\nwrote {out} (render with: dot -Tpng {out} -o mapping.png)")
