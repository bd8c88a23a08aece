"""rolemap: analogical mapping and mining over question-answer role extractions.

The library takes pre-extracted documents (sentences with (verb, question,
answer) records) plus an embedding table, and finds which entities of one text
play the roles that entities of another text play -- then ranks whole corpora
by how analogous each document pair is.

Typical pipeline::

    doc   = interchange.load_document("cell.json")
    emb   = interchange.load_embeddings("embeddings.jsonl")
    cfg   = config.EngineConfig()
    base  = mining.prepare_document(doc, emb, cfg)        # filter + cluster
    other = mining.prepare_document(doc2, emb, cfg)
    best  = mining.map_pair(base, other, emb, cfg)[0]     # score + beam search
"""

from . import (
    cli,
    config,
    entity_clustering,
    interchange,
    mapper,
    metrics,
    mining,
    qa_filter,
    similarity,
)

__version__ = "0.1.0"

__all__ = [
    "cli",
    "config",
    "entity_clustering",
    "interchange",
    "mapper",
    "metrics",
    "mining",
    "qa_filter",
    "similarity",
    "__version__",
]
