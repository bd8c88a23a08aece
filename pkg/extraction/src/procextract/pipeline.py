"""End-to-end extraction: raw text in, interchange files out.

One JSON document per input text (pronoun-resolved sentences with their
question-answer records) and one embedding file per corpus, covering every
question, verb and answer span that was emitted -- a superset of what any
downstream filter can keep, so the coverage contract holds under any
configuration.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path

from .embed import export_embeddings
from .pronouns import RawDocument, resolve_pronouns
from .srl import extract_srl

logger = logging.getLogger(__name__)


def extract_document(raw: RawDocument) -> dict:
    """Run pronoun resolution and record extraction for one document."""
    sentences = []
    for index, text in enumerate(resolve_pronouns(raw)):
        records = extract_srl(text)
        sentences.append({"index": index, "text": text, "records": records})
    return {"doc_id": raw.doc_id, "prompt": raw.prompt, "sentences": sentences}


def embedding_keys(document: dict) -> set[str]:
    keys: set[str] = set()
    for sentence in document["sentences"]:
        for record in sentence["records"]:
            keys.add(record["question"])
            keys.add(record["verb"])
            keys.add(record["answer"]["text"])
    return keys


def read_raw_jsonl(path: str | Path) -> list[RawDocument]:
    """One raw document per line: {"doc_id": ..., "prompt": ..., "text": ...}."""
    docs = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        obj = json.loads(line)
        try:
            docs.append(RawDocument(doc_id=obj["doc_id"], prompt=obj.get("prompt"),
                                    text=obj["text"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"{path}:{lineno}: bad raw document: {exc}") from None
    return docs


def run_pipeline(raw_docs: list[RawDocument], out_dir: str | Path,
                 emb_path: str | Path) -> list[Path]:
    """Extract every document and export one shared embedding file."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    written = []
    keys: set[str] = set()
    for raw in raw_docs:
        document = extract_document(raw)
        keys |= embedding_keys(document)
        path = out_dir / f"{raw.doc_id}.json"
        path.write_text(json.dumps(document, ensure_ascii=False) + "\n", encoding="utf-8")
        written.append(path)
        logger.info("extracted %s: %d sentences, %d records", raw.doc_id,
                    len(document["sentences"]),
                    sum(len(s["records"]) for s in document["sentences"]))

    export_embeddings(keys, emb_path)
    return written
