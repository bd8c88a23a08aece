"""Raw text to finished analogy, end to end.

Extracts the bundled cell/factory paragraphs into interchange files, then
hands them to the mapping engine CLI.

    python demos/extract_and_map.py
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

from procextract.cli import main

RAW = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "raw_cell_factory.jsonl"

workdir = Path(tempfile.mkdtemp(prefix="procextract-demo-"))
docs = workdir / "docs"
emb = workdir / "embeddings.jsonl"

# Stage 1: extraction (pronoun replacement, record generation, embeddings).
assert main(["extract", "--in", str(RAW), "--out-dir", str(docs), "--emb", str(emb)]) == 0

document = json.loads((docs / "animal_cell.json").read_text())
print("extracted sentences:")
for sentence in document["sentences"]:
    print(f"  [{sentence['index']}] {sentence['text']}  ({len(sentence['records'])} records)")

# Stage 2: the engine consumes the files through its own CLI.
mapping_path = workdir / "mapping.json"
result = subprocess.run(
    [sys.executable, "-m", "rolemap.cli", "map", str(docs / "animal_cell.json"),
     str(docs / "factory.json"), "--embeddings", str(emb), "--out", str(mapping_path)],
    capture_output=True, text=True)
assert result.returncode == 0, result.stderr

top = json.loads(mapping_path.read_text())["mappings"][0]
print(f"\ntop mapping (score {top['score']:.1f}):")
for pair in top["pairs"]:
    print(f"  {pair['base']['spans'][0]!r} -> {pair['target']['spans'][0]!r} "
          f"(total {pair['total']:.1f})")
print(f"\nartifacts in {workdir}")
