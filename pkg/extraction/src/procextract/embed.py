"""Deterministic lexical embeddings for questions, verbs and answer spans.

A drop-in, model-free stand-in for a sentence encoder with the geometry the
mapping engine needs:

* identical strings share one vector (cosine 1);
* overlapping phrasings of one entity ("the plasma membrane" /
  "plasma membrane") land well above the clustering threshold;
* unrelated strings land *below* it: every vector carries a small
  "identity" component from a centered one-hot simplex, so two strings with
  disjoint features have cosine exactly -w_id / (n - 1) < 0, i.e. distance
  strictly greater than 1.

Feature extraction is type-aware, keyed on surface shape: strings ending in
'?' are questions and use position-tagged tokens (so "what provides
something?" and "what does something provide?" stay distinct roles);
everything else uses determiner-stripped, de-pluralized content tokens.
Vectors are exact (a sorted vocabulary, no hashing), unit-normalized, and a
function of the exported string set alone, so exports are reproducible
byte for byte.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .lexicon import DETERMINERS, PRONOUNS, STOP_TOKENS, tokenize

LEXICAL_WEIGHT = np.sqrt(0.75)
IDENTITY_WEIGHT = 0.5


def _stem(token: str) -> str:
    if token.endswith("ies") and len(token) > 4:
        return token[:-3] + "y"
    if token.endswith(("shes", "ches", "xes", "zes", "oes", "sses")) and len(token) > 4:
        return token[:-2]
    if token.endswith("s") and not token.endswith("ss") and len(token) > 3:
        return token[:-1]
    return token


def features(text: str) -> list[str]:
    """Feature names for one string; question shape switches the scheme."""
    tokens = tokenize(text)
    if text.rstrip().endswith("?"):
        return [f"{i}:{t}" for i, t in enumerate(tokens)]
    content = [_stem(t) for t in tokens
               if t not in DETERMINERS and t not in STOP_TOKENS and t not in PRONOUNS]
    if not content:
        content = [_stem(t) for t in tokens]
    return sorted(set(content))


def build_vectors(strings: set[str]) -> tuple[int, dict[str, np.ndarray]]:
    """Unit-norm vectors over an exact feature vocabulary plus identity dims."""
    ordered = sorted(strings)
    n = len(ordered)
    if n == 0:
        return 1, {}

    feature_sets = {s: features(s) for s in ordered}
    vocabulary = sorted({f for fs in feature_sets.values() for f in fs})
    index = {f: i for i, f in enumerate(vocabulary)}
    dim = len(vocabulary) + n

    vectors: dict[str, np.ndarray] = {}
    for position, text in enumerate(ordered):
        v = np.zeros(dim)
        lexical = np.zeros(len(vocabulary))
        for f in feature_sets[text]:
            lexical[index[f]] = 1.0
        lexical /= np.linalg.norm(lexical)
        if n == 1:
            v[:len(vocabulary)] = lexical
        else:
            # Centered one-hot: pairwise cosine -1/(n-1) between identities.
            identity = np.full(n, -1.0 / n)
            identity[position] += 1.0
            identity /= np.linalg.norm(identity)
            v[:len(vocabulary)] = LEXICAL_WEIGHT * lexical
            v[len(vocabulary):] = IDENTITY_WEIGHT * identity
        vectors[text] = v / np.linalg.norm(v)
    return dim, vectors


def export_embeddings(strings: set[str], path: str | Path) -> None:
    """Write the embedding file: a dimension header, then one entry per string."""
    dim, vectors = build_vectors(set(strings))
    lines = [json.dumps({"dimension": dim})]
    for key in sorted(vectors):
        lines.append(json.dumps({"key": key, "vector": [float(x) for x in vectors[key]]},
                                ensure_ascii=False))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
