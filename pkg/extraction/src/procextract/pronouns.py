"""Sentence chunking and heuristic pronoun replacement.

A replaceable pronoun is resolved to the subject noun phrase of the nearest
preceding sentence that has one, forming a mention cluster of that phrase's
surface variants (with and without determiner) plus the pronoun.  The pronoun
is then replaced in the surface text by the shortest cluster string that is
neither a pronoun nor a verb.  Pronouns with no usable antecedent (e.g. in
the first sentence) are left in place with a logged warning; the filter
downstream drops their records anyway.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass

from .lexicon import (
    DETERMINERS,
    PRONOUNS,
    REPLACEABLE_PRONOUNS,
    STOP_TOKENS,
    is_verb,
    strip_determiner,
    token_spans,
)

logger = logging.getLogger(__name__)

_SENTENCE_RE = re.compile(r"[^.!?]+[.!?]?")


@dataclass(frozen=True)
class RawDocument:
    doc_id: str
    prompt: str | None
    text: str

    def __post_init__(self):
        if not self.doc_id:
            raise ValueError("doc_id must be non-empty")
        if not self.text or not self.text.strip():
            raise ValueError(f"document {self.doc_id!r} has empty text")


def chunk_sentences(text: str) -> list[str]:
    return [m.group(0).strip() for m in _SENTENCE_RE.finditer(text) if m.group(0).strip()]


def noun_phrase_at(tokens: list[str], start: int) -> list[str] | None:
    """Greedy noun phrase starting at ``start``: optional determiners, then
    content tokens, continuing across a single 'of' attachment."""
    i = start
    while i < len(tokens) and tokens[i] in DETERMINERS:
        i += 1
    head = []
    while i < len(tokens):
        token = tokens[i]
        if token in STOP_TOKENS or token in PRONOUNS or token in DETERMINERS or is_verb(token):
            break
        head.append(token)
        i += 1
    if not head:
        return None
    phrase = tokens[start:i]
    if i < len(tokens) and tokens[i] == "of":
        tail = noun_phrase_at(tokens, i + 1)
        if tail:
            phrase = phrase + ["of"] + tail
    return phrase


def subject_phrase(sentence: str) -> list[str] | None:
    """The first noun phrase of a sentence (our stand-in for its subject)."""
    tokens = [t for t, _, _ in token_spans(sentence)]
    for start, token in enumerate(tokens):
        if token in PRONOUNS or token in STOP_TOKENS or is_verb(token):
            continue
        phrase = noun_phrase_at(tokens, start)
        if phrase:
            return phrase
    return None


def representative(cluster: list[str]) -> str | None:
    """Shortest cluster string that is neither a pronoun nor a verb."""
    candidates = [s for s in cluster
                  if s not in PRONOUNS and not (len(s.split()) == 1 and is_verb(s))]
    if not candidates:
        return None
    return min(candidates, key=lambda s: (len(s), s))


def resolve_pronouns(doc: RawDocument) -> list[str]:
    """Chunk the text and replace pronouns by their cluster representative."""
    sentences = chunk_sentences(doc.text)
    resolved: list[str] = []
    for index, sentence in enumerate(sentences):
        pieces: list[str] = []
        cursor = 0
        for token, start, end in token_spans(sentence):
            if token not in REPLACEABLE_PRONOUNS:
                continue
            antecedent = None
            for prev in range(index - 1, -1, -1):
                antecedent = subject_phrase(resolved[prev])
                if antecedent:
                    break
            cluster = [token]
            if antecedent:
                cluster.append(" ".join(antecedent))
                stripped = strip_determiner(antecedent)
                if stripped and stripped != antecedent:
                    cluster.append(" ".join(stripped))
            chosen = representative(cluster)
            if chosen is None:
                logger.warning("document %s, sentence %d: pronoun %r has no "
                               "non-pronoun antecedent, leaving it unchanged",
                               doc.doc_id, index, token)
                continue
            pieces.append(sentence[cursor:start])
            pieces.append(chosen)
            cursor = end
        pieces.append(sentence[cursor:])
        resolved.append("".join(pieces))
    return resolved
