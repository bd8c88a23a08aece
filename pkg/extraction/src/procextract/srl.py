"""Rule-based question-answer role extraction.

A deterministic stand-in for a learned question generator: each sentence
contributes records for its first non-auxiliary verb, asking who performs
the action (the noun phrase before the verb) and what it is performed on
(the noun phrase after it).  Noun-phrase answers are emitted twice when a
determiner can be stripped ("the mitochondria" / "mitochondria"), mirroring
the span variants a learned extractor produces.  Sentences with no
recognizable clause yield no records, with a log line.

Probabilities are fixed constants: this extractor has no uncertainty model,
and the values sit safely above the downstream filter thresholds.
"""

from __future__ import annotations

import logging

from .lexicon import (
    AUXILIARIES,
    DETERMINERS,
    PRONOUNS,
    STOP_TOKENS,
    is_verb,
    strip_determiner,
    third_person,
    tokenize,
    verb_lemma,
)
from .pronouns import noun_phrase_at

logger = logging.getLogger(__name__)

SUBJECT_QUESTION_PROB = 0.9
OBJECT_QUESTION_PROB = 0.85
ANSWER_PROB = 0.8
ANSWER_VARIANT_PROB = 0.6


def flag_answer(text: str) -> tuple[bool, bool, bool]:
    """(contains_verb, contains_noun, is_pronoun) for an answer span.

    Unknown content words count as nouns; a span is a pronoun only when it is
    exactly one pronoun token.
    """
    tokens = tokenize(text)
    contains_verb = any(is_verb(t) for t in tokens)
    contains_noun = any(
        t not in DETERMINERS and t not in STOP_TOKENS and t not in PRONOUNS
        and not is_verb(t)
        for t in tokens)
    is_pronoun = len(tokens) == 1 and tokens[0] in PRONOUNS
    return contains_verb, contains_noun, is_pronoun


def _main_verb(tokens: list[str]) -> tuple[int, str] | None:
    """Index and lemma of the first non-auxiliary verb; auxiliary fallback."""
    aux = None
    for i, token in enumerate(tokens):
        if not is_verb(token):
            continue
        if token in AUXILIARIES:
            if aux is None:
                aux = (i, verb_lemma(token))
            continue
        return i, verb_lemma(token)
    return aux


def _answer_record(verb: str, question: str, q_prob: float,
                   phrase: list[str]) -> list[dict]:
    variants = [(phrase, ANSWER_PROB)]
    stripped = strip_determiner(phrase)
    if stripped and stripped != phrase:
        variants.append((stripped, ANSWER_VARIANT_PROB))
    records = []
    for tokens, a_prob in variants:
        text = " ".join(tokens)
        contains_verb, contains_noun, is_pronoun = flag_answer(text)
        records.append({
            "verb": verb,
            "question": question,
            "question_prob": q_prob,
            "question_wh": "what",
            "answer": {
                "text": text,
                "answer_prob": a_prob,
                "contains_verb": contains_verb,
                "contains_noun": contains_noun,
                "is_pronoun": is_pronoun,
            },
        })
    return records


def extract_srl(sentence: str) -> list[dict]:
    """Question-answer records for one (pronoun-resolved) sentence."""
    tokens = tokenize(sentence)
    found = _main_verb(tokens)
    if found is None:
        if tokens:
            logger.info("no clause pattern found in %r, emitting no records", sentence)
        return []
    verb_index, lemma = found

    records: list[dict] = []
    subject = None
    for start in range(verb_index):
        candidate = noun_phrase_at(tokens[:verb_index], start)
        if candidate:
            subject = candidate
            break
    if subject:
        question = f"what {third_person(lemma)} something?"
        records.extend(_answer_record(lemma, question, SUBJECT_QUESTION_PROB, subject))

    obj = noun_phrase_at(tokens, verb_index + 1)
    if obj:
        question = f"what does something {lemma}?"
        records.extend(_answer_record(lemma, question, OBJECT_QUESTION_PROB, obj))

    if not records:
        logger.info("no noun phrases around verb %r in %r", lemma, sentence)
    return records
