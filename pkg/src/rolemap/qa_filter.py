"""Rule-based filtering of raw question-answer records.

A record survives only if all of the following hold, checked in this fixed
order (the first failing criterion becomes the logged rejection reason):

1. ``question_prob`` strictly above the question threshold;
2. ``answer_prob`` strictly above the answer threshold;
3. the question's wh-word is whitelisted (default: what / who / which --
   rejecting where, when, why, how and anything else);
4. the verb is not banned (default ban: "be", which signals nothing about
   the role an entity plays);
5. the answer contains no verb;
6. the answer contains a noun;
7. the answer is not a pronoun.

Thresholds are exclusive: a probability exactly at the threshold is rejected.
The functions are total and pure; filtering the same document twice is a
no-op the second time.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .interchange import WH_WORDS, DocumentExtraction, Sentence, SrlRecord

DEFAULT_ALLOWED_WH = frozenset({"what", "who", "which"})
DEFAULT_BANNED_VERBS = frozenset({"be"})

# Rejection reasons, in evaluation order.
REASON_QUESTION_PROB = "question-prob"
REASON_ANSWER_PROB = "answer-prob"
REASON_WH = "wh-not-allowed"
REASON_BANNED_VERB = "banned-verb"
REASON_VERB_IN_ANSWER = "verb-in-answer"
REASON_NO_NOUN = "no-noun-in-answer"
REASON_PRONOUN = "pronoun-answer"


@dataclass(frozen=True)
class FilterConfig:
    min_question_prob: float = 0.1
    min_answer_prob: float = 0.05
    allowed_wh: frozenset[str] = DEFAULT_ALLOWED_WH
    banned_verbs: frozenset[str] = DEFAULT_BANNED_VERBS

    def __post_init__(self):
        if not 0.0 <= self.min_question_prob <= 1.0:
            raise ValueError("min_question_prob must lie in [0, 1]")
        if not 0.0 <= self.min_answer_prob <= 1.0:
            raise ValueError("min_answer_prob must lie in [0, 1]")
        if not self.allowed_wh:
            raise ValueError("allowed_wh must be non-empty")
        unknown = set(self.allowed_wh) - set(WH_WORDS)
        if unknown:
            raise ValueError(f"allowed_wh contains unknown wh-words: {sorted(unknown)}")
        object.__setattr__(self, "allowed_wh", frozenset(self.allowed_wh))
        object.__setattr__(self, "banned_verbs", frozenset(self.banned_verbs))


@dataclass(frozen=True)
class Rejection:
    sentence_index: int
    record_position: int
    reason: str


@dataclass(frozen=True)
class FilterResult:
    document: DocumentExtraction
    rejections: tuple[Rejection, ...] = field(default_factory=tuple)


def keep_record(record: SrlRecord, cfg: FilterConfig) -> tuple[bool, str | None]:
    """Decide whether one record survives; returns (keep, rejection_reason)."""
    if not record.question_prob > cfg.min_question_prob:
        return False, REASON_QUESTION_PROB
    if not record.answer.answer_prob > cfg.min_answer_prob:
        return False, REASON_ANSWER_PROB
    if record.question_wh not in cfg.allowed_wh:
        return False, REASON_WH
    if record.verb in cfg.banned_verbs:
        return False, REASON_BANNED_VERB
    if record.answer.contains_verb:
        return False, REASON_VERB_IN_ANSWER
    if not record.answer.contains_noun:
        return False, REASON_NO_NOUN
    if record.answer.is_pronoun:
        return False, REASON_PRONOUN
    return True, None


def filter_document(doc: DocumentExtraction, cfg: FilterConfig) -> FilterResult:
    """Drop rejected records, preserving sentence structure and record order."""
    sentences: list[Sentence] = []
    rejections: list[Rejection] = []
    for sentence in doc.sentences:
        kept = []
        for position, record in enumerate(sentence.records):
            keep, reason = keep_record(record, cfg)
            if keep:
                kept.append(record)
            else:
                rejections.append(Rejection(sentence.index, position, reason))
        sentences.append(replace(sentence, records=tuple(kept)))
    filtered = replace(doc, sentences=tuple(sentences))
    return FilterResult(document=filtered, rejections=tuple(rejections))
