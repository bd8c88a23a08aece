"""Record filtering: rule conformance, rejection logging, algebraic properties."""

import pytest

from rolemap.qa_filter import (
    REASON_ANSWER_PROB,
    REASON_BANNED_VERB,
    REASON_NO_NOUN,
    REASON_PRONOUN,
    REASON_QUESTION_PROB,
    REASON_VERB_IN_ANSWER,
    REASON_WH,
    FilterConfig,
    filter_document,
    keep_record,
)

from helpers import answer, doc, record

CFG = FilterConfig()


class TestKeepRecord:

    def test_good_record_kept(self):
        r = record("provide", "what provides something?",
                   answer("the mitochondria", prob=0.8), q_prob=0.9)
        assert keep_record(r, CFG) == (True, None)

    def test_when_question_rejected(self):
        r = record("flow", "when does something flow?", "the river")
        assert keep_record(r, CFG) == (False, REASON_WH)

    def test_pronoun_answer_rejected(self):
        r = record("use", "what uses something?", answer("it", pronoun=True))
        assert keep_record(r, CFG) == (False, REASON_PRONOUN)

    def test_question_prob_at_threshold_rejected(self):
        r = record("use", "what uses something?", "the cell", q_prob=0.1)
        assert keep_record(r, CFG) == (False, REASON_QUESTION_PROB)

    def test_answer_prob_at_threshold_rejected(self):
        r = record("use", "what uses something?", answer("the cell", prob=0.05))
        assert keep_record(r, CFG) == (False, REASON_ANSWER_PROB)

    def test_be_verb_rejected(self):
        r = record("be", "what is something?", "an organelle")
        assert keep_record(r, CFG) == (False, REASON_BANNED_VERB)

    def test_verb_in_answer_rejected(self):
        r = record("use", "what uses something?", answer("running water", verb=True))
        assert keep_record(r, CFG) == (False, REASON_VERB_IN_ANSWER)

    def test_no_noun_rejected(self):
        r = record("use", "what uses something?", answer("quickly", noun=False))
        assert keep_record(r, CFG) == (False, REASON_NO_NOUN)

    def test_reason_order_prob_before_wh(self):
        # A record failing several rules reports the first in the fixed order.
        r = record("be", "when is something?", answer("it", pronoun=True), q_prob=0.05)
        assert keep_record(r, CFG) == (False, REASON_QUESTION_PROB)

    def test_where_how_rejected_by_whitelist(self):
        for question, wh in (("where does something go?", "where"),
                             ("how does something work?", "how")):
            r = record("go", question, "the cell", wh=wh)
            assert keep_record(r, CFG) == (False, REASON_WH)

    def test_relaxed_whitelist_keeps_where(self):
        cfg = FilterConfig(allowed_wh=frozenset({"what", "who", "which", "where"}))
        r = record("go", "where does something go?", "the cell", wh="where")
        assert keep_record(r, cfg) == (True, None)


class TestFilterDocument:

    def make_doc(self):
        return doc("d", [
            ("The cell uses proteins.", [
                record("use", "what uses something?", "the cell"),
                record("be", "what is something?", "a machine"),
            ]),
            ("It grows.", [
                record("grow", "what grows?", answer("it", pronoun=True)),
            ]),
        ])

    def test_zero_record_document_unchanged(self):
        d = doc("d", [("Nothing here.", [])])
        result = filter_document(d, CFG)
        assert result.document == d
        assert result.rejections == ()

    def test_all_be_verbs_removed_and_logged(self):
        d = doc("d", [
            ("A is B.", [record("be", "what is something?", "A"),
                         record("be", "what is something else?", "B")]),
        ])
        result = filter_document(d, CFG)
        assert all(not s.records for s in result.document.sentences)
        assert [r.reason for r in result.rejections] == [REASON_BANNED_VERB] * 2

    def test_structure_preserved_and_log_positions(self):
        result = filter_document(self.make_doc(), CFG)
        assert [s.index for s in result.document.sentences] == [0, 1]
        assert len(result.document.sentences[0].records) == 1
        assert [(r.sentence_index, r.record_position, r.reason) for r in result.rejections] == [
            (0, 1, REASON_BANNED_VERB),
            (1, 0, REASON_PRONOUN),
        ]

    def test_idempotence(self):
        once = filter_document(self.make_doc(), CFG)
        twice = filter_document(once.document, CFG)
        assert twice.document == once.document
        assert twice.rejections == ()

    def test_partition(self):
        d = self.make_doc()
        result = filter_document(d, CFG)
        kept = sum(len(s.records) for s in result.document.sentences)
        total = sum(len(s.records) for s in d.sentences)
        assert kept + len(result.rejections) == total

    def test_monotonicity_in_thresholds(self):
        probs = [0.02, 0.05, 0.08, 0.1, 0.3, 0.7, 0.95]
        d = doc("d", [("S.", [
            record("use", "what uses something?", answer("the cell", prob=a), q_prob=q)
            for q in probs for a in probs
        ])])
        kept_counts = []
        for threshold in (0.0, 0.05, 0.1, 0.5, 0.9):
            cfg = FilterConfig(min_question_prob=threshold, min_answer_prob=threshold)
            result = filter_document(d, cfg)
            kept_counts.append(sum(len(s.records) for s in result.document.sentences))
        assert kept_counts == sorted(kept_counts, reverse=True)


class TestFilterConfig:

    def test_rejects_bad_probability(self):
        with pytest.raises(ValueError):
            FilterConfig(min_question_prob=1.5)

    def test_rejects_empty_whitelist(self):
        with pytest.raises(ValueError):
            FilterConfig(allowed_wh=frozenset())

    def test_rejects_unknown_wh(self):
        with pytest.raises(ValueError):
            FilterConfig(allowed_wh=frozenset({"what", "whither"}))
