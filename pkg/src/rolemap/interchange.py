"""Document and embedding interchange formats.

The mapping engine never runs any linguistic model itself.  It consumes two
kinds of files produced upstream:

* a *document file* -- one UTF-8 JSON object per file holding the sentences of
  one text and, per sentence, the (verb, question, answer) role records with
  their probabilities and precomputed part-of-speech flags;
* an *embedding file* -- a JSON-lines table mapping surface strings (questions,
  verbs, answer spans) to unit-norm vectors of a fixed dimension declared in
  the header line.

Vectors are stored unit-normalized so cosine similarity reduces to a dot
product; the reader re-validates the norm instead of normalizing.  All loaded
values are immutable and safe to share between threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

NORM_TOLERANCE = 1e-6

WH_WORDS = ("what", "who", "which", "where", "when", "why", "how", "other")


class ParseError(ValueError):
    """File is not syntactically valid JSON / JSON-lines."""


class ValidationError(ValueError):
    """File parsed but violates an interchange invariant."""


class MissingKeyError(ValidationError):
    """Embedding table lacks required keys."""

    def __init__(self, keys: set[str]):
        self.keys = sorted(keys)
        preview = ", ".join(repr(k) for k in self.keys[:5])
        if len(self.keys) > 5:
            preview += f", ... ({len(self.keys)} total)"
        super().__init__(f"embedding table is missing required keys: {preview}")


@dataclass(frozen=True)
class AnswerSpan:
    """An answer string with flags precomputed by the extraction side.

    The engine never re-derives the POS flags; they arrive with the data.
    """

    text: str
    answer_prob: float
    contains_verb: bool
    contains_noun: bool
    is_pronoun: bool


@dataclass(frozen=True)
class SrlRecord:
    """One (verb, question, answer) extraction from one sentence."""

    verb: str
    question: str
    question_prob: float
    question_wh: str
    answer: AnswerSpan


@dataclass(frozen=True)
class Sentence:
    index: int
    text: str
    records: tuple[SrlRecord, ...]


@dataclass(frozen=True)
class DocumentExtraction:
    doc_id: str
    prompt: str | None
    sentences: tuple[Sentence, ...]

    def iter_records(self):
        """Yield (sentence_index, record_position, record) in document order."""
        for sentence in self.sentences:
            for pos, record in enumerate(sentence.records):
                yield sentence.index, pos, record

    def record_at(self, ref: tuple[int, int]) -> SrlRecord:
        sentence_index, position = ref
        return self.sentences[sentence_index].records[position]


@dataclass(frozen=True)
class EmbeddingTable:
    """Unit-norm vectors keyed by exact surface strings."""

    dimension: int
    vectors: dict[str, np.ndarray] = field(repr=False)

    def __contains__(self, key: str) -> bool:
        return key in self.vectors

    def __len__(self) -> int:
        return len(self.vectors)

    def vector(self, key: str) -> np.ndarray:
        try:
            return self.vectors[key]
        except KeyError:
            raise MissingKeyError({key}) from None

    def require(self, keys: set[str]) -> None:
        missing = {k for k in keys if k not in self.vectors}
        if missing:
            raise MissingKeyError(missing)


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine similarity of two unit-norm vectors (their dot product).

    Exactly symmetric: the elementwise products are commutative and the
    accumulation order over indices does not depend on operand order.
    """
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(np.dot(a, b))


# ---------------------------------------------------------------------------
# Document files
# ---------------------------------------------------------------------------

def _check(condition: bool, message: str) -> None:
    if not condition:
        raise ValidationError(message)


def _string(obj: dict, key: str, where: str) -> str:
    value = obj.get(key)
    _check(isinstance(value, str), f"{where}: field '{key}' must be a string")
    return value


def _probability(obj: dict, key: str, where: str) -> float:
    value = obj.get(key)
    _check(isinstance(value, (int, float)) and not isinstance(value, bool),
           f"{where}: field '{key}' must be a number")
    _check(0.0 <= value <= 1.0, f"{where}: field '{key}' must lie in [0, 1]")
    return float(value)


def _flag(obj: dict, key: str, where: str) -> bool:
    value = obj.get(key)
    _check(isinstance(value, bool), f"{where}: field '{key}' must be a boolean")
    return value


def _question_leading_wh(question: str) -> str:
    head = question.split(None, 1)[0].strip("?,.!").lower() if question.split() else ""
    return head if head in WH_WORDS[:7] else "other"


def _record_from_dict(obj: dict, where: str) -> SrlRecord:
    _check(isinstance(obj, dict), f"{where}: record must be an object")
    verb = _string(obj, "verb", where)
    _check(bool(verb), f"{where}: field 'verb' must be non-empty")
    question = _string(obj, "question", where)
    _check(bool(question.strip()), f"{where}: field 'question' must be non-empty")
    question_prob = _probability(obj, "question_prob", where)
    question_wh = _string(obj, "question_wh", where)
    _check(question_wh in WH_WORDS,
           f"{where}: field 'question_wh' must be one of {WH_WORDS}")
    _check(question_wh == _question_leading_wh(question),
           f"{where}: field 'question_wh' ({question_wh!r}) does not match the "
           f"question's first token in {question!r}")

    answer_obj = obj.get("answer")
    _check(isinstance(answer_obj, dict), f"{where}: field 'answer' must be an object")
    answer = AnswerSpan(
        text=_string(answer_obj, "text", f"{where}: answer"),
        answer_prob=_probability(answer_obj, "answer_prob", f"{where}: answer"),
        contains_verb=_flag(answer_obj, "contains_verb", f"{where}: answer"),
        contains_noun=_flag(answer_obj, "contains_noun", f"{where}: answer"),
        is_pronoun=_flag(answer_obj, "is_pronoun", f"{where}: answer"),
    )
    _check(bool(answer.text.strip()), f"{where}: answer field 'text' must be non-empty")
    return SrlRecord(verb, question, question_prob, question_wh, answer)


def document_from_dict(obj: dict) -> DocumentExtraction:
    """Build and validate a document from its JSON object form."""
    _check(isinstance(obj, dict), "document: top level must be an object")
    doc_id = _string(obj, "doc_id", "document")
    _check(bool(doc_id), "document: field 'doc_id' must be non-empty")
    prompt = obj.get("prompt")
    _check(prompt is None or isinstance(prompt, str),
           "document: field 'prompt' must be a string or null")
    raw_sentences = obj.get("sentences")
    _check(isinstance(raw_sentences, list), "document: field 'sentences' must be a list")

    sentences = []
    for expected_index, sent_obj in enumerate(raw_sentences):
        where = f"sentence {expected_index}"
        _check(isinstance(sent_obj, dict), f"{where}: must be an object")
        index = sent_obj.get("index")
        _check(isinstance(index, int) and not isinstance(index, bool),
               f"{where}: field 'index' must be an integer")
        _check(index == expected_index,
               f"{where}: non-contiguous sentence index {index} (expected {expected_index})")
        text = _string(sent_obj, "text", where)
        _check(bool(text.strip()), f"{where}: field 'text' must be non-empty")
        raw_records = sent_obj.get("records")
        _check(isinstance(raw_records, list), f"{where}: field 'records' must be a list")
        records = tuple(
            _record_from_dict(rec, f"{where}, record {pos}")
            for pos, rec in enumerate(raw_records)
        )
        sentences.append(Sentence(index=index, text=text, records=records))

    return DocumentExtraction(doc_id=doc_id, prompt=prompt, sentences=tuple(sentences))


def document_to_dict(doc: DocumentExtraction) -> dict:
    return {
        "doc_id": doc.doc_id,
        "prompt": doc.prompt,
        "sentences": [
            {
                "index": s.index,
                "text": s.text,
                "records": [
                    {
                        "verb": r.verb,
                        "question": r.question,
                        "question_prob": r.question_prob,
                        "question_wh": r.question_wh,
                        "answer": {
                            "text": r.answer.text,
                            "answer_prob": r.answer.answer_prob,
                            "contains_verb": r.answer.contains_verb,
                            "contains_noun": r.answer.contains_noun,
                            "is_pronoun": r.answer.is_pronoun,
                        },
                    }
                    for r in s.records
                ],
            }
            for s in doc.sentences
        ],
    }


def dumps_document(doc: DocumentExtraction) -> str:
    """Canonical single-line serialization; the round-trip fixed point."""
    return json.dumps(document_to_dict(doc), ensure_ascii=False) + "\n"


def load_document(path: str | Path) -> DocumentExtraction:
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: cannot read document file: {exc}") from exc
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: malformed JSON: {exc}") from exc
    try:
        return document_from_dict(obj)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from None


def write_document(doc: DocumentExtraction, path: str | Path) -> None:
    Path(path).write_text(dumps_document(doc), encoding="utf-8")


def load_corpus(directory: str | Path) -> list[DocumentExtraction]:
    """Load every ``*.json`` document in a directory, sorted by doc_id.

    Duplicate doc_ids are a validation error; the ranking output keys pairs
    by doc_id alone.
    """
    directory = Path(directory)
    docs = [load_document(p) for p in sorted(directory.glob("*.json"))]
    seen: set[str] = set()
    for doc in docs:
        if doc.doc_id in seen:
            raise ValidationError(f"duplicate doc_id {doc.doc_id!r} in {directory}")
        seen.add(doc.doc_id)
    return sorted(docs, key=lambda d: d.doc_id)


def document_embedding_keys(doc: DocumentExtraction) -> set[str]:
    """Strings the embedding table must cover for an (already filtered) document:
    every question, every verb and every answer span of its records."""
    keys: set[str] = set()
    for _, _, record in doc.iter_records():
        keys.add(record.question)
        keys.add(record.verb)
        keys.add(record.answer.text)
    return keys


# ---------------------------------------------------------------------------
# Embedding files
# ---------------------------------------------------------------------------

def load_embeddings(path: str | Path, required_keys: set[str] | None = None) -> EmbeddingTable:
    """Read an embedding table, re-checking unit norms and key coverage."""
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise ParseError(f"{path}: cannot read embedding file: {exc}") from exc
    if not lines:
        raise ParseError(f"{path}: empty embedding file (missing header line)")

    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: malformed header line: {exc}") from exc
    dimension = header.get("dimension") if isinstance(header, dict) else None
    if not isinstance(dimension, int) or isinstance(dimension, bool) or dimension <= 0:
        raise ValidationError(f"{path}: header must declare a positive integer 'dimension'")

    vectors: dict[str, np.ndarray] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            entry = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}:{lineno}: malformed entry: {exc}") from exc
        key = entry.get("key") if isinstance(entry, dict) else None
        vec = entry.get("vector") if isinstance(entry, dict) else None
        if not isinstance(key, str) or not isinstance(vec, list):
            raise ValidationError(f"{path}:{lineno}: entry must have a string 'key' and list 'vector'")
        array = np.asarray(vec, dtype=np.float64)
        if array.ndim != 1 or array.shape[0] != dimension:
            raise ValidationError(
                f"{path}:{lineno}: vector for {key!r} has length {array.size}, expected {dimension}")
        norm = float(np.linalg.norm(array))
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise ValidationError(
                f"{path}:{lineno}: vector for {key!r} has norm {norm:.8f}, expected 1 +/- {NORM_TOLERANCE}")
        array.setflags(write=False)
        vectors[key] = array

    table = EmbeddingTable(dimension=dimension, vectors=vectors)
    if required_keys is not None:
        table.require(set(required_keys))
    return table


def write_embeddings(table: EmbeddingTable, path: str | Path) -> None:
    lines = [json.dumps({"dimension": table.dimension})]
    for key in table.vectors:
        lines.append(json.dumps({"key": key, "vector": list(map(float, table.vectors[key]))},
                                ensure_ascii=False))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
