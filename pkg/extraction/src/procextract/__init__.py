"""procextract: raw procedural text to question-answer extraction files.

Deterministic, rule-based counterparts of the three model stages a full
deployment would run (coreference, question generation, sentence encoding):
pronoun replacement by cluster representative, clause-pattern question-answer
extraction with POS flags, and a lexical embedding export.  Outputs are the
interchange formats the mapping engine consumes; nothing here imports the
engine.
"""

from . import cli, embed, lexicon, pipeline, pronouns, srl

__version__ = "0.1.0"

__all__ = ["cli", "embed", "lexicon", "pipeline", "pronouns", "srl", "__version__"]
