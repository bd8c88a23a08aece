"""Engine configuration: one JSON file, four sections, full defaulting.

An absent section (or an absent file) means the published defaults: filter
thresholds 0.1 / 0.05 with the what/who/which whitelist and "be" ban,
clustering distance 1.0 with average linkage, question/verb cosine cutoffs
0.7 / 0.5, relation bonus 1.0, beam width 7, top-3 solutions.

Unknown sections or keys are configuration errors, not warnings; a typo must
not silently fall back to a default.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .entity_clustering import ClusteringConfig
from .mapper import BeamConfig
from .qa_filter import FilterConfig
from .similarity import SimilarityConfig


class ConfigError(ValueError):
    """Configuration file is malformed or carries invalid values."""


@dataclass(frozen=True)
class EngineConfig:
    filter: FilterConfig = field(default_factory=FilterConfig)
    clustering: ClusteringConfig = field(default_factory=ClusteringConfig)
    similarity: SimilarityConfig = field(default_factory=SimilarityConfig)
    beam: BeamConfig = field(default_factory=BeamConfig)

    def with_mode(self, mode: str) -> "EngineConfig":
        from dataclasses import replace
        return replace(self, similarity=replace(self.similarity, mode=mode))

    def to_dict(self) -> dict:
        return {
            "filter": {
                "min_question_prob": self.filter.min_question_prob,
                "min_answer_prob": self.filter.min_answer_prob,
                "allowed_wh": sorted(self.filter.allowed_wh),
                "banned_verbs": sorted(self.filter.banned_verbs),
            },
            "clustering": {
                "linkage_distance_threshold": self.clustering.linkage_distance_threshold,
                "linkage": self.clustering.linkage,
            },
            "similarity": {
                "mode": self.similarity.mode,
                "question_cos_threshold": self.similarity.question_cos_threshold,
                "verb_cos_threshold": self.similarity.verb_cos_threshold,
                "relation_bonus_alpha": self.similarity.relation_bonus_alpha,
                "dedupe_questions": self.similarity.dedupe_questions,
                "relation_bonus_same_verb": self.similarity.relation_bonus_same_verb,
            },
            "beam": {
                "beam_width": self.beam.beam_width,
                "top_k": self.beam.top_k,
            },
        }

    def hash(self) -> str:
        """Short stable digest of the effective configuration."""
        canonical = json.dumps(self.to_dict(), sort_keys=True)
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:12]


_SECTION_TYPES = {
    "filter": FilterConfig,
    "clustering": ClusteringConfig,
    "similarity": SimilarityConfig,
    "beam": BeamConfig,
}

_SECTION_FIELDS = {
    "filter": ("min_question_prob", "min_answer_prob", "allowed_wh", "banned_verbs"),
    "clustering": ("linkage_distance_threshold", "linkage"),
    "similarity": ("mode", "question_cos_threshold", "verb_cos_threshold",
                   "relation_bonus_alpha", "dedupe_questions", "relation_bonus_same_verb"),
    "beam": ("beam_width", "top_k"),
}


def config_from_dict(obj: dict) -> EngineConfig:
    if not isinstance(obj, dict):
        raise ConfigError("config: top level must be an object")
    unknown = set(obj) - set(_SECTION_TYPES)
    if unknown:
        raise ConfigError(f"config: unknown sections {sorted(unknown)}")

    sections = {}
    for name, cls in _SECTION_TYPES.items():
        raw = obj.get(name, {})
        if not isinstance(raw, dict):
            raise ConfigError(f"config: section {name!r} must be an object")
        bad_keys = set(raw) - set(_SECTION_FIELDS[name])
        if bad_keys:
            raise ConfigError(f"config: section {name!r} has unknown keys {sorted(bad_keys)}")
        kwargs = dict(raw)
        for key in ("allowed_wh", "banned_verbs"):
            if key in kwargs:
                if not isinstance(kwargs[key], list):
                    raise ConfigError(f"config: {name}.{key} must be a list of strings")
                kwargs[key] = frozenset(kwargs[key])
        try:
            sections[name] = cls(**kwargs)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"config: section {name!r}: {exc}") from None
    return EngineConfig(**sections)


def load_config(path: str | Path | None) -> EngineConfig:
    """Read a config file; ``None`` means all defaults."""
    if path is None:
        return EngineConfig()
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config file: {exc}") from exc
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: malformed JSON: {exc}") from exc
    return config_from_dict(obj)
