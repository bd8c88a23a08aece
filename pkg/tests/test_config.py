"""Engine configuration: defaults, defaulting, strict key checking."""

import pytest

from rolemap.config import ConfigError, EngineConfig, config_from_dict, load_config


class TestDefaults:

    def test_published_default_values(self):
        config = EngineConfig()
        assert config.filter.min_question_prob == 0.1
        assert config.filter.min_answer_prob == 0.05
        assert config.filter.allowed_wh == frozenset({"what", "who", "which"})
        assert config.filter.banned_verbs == frozenset({"be"})
        assert config.clustering.linkage_distance_threshold == 1.0
        assert config.clustering.linkage == "average"
        assert config.similarity.mode == "fmq"
        assert config.similarity.question_cos_threshold == 0.7
        assert config.similarity.verb_cos_threshold == 0.5
        assert config.similarity.relation_bonus_alpha == 1.0
        assert config.similarity.dedupe_questions is True
        assert config.beam.beam_width == 7
        assert config.beam.top_k == 3

    def test_no_path_means_defaults(self):
        assert load_config(None) == EngineConfig()

    def test_absent_sections_default(self):
        config = config_from_dict({"beam": {"beam_width": 5, "top_k": 2}})
        assert config.beam.beam_width == 5
        assert config.filter == EngineConfig().filter

    def test_round_trip_preserves_hash(self):
        config = config_from_dict({"similarity": {"mode": "fmv"}})
        assert config_from_dict(config.to_dict()).hash() == config.hash()


class TestValidation:

    def test_unknown_section(self):
        with pytest.raises(ConfigError, match="unknown sections"):
            config_from_dict({"beams": {}})

    def test_unknown_key(self):
        with pytest.raises(ConfigError, match="unknown keys"):
            config_from_dict({"beam": {"width": 7}})

    def test_invalid_value_reported_with_section(self):
        with pytest.raises(ConfigError, match="similarity"):
            config_from_dict({"similarity": {"relation_bonus_alpha": -1}})

    def test_malformed_file(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text("{oops")
        with pytest.raises(ConfigError, match="malformed JSON"):
            load_config(path)


class TestHash:

    def test_stable_across_instances(self):
        assert EngineConfig().hash() == EngineConfig().hash()

    def test_sensitive_to_values(self):
        assert EngineConfig().hash() != EngineConfig().with_mode("fmv").hash()

    def test_with_mode_only_touches_mode(self):
        config = EngineConfig().with_mode("fmv")
        assert config.similarity.mode == "fmv"
        assert config.beam == EngineConfig().beam
