"""Tests for settings loading and precedence."""

import pytest

from wdcs.config import Combiner, Settings, load_settings, read_config_file
from wdcs.errors import ConfigurationError


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ("WDCS_THRESHOLD", "WDCS_COMBINER", "WDCS_TMPDIR", "WDCS_JOBS"):
        monkeypatch.delenv(name, raising=False)


def test_defaults():
    settings = load_settings()
    assert settings.threshold == 1e-6
    assert settings.combiner is Combiner.MIN
    assert settings.language == "en"
    assert settings.strict_above is False
    assert settings.symmetric_canonical is False
    assert settings.jobs >= 1


def test_environment_overrides_defaults(monkeypatch, tmp_path):
    monkeypatch.setenv("WDCS_THRESHOLD", "2e-6")
    monkeypatch.setenv("WDCS_TMPDIR", str(tmp_path))
    settings = load_settings()
    assert settings.threshold == 2e-6
    assert settings.tmpdir == str(tmp_path)


def test_flags_override_config_file(tmp_path, monkeypatch):
    monkeypatch.setenv("WDCS_COMBINER", "lookup")
    config = tmp_path / "wdcs.conf"
    config.write_text("# extraction\nthreshold = 5e-6\ncombiner=product\n--strict-above=true\n")
    settings = load_settings(str(config), {"threshold": 3e-6, "language": None})
    assert settings.threshold == 3e-6
    # the file beats the environment
    assert settings.combiner is Combiner.PRODUCT
    assert settings.strict_above is True
    assert settings.language == "en"


def test_preloaded_config_values_replace_the_file(tmp_path):
    config = tmp_path / "ignored.conf"
    config.write_text("threshold=9e-6\n")
    settings = load_settings(str(config), {"jobs": 2}, config_values={"threshold": "4e-6"})
    assert settings.threshold == 4e-6
    assert settings.jobs == 2


def test_yaml_config(tmp_path):
    config = tmp_path / "wdcs.yaml"
    config.write_text("threshold: 1.0e-5\nallow-leading-digit: true\nexclude: P31,P279\n")
    settings = load_settings(str(config))
    assert settings.threshold == 1e-5
    assert settings.allow_leading_digit is True
    assert settings.excluded_relations == frozenset({"P31", "P279"})


def test_unknown_setting_is_a_configuration_error(tmp_path):
    config = tmp_path / "wdcs.conf"
    config.write_text("treshold=1e-6\n")
    with pytest.raises(ConfigurationError, match="treshold") as exc:
        load_settings(str(config))
    assert exc.value.exit_code == 2


@pytest.mark.parametrize("overrides", [{"threshold": 0}, {"jobs": 0}, {"combiner": "max"}])
def test_invalid_values_are_configuration_errors(overrides):
    with pytest.raises(ConfigurationError):
        load_settings(None, overrides)


def test_config_line_without_equals(tmp_path):
    config = tmp_path / "wdcs.conf"
    config.write_text("threshold\n")
    with pytest.raises(ConfigurationError, match=":1:"):
        read_config_file(str(config))


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigurationError):
        read_config_file(str(tmp_path / "absent.conf"))


def test_settings_model_lists_every_flag():
    for name in ("threshold", "combiner", "mapping", "language", "strict", "strict_above", "top", "exclude", "jobs"):
        assert name in Settings.model_fields
