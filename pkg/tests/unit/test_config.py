"""
Unit tests for src/utils/config.py against the shipped config and a temporary copy.
"""
import json

import pytest

from src.utils import config as config_module
from src.utils.config import (
    get_config_path,
    get_corpus_settings,
    get_generator_defaults,
    get_law_examples,
    get_log_settings,
    get_seed_sweep,
    load_config,
    print_current_config,
    set_generator_default,
)
from tests.utils.test_helpers import ROOT


@pytest.fixture
def temp_config(tmp_path, monkeypatch):
    """Point HYPERNET_CONFIG at a copy of the shipped config."""
    path = tmp_path / "config.json"
    path.write_text((ROOT / "config" / "config.json").read_text(encoding="utf-8"), encoding="utf-8")
    monkeypatch.setenv(config_module.CONFIG_ENV_VAR, str(path))
    return path


def test_default_path_is_project_config(monkeypatch):
    """Without an override the config is found next to main.py."""
    monkeypatch.delenv(config_module.CONFIG_ENV_VAR, raising=False)
    assert get_config_path() == ROOT / "config" / "config.json"


def test_shipped_sections():
    """The shipped file carries the documented defaults for every section."""
    assert get_generator_defaults()["max_vertices"] == 8
    assert get_law_examples() == 200
    assert get_seed_sweep() == 1000
    assert get_log_settings()["log_dir"] == "logs"
    assert get_corpus_settings()["count"] == 20


def test_env_override_is_used(temp_config):
    assert get_config_path() == temp_config
    assert load_config()["law_suite"]["subhn_oracle_examples"] == 500


def test_set_generator_default_persists(temp_config):
    """
    Unit test for set_generator_default.
    The new value is written to disk and read back by the getter.
    """
    # 1. Setup
    assert get_generator_defaults()["max_arity"] == 4

    # 2. Execution
    set_generator_default("max_arity", 3)

    # 3. Verification
    assert json.loads(temp_config.read_text(encoding="utf-8"))["generator"]["max_arity"] == 3
    assert get_generator_defaults()["max_arity"] == 3


def test_set_generator_default_rejects_unknown_key(temp_config):
    with pytest.raises(ValueError):
        set_generator_default("max_colours", 3)


def test_missing_config_raises(tmp_path, monkeypatch):
    """A missing config file is a FileNotFoundError naming the path."""
    monkeypatch.setenv(config_module.CONFIG_ENV_VAR, str(tmp_path / "nope.json"))
    with pytest.raises(FileNotFoundError, match="nope.json"):
        load_config()


def test_print_current_config_lists_every_key(temp_config, capsys):
    """
    Unit test for print_current_config.
    Every section.key pair appears once, with a changed value reflected.
    """
    # 1. Setup
    set_generator_default("max_boundaries", 5)

    # 2. Execution
    print_current_config()

    # 3. Verification
    out = capsys.readouterr().out
    assert "CURRENT KERNEL CONFIGURATION" in out
    for section, values in load_config().items():
        for key in values:
            assert out.count(f"{section}.{key} ") == 1
    assert any(line.startswith("generator.max_boundaries") and line.rstrip().endswith("5")
               for line in out.splitlines())
