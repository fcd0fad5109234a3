"""Tests for flowhom.config - settings file and flag overrides."""

import argparse
import json
import logging

import pytest

from flowhom.config import RunConfig, Settings, load_settings
from flowhom.errors import ConfigError
from flowhom.linalg import Field


def args(**kwargs):
    defaults = dict(command="analyze", field=None, prime=None, pmax=None, path_limit=None, workers=None)
    defaults.update(kwargs)
    return argparse.Namespace(**defaults)


class TestSettings:
    def test_defaults(self):
        s = Settings().validate()
        assert s.field == "rational"
        assert s.p_max == 3
        assert s.enumerate_max_n == 6

    @pytest.mark.parametrize("overrides", [
        {"field": "complex"},
        {"p_max": 0},
        {"path_limit": 0},
        {"workers": 0},
        {"enumerate_max_n": 8},
        {"oracle_max_p": 0},
        {"field": "prime", "prime": 12},
    ])
    def test_invalid(self, overrides):
        with pytest.raises(ConfigError):
            Settings(**overrides).validate()

    def test_make_field(self):
        assert Settings().make_field() == Field.rationals()
        assert Settings(field="prime", prime=101).make_field() == Field.modular(101)

    def test_prime_field_warns(self, caplog):
        with caplog.at_level(logging.WARNING, logger="flowhom"):
            Settings(field="prime", prime=101).make_field()
        assert "GF(101)" in caplog.text

    def test_from_dict_types(self):
        with pytest.raises(ConfigError, match="p_max"):
            Settings.from_dict({"p_max": "3"})
        with pytest.raises(ConfigError):
            Settings.from_dict({"workers": True})

    def test_from_dict_unknown_key(self, caplog):
        with caplog.at_level(logging.WARNING, logger="flowhom"):
            s = Settings.from_dict({"p_max": 4, "colour": "blue"})
        assert s.p_max == 4
        assert "colour" in caplog.text

    def test_to_dict(self):
        assert Settings().to_dict()["path_limit"] == 5_000_000


class TestLoadSettings:
    def test_absent_file_gives_defaults(self, tmp_path):
        assert load_settings(cwd=tmp_path) == Settings()

    def test_file_in_cwd(self, tmp_path):
        (tmp_path / "flowhom.json").write_text(json.dumps({"p_max": 5, "workers": 2}))
        s = load_settings(cwd=tmp_path)
        assert (s.p_max, s.workers) == (5, 2)

    def test_explicit_missing(self, tmp_path):
        with pytest.raises(ConfigError, match="not found"):
            load_settings(tmp_path / "nope.json")

    def test_bad_json(self, tmp_path):
        path = tmp_path / "flowhom.json"
        path.write_text("{not json")
        with pytest.raises(ConfigError, match="cannot read"):
            load_settings(path)

    def test_not_an_object(self, tmp_path):
        path = tmp_path / "flowhom.json"
        path.write_text("[1, 2]")
        with pytest.raises(ConfigError, match="JSON object"):
            load_settings(path)


class TestRunConfig:
    def test_overrides(self):
        rc = RunConfig.from_args(args(pmax=5, path_limit=10), Settings())
        assert rc.settings.p_max == 5
        assert rc.settings.path_limit == 10
        assert rc.command == "analyze"

    def test_prime_requires_prime_field(self):
        with pytest.raises(ConfigError, match="--prime requires"):
            RunConfig.from_args(args(prime=101), Settings())

    def test_prime_field_from_file_accepts_prime_flag(self):
        rc = RunConfig.from_args(args(prime=101), Settings(field="prime"))
        assert rc.settings.prime == 101

    def test_invalid_override(self):
        with pytest.raises(ConfigError):
            RunConfig.from_args(args(pmax=0), Settings())

    def test_seed_range(self):
        assert RunConfig.from_args(args(seed=7), Settings()).seed == 7
        with pytest.raises(ConfigError, match="seed"):
            RunConfig.from_args(args(seed=-1), Settings())
        with pytest.raises(ConfigError, match="seed"):
            RunConfig.from_args(args(seed=1 << 64), Settings())

    def test_output_path(self, tmp_path):
        rc = RunConfig.from_args(args(out=str(tmp_path)), Settings())
        assert rc.output_path == tmp_path
