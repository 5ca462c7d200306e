import json
from fractions import Fraction

import pytest

from brtjurina.config import Config, DEFAULTS, RF_CAP_ENV
from brtjurina.errors import InputError


@pytest.fixture(autouse=True)
def no_env_cap(monkeypatch):
    monkeypatch.delenv(RF_CAP_ENV, raising=False)


def test_defaults():
    config = Config()
    assert config.get_order() == 'negdegrevlex'
    assert config.get_rf_cap() == DEFAULTS['rf_cap']
    assert config.get_lambda_values() == [2, 5, Fraction(-7, 3)]
    assert config.get_table('m_max') == 4


def test_file_overrides_only_given_keys(tmp_path):
    path = tmp_path / 'config.json'
    path.write_text(json.dumps({'order': 'neglex', 'table': {'m_max': 9}}))
    config = Config(str(path))
    assert config.get_order() == 'neglex'
    assert config.get_table('m_max') == 9
    assert config.get_table('m_min') == 1
    assert config.get_rf_cap() == 8
    assert Config().get_table('m_max') == 4


def test_environment_overrides_rf_cap(tmp_path, monkeypatch):
    path = tmp_path / 'config.json'
    path.write_text(json.dumps({'rf_cap': 3}))
    assert Config(str(path)).get_rf_cap() == 3
    monkeypatch.setenv(RF_CAP_ENV, '5')
    assert Config(str(path)).get_rf_cap() == 5
    monkeypatch.setenv(RF_CAP_ENV, '0')
    with pytest.raises(InputError):
        Config().get_rf_cap()


@pytest.mark.parametrize('content', ['{"rf_cap": ', '{"lambda_values": ["a"]}'])
def test_invalid_files(tmp_path, content):
    path = tmp_path / 'config.json'
    path.write_text(content)
    with pytest.raises(InputError):
        Config(str(path)).get_lambda_values()


def test_missing_file(tmp_path):
    with pytest.raises(InputError):
        Config(str(tmp_path / 'missing.json'))
