import json

import pytest

from core.errors import ConfigError
from systems.settings import RunSettings


def write_json(path, payload):
    path.write_text(json.dumps(payload), encoding='utf-8')
    return path


def test_defaults():
    settings = RunSettings()
    assert settings.get('simulate', 'F') == '1'
    assert settings.get('simulate', 'nx') == 1024
    assert settings.get('painleve', 'psi') == 't^2'
    assert settings.get('sweep', 'workers') == 2
    assert settings.get('common', 'log_level') == 'WARNING'
    assert settings.get('missing', 'key') is None


def test_file_overrides_merge_into_defaults(tmp_path):
    path = write_json(tmp_path / 'run.json', {'simulate': {'F': '1/t', 'dt': 0.01}})
    settings = RunSettings(path)
    assert settings.get('simulate', 'F') == '1/t'
    assert settings.get('simulate', 'dt') == 0.01
    assert settings.get('simulate', 't1') == 1.0


def test_top_level_keys_apply_to_every_command(tmp_path):
    path = write_json(tmp_path / 'run.json', {'log_level': 'DEBUG', 'painleve': {'F': '1'}})
    settings = RunSettings(path)
    assert settings.for_command('painleve')['log_level'] == 'DEBUG'
    assert settings.for_command('painleve')['F'] == '1'
    assert settings.for_command('verify')['log_level'] == 'DEBUG'


def test_section_wins_over_common():
    settings = RunSettings()
    settings.set('common', 'F', 't')
    assert settings.for_command('simulate')['F'] == '1'
    assert settings.for_command('verify')['F'] == 't'


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError, match='not found'):
        RunSettings(tmp_path / 'absent.json')


@pytest.mark.parametrize('text', ['{not json', '[1, 2]'])
def test_bad_file(tmp_path, text):
    path = tmp_path / 'bad.json'
    path.write_text(text, encoding='utf-8')
    with pytest.raises(ConfigError):
        RunSettings(path)


def test_save_round_trip(tmp_path):
    settings = RunSettings()
    settings.set('transform', 'spec', 'D(2)')
    saved = settings.save_settings(tmp_path / 'saved.json')
    assert RunSettings(saved).get('transform', 'spec') == 'D(2)'
    with pytest.raises(ConfigError):
        RunSettings().save_settings()
