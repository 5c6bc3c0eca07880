"""
Run configuration: defaults per subcommand, overridable from a JSON file
"""
import json
import logging
import math
from pathlib import Path

from config.settings import DEFAULT_LOG_LEVEL, DEFAULT_PSI, DEFAULT_U0, POLE_GUARD
from core.errors import ConfigError

logger = logging.getLogger(__name__)


class RunSettings:
    """Settings manager

    A config file holds one object per subcommand, e.g.
    {"simulate": {"F": "1/t", "dt": 0.001}}. Keys at the top level that
    are not subcommand names apply to every subcommand.
    """
    def __init__(self, config_file=None):
        self.config_file = Path(config_file) if config_file else None

        self.settings = {
            'common': {
                'log_level': DEFAULT_LOG_LEVEL,
            },
            'painleve': {
                'F': None,
                'psi': DEFAULT_PSI,
                'u0': DEFAULT_U0,
                'n4_form': 'corrected',
            },
            'simulate': {
                'F': '1',
                't0': 0.0,
                't1': 1.0,
                'dt': 1e-3,
                'nx': 1024,
                'xmin': -20.0 * math.pi,
                'xmax': 20.0 * math.pi,
                'init': 'standing:x0=0',
                'dump_every': 0,
                'pole_guard': POLE_GUARD,
            },
            'verify': {
                'case': 'standing',
            },
            'transform': {
                'spec': 'Dmap',
                't': None,
                'nx': None,
            },
            'sweep': {
                'formulas': None,
                'cases': None,
                'workers': 2,
            },
        }

        if self.config_file is not None:
            self.load_settings()

    def load_settings(self):
        """Load settings from file and merge them over the defaults"""
        try:
            with open(self.config_file, 'r', encoding='utf-8') as f:
                loaded = json.load(f)
        except FileNotFoundError as exc:
            raise ConfigError(f"config file {self.config_file} not found") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {self.config_file} is not valid JSON: {exc}") from exc
        if not isinstance(loaded, dict):
            raise ConfigError(f"config file {self.config_file} must hold a JSON object")
        self._merge_settings(loaded)
        logger.debug("loaded settings from %s", self.config_file)

    def save_settings(self, path=None):
        target = Path(path) if path else self.config_file
        if target is None:
            raise ConfigError("no config file to save to")
        with open(target, 'w', encoding='utf-8') as f:
            json.dump(self.settings, f, indent=2, sort_keys=True)
        return target

    def _merge_settings(self, loaded):
        """Merge loaded settings with defaults"""
        for category, values in loaded.items():
            if category in self.settings and isinstance(values, dict):
                self.settings[category].update(values)
            elif isinstance(values, dict):
                self.settings[category] = dict(values)
            else:
                self.settings['common'][category] = values

    def get(self, category, key=None):
        """Value of one key, or a whole category when key is None"""
        if key:
            return self.settings.get(category, {}).get(key)
        return self.settings.get(category)

    def set(self, category, key, value):
        """Set one key, creating the category if needed"""
        if category not in self.settings:
            self.settings[category] = {}
        self.settings[category][key] = value

    def for_command(self, name):
        """Common keys overlaid with the subcommand's own section"""
        merged = dict(self.settings['common'])
        merged.update(self.settings.get(name, {}))
        return merged
