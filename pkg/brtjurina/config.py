import json
import os
from fractions import Fraction

from brtjurina.errors import InputError


RF_CAP_ENV = 'SAITO_RF_CAP'

DEFAULTS = {
    'order': 'negdegrevlex',
    'rf_cap': 8,
    'lambda_values': ['2', '5', '-7/3'],
    'log_path': None,
    'table': {
        'm_min': 1,
        'm_max': 4,
        'workers': 1
    }
}


class Config:
    """Class to handle brtjurina_config.json.

    Missing keys fall back to `DEFAULTS`; the r_f cap can additionally be
    overridden by the SAITO_RF_CAP environment variable.

    Args:
        config_path (str, optional): Path to the json config. If None only
            the defaults (and the environment) are used.
    """

    def __init__(self, config_path=None):
        self.config = json.loads(json.dumps(DEFAULTS))
        if config_path is not None:
            try:
                with open(config_path, 'r') as f:
                    user_config = json.load(f)
            except (OSError, json.JSONDecodeError) as exc:
                raise InputError(f"Cannot read config '{config_path}': {exc}")
            table = user_config.pop('table', {})
            self.config.update(user_config)
            self.config['table'].update(table)

    def get(self, key):
        return self.config[key]

    def get_table(self, key):
        return self.config['table'][key]

    def get_order(self):
        return self.config['order']

    def get_rf_cap(self):
        env_value = os.environ.get(RF_CAP_ENV)
        value = env_value if env_value is not None else self.config['rf_cap']
        try:
            cap = int(value)
        except (TypeError, ValueError):
            raise InputError(f"r_f cap must be an integer, got '{value}'")
        if cap < 1:
            raise InputError(f'r_f cap must be at least 1, got {cap}')
        return cap

    def get_lambda_values(self):
        try:
            return [Fraction(v) for v in self.config['lambda_values']]
        except (TypeError, ValueError, ZeroDivisionError):
            raise InputError('lambda_values must be a list of rationals, got '
                             f"{self.config['lambda_values']}")
