import copy
import json
import logging
import os
from typing import Any, Dict, Optional

from dotenv import load_dotenv

from .utils.exceptions import ValidationError

logger = logging.getLogger(__name__)

# Root-finding and splitting
EPS_REAL = 1e-9
CLUSTER_RADIUS = 1e-7
ZERO_THRESHOLD = 1e-12

DEFAULT_CONFIG: Dict[str, Any] = {
    'polycore': {
        'eps_real': EPS_REAL,
        'cluster_radius': CLUSTER_RADIUS,
        'zero_threshold': ZERO_THRESHOLD,
        'newton_steps': 8,
        'residual_tolerance': 1e-6,
    },
    'symbol': {
        'range_samples': 4001,
        'range_tol': 1e-6,
    },
    'quadrature': {
        'epsabs': 1e-11,
        'epsrel': 1e-11,
        'limit': 400,
        'core_extent': 10.0,
        'table_min_extent': 50.0,
    },
    'lab': {
        'x_max': 20.0,
        'n': [512, 1024],
        'tol_constant': 1.0,
        'rank_tol': 1e-8,
        'min_ratio': 1.4,
        'residual_floor': 1e-10,
    },
    'lalescu': {
        'max_n': 15,
        'cheb_max_n': 20,
        'moment_max_k': 10,
        'laguerre_terms': 200,
        'quad_panels': 64,
        'quad_order': 16,
        'grid_points': 4096,
        'x_max': 160.0,
        'bump': [0.5, 1.5],
        'perturb_norm': 1.0,
    },
    'cli': {
        'seed': 42,
        'output_dir': 'output',
    },
    'logging': {
        'level': 'INFO',
        'file': None,
    },
}


def _deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(path: Optional[str] = None) -> Dict[str, Any]:
    """
    Load the run configuration

    Defaults are merged with a JSON file taken from `path`, or from the
    WH_CONFIG environment variable (a .env file is honoured). WH_LOG_LEVEL
    and WH_LOG_FILE override the logging section.

    Args:
        path: Optional JSON config path

    Returns:
        Resolved configuration dict
    """
    load_dotenv()
    config = copy.deepcopy(DEFAULT_CONFIG)
    config_file = path or os.getenv('WH_CONFIG')

    if config_file:
        if not os.path.exists(config_file):
            raise ValidationError(f"Config file not found: {config_file}")
        try:
            with open(config_file, 'r', encoding='utf-8') as f:
                user_config = json.load(f)
        except json.JSONDecodeError as e:
            raise ValidationError(f"Config file {config_file} is not valid JSON: {e}")
        config = _deep_merge(config, user_config)
        logger.info(f"Config loaded: {config_file}")

    if os.getenv('WH_LOG_LEVEL'):
        config['logging']['level'] = os.getenv('WH_LOG_LEVEL')
    if os.getenv('WH_LOG_FILE'):
        config['logging']['file'] = os.getenv('WH_LOG_FILE')

    return config
