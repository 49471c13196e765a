# Core modules
from .polycore import Polynomial, RootSplit, find_roots, split_roots
from .symbols import Symbol, RationalSymbol, parse_symbol, properness_test
from .rational import SpectralClassification, classify_point, deficiency, kernel_basis, cokernel_basis

# Discretization and validation suites
from .lab import Grid, LabSuite, suite_registry
from .lalescu import LalescuSuite

# Ambient
from .config import DEFAULT_CONFIG, load_config
from .storage import ReportStorage
from .utils import WienerHopfError, setup_logger

__version__ = "0.1.0"

__all__ = [
    'Polynomial', 'RootSplit', 'find_roots', 'split_roots',
    'Symbol', 'RationalSymbol', 'parse_symbol', 'properness_test',
    'SpectralClassification', 'classify_point', 'deficiency', 'kernel_basis', 'cokernel_basis',
    'Grid', 'LabSuite', 'suite_registry', 'LalescuSuite',
    'DEFAULT_CONFIG', 'load_config', 'ReportStorage', 'WienerHopfError', 'setup_logger',
]
