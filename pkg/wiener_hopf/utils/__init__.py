from .exceptions import (
    WienerHopfError, ValidationError, ParseError, GridError, PoleError,
    UnboundedSymbolError, ConditioningError, NumericalFailureError
)
from .logger import setup_logger

__all__ = [
    'WienerHopfError', 'ValidationError', 'ParseError', 'GridError', 'PoleError',
    'UnboundedSymbolError', 'ConditioningError', 'NumericalFailureError',
    'setup_logger'
]
