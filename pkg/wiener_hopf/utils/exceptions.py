from typing import Optional, Sequence


class WienerHopfError(Exception):
    """Base class for all errors raised by the wiener_hopf package"""
    pass

class ValidationError(WienerHopfError):
    """Raised when input validation fails"""
    pass

class ParseError(ValidationError):
    """Raised when polynomial, symbol or grid text cannot be parsed"""
    pass

class GridError(ValidationError):
    """Raised when a grid violates its invariants or has the wrong shape"""
    pass

class PoleError(WienerHopfError):
    """Raised when a symbol is evaluated at one of its real poles"""
    pass

class UnboundedSymbolError(WienerHopfError):
    """Raised when a bounded or semibounded symbol is required"""
    pass

class ConditioningError(WienerHopfError):
    """Raised when a root that must be off the real axis is numerically real"""
    pass

class NumericalFailureError(WienerHopfError):
    """Raised when root refinement does not converge"""

    def __init__(self, message: str, residuals: Optional[Sequence[float]] = None):
        super().__init__(message)
        self.residuals = list(residuals) if residuals is not None else []
