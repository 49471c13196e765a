import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
from scipy.linalg import eigvalsh

from ..symbols import ConstantSymbol, ScaledSymbol, SumSymbol, Symbol, essential_bounds
from ..utils.exceptions import UnboundedSymbolError, ValidationError
from .grid import Grid, tolerance
from .operators import OperatorMatrix, wh_entries, wh_matrix

logger = logging.getLogger(__name__)

MatrixLike = Union[OperatorMatrix, np.ndarray]


def _entries(M: MatrixLike) -> np.ndarray:
    return M.entries if isinstance(M, OperatorMatrix) else np.asarray(M)


def relative_residual(actual: MatrixLike, expected: MatrixLike) -> float:
    """‖actual − expected‖_F / ‖expected‖_F (absolute when expected is zero)"""
    a, e = _entries(actual), _entries(expected)
    if a.shape != e.shape:
        raise ValidationError(f"Shape mismatch {a.shape} vs {e.shape}")
    diff = float(np.linalg.norm(a - e))
    scale = float(np.linalg.norm(e))
    return diff / scale if scale > 0 else diff


@dataclass
class CheckResult:
    """One named identity or convergence check of a validation report"""
    name: str
    residual: float
    tolerance: float
    passed: bool
    parameters: Dict[str, Any] = field(default_factory=dict)
    residuals: List[float] = field(default_factory=list)
    ratio: Optional[float] = None
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        data = {
            'check_name': self.name,
            'parameters': self.parameters,
            'residual': self.residual,
            'tolerance': self.tolerance,
            'pass': bool(self.passed),
        }
        if self.residuals:
            data['residuals'] = list(self.residuals)
            data['ratio'] = self.ratio
        if self.notes:
            data['notes'] = list(self.notes)
        return data


def threshold_check(name: str, residual: float, tol: float,
                    parameters: Optional[Dict[str, Any]] = None) -> CheckResult:
    residual = float(residual)
    return CheckResult(name, residual, float(tol), bool(residual <= tol), dict(parameters or {}))


def convergence_check(name: str, residuals: Sequence[float], tol: float, floor: float,
                      min_ratio: float = 1.4, independent: bool = True,
                      parameters: Optional[Dict[str, Any]] = None) -> CheckResult:
    """
    Residuals at successive refinements

    Passes when the finest residual is below `floor`. With an independent
    reference discretization it also passes when the coarse residual is
    within `tol` and the residual drops by at least `min_ratio` per
    refinement.
    """
    residuals = [float(r) for r in residuals]
    coarse, fine = residuals[0], residuals[-1]
    ratio = coarse / fine if fine > 0 else float('inf')
    converged = independent and coarse <= tol and all(
        (a / b if b > 0 else float('inf')) >= min_ratio for a, b in zip(residuals, residuals[1:])
    )
    passed = fine <= floor or converged
    return CheckResult(name, fine, float(tol), bool(passed), dict(parameters or {}),
                       residuals=residuals, ratio=ratio)


@dataclass
class FriedrichsShift:
    """κ = η·(ϰ − α) with ϰ = α + ηκ ≥ 0"""
    eta: int
    alpha: float
    kappa_shifted: Symbol

    def reconstruct(self, spectrum: np.ndarray) -> np.ndarray:
        """Map spectral values of W_ϰ back to W_κ: −ηα + η·s"""
        return -self.eta * self.alpha + self.eta * np.asarray(spectrum)


def friedrichs_shift(kappa: Symbol) -> FriedrichsShift:
    """
    Shift a real semibounded symbol to a nonnegative one

    Raises:
        UnboundedSymbolError: κ is unbounded above and below
    """
    lower, upper = essential_bounds(kappa)
    if lower >= 0:
        eta, alpha = 1, 0.0
    elif upper <= 0:
        eta, alpha = -1, 0.0
    elif np.isfinite(lower):
        eta, alpha = 1, -lower
    elif np.isfinite(upper):
        eta, alpha = -1, upper
    else:
        raise UnboundedSymbolError(f"{kappa.describe()} is unbounded above and below; no Friedrichs shift exists")

    if alpha == 0.0:
        shifted = kappa if eta == 1 else ScaledSymbol(-1.0, kappa)
    else:
        shifted = SumSymbol((ConstantSymbol(alpha), ScaledSymbol(float(eta), kappa)))
    logger.debug(f"friedrichs shift of {kappa.describe()}: eta={eta}, alpha={alpha}")
    return FriedrichsShift(eta, float(alpha), shifted)


def shift_invariance_residual(symbol: Symbol, b: float, grid: Grid) -> float:
    """
    ‖S_b* W S_b − W‖/‖W‖ with the unilateral shift S_b by b = k·dx

    W on [0, x_max + b] is assembled at the same spacing, so S_b* W_ext S_b
    is the diagonal block starting at row k.
    """
    if not grid.half_line:
        raise ValidationError("shift_invariance_residual needs a half-line grid")
    if b < 0 or b > grid.x_max:
        raise ValidationError(f"Shift b={b} must lie in [0, x_max={grid.x_max}]")
    steps = b / grid.dx
    k = int(round(steps))
    if abs(steps - k) > 1e-9 * max(1.0, steps):
        raise ValidationError(f"Shift b={b} is not a multiple of the grid spacing {grid.dx}")

    W = wh_matrix(symbol, grid)
    if k == 0:
        return 0.0
    extended, _ = wh_entries(symbol, grid.n + k, grid.dx)
    block = extended[k:k + grid.n, k:k + grid.n]
    return relative_residual(block, W.entries)


@dataclass
class SpectralEnclosure:
    eigenvalues: np.ndarray
    lower: float
    upper: float
    tolerance: float
    contained: bool
    excess: float


def spectral_enclosure(symbol: Symbol, grid: Grid, tol: Optional[float] = None) -> SpectralEnclosure:
    """
    Eigenvalues of W_κ for a real bounded κ against [ess inf κ, ess sup κ]

    `excess` is the largest distance of an eigenvalue outside the interval.
    """
    if not symbol.is_real():
        raise ValidationError(f"Spectral enclosure needs a real symbol, got {symbol.describe()}")
    lower, upper = essential_bounds(symbol)
    if not (np.isfinite(lower) and np.isfinite(upper)):
        raise UnboundedSymbolError(f"{symbol.describe()} is unbounded; ess range [{lower}, {upper}]")
    tol = tolerance(grid.n) if tol is None else tol
    W = wh_matrix(symbol, grid)
    eigenvalues = eigvalsh(0.5 * (W.entries + W.entries.conj().T))
    excess = float(max(0.0, lower - eigenvalues[0], eigenvalues[-1] - upper))
    return SpectralEnclosure(eigenvalues, lower, upper, tol, excess <= tol, excess)
