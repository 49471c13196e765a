import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
from scipy.linalg import toeplitz

from ..symbols import (
    BUILTIN_SYMBOLS, Symbol, TabulatedSymbol, is_bounded, symbol_builtin_name
)
from ..utils.exceptions import GridError, PoleError, UnboundedSymbolError, ValidationError
from .grid import Grid
from .transforms import SQRT_2PI, embed, fourier, fourier_from_dual, hilbert_matrix, restrict

logger = logging.getLogger(__name__)

SUPPORT_THRESHOLD = 1e-12
NEGATIVE_TOLERANCE = 1e-12


@dataclass
class OperatorMatrix:
    """
    Dense matrix of an operator between two grid spaces

    Row and column spaces carry their own quadrature weights, so the
    operator adjoint is (row_weight/col_weight)·entriesᴴ rather than the
    plain conjugate transpose.
    """
    entries: np.ndarray
    row_points: np.ndarray
    col_points: np.ndarray
    row_weight: float
    col_weight: float
    symbol: str = ''
    grid: Optional[Grid] = None
    wrap_energy: float = 0.0
    regularized: bool = False
    warnings: List[str] = field(default_factory=list)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entries.shape

    def adjoint(self) -> 'OperatorMatrix':
        return OperatorMatrix(
            entries=(self.row_weight / self.col_weight) * self.entries.conj().T,
            row_points=self.col_points, col_points=self.row_points,
            row_weight=self.col_weight, col_weight=self.row_weight,
            symbol=f"({self.symbol})*" if self.symbol else '', grid=self.grid,
            regularized=self.regularized, warnings=list(self.warnings),
        )

    def compose(self, other: 'OperatorMatrix') -> 'OperatorMatrix':
        """self ∘ other"""
        if self.entries.shape[1] != other.entries.shape[0]:
            raise GridError(f"Cannot compose {self.shape} with {other.shape}")
        return OperatorMatrix(
            entries=self.entries @ other.entries,
            row_points=self.row_points, col_points=other.col_points,
            row_weight=self.row_weight, col_weight=other.col_weight,
            grid=self.grid, regularized=self.regularized or other.regularized,
        )

    def apply(self, f: np.ndarray) -> np.ndarray:
        return self.entries @ np.asarray(f, dtype=complex)

    def norm(self) -> float:
        return float(np.linalg.norm(self.entries))

    def is_hermitian(self, tol: float = 1e-10) -> bool:
        if self.entries.shape[0] != self.entries.shape[1]:
            return False
        diff = self.entries - self.adjoint().entries
        return float(np.linalg.norm(diff)) <= tol * max(1.0, self.norm())

    def sidecar(self) -> Dict[str, Any]:
        grid = self.grid
        return {
            'x_max': grid.x_max if grid else None,
            'n': grid.n if grid else None,
            'half_line': grid.half_line if grid else None,
            'symbol': self.symbol,
            'wrap_energy': self.wrap_energy,
        }


def sample_symbol(symbol: Symbol, xi: np.ndarray) -> np.ndarray:
    """Symbol values on frequency nodes; poles and non-finite values raise PoleError"""
    try:
        values = symbol.evaluate(xi)
    except PoleError as e:
        raise PoleError(f"{symbol.describe()} has a pole on the frequency grid ({e}); "
                        f"shift the grid by changing x_max or n")
    if not np.all(np.isfinite(values)):
        bad = xi[~np.isfinite(values)][0]
        raise PoleError(f"{symbol.describe()} is not finite at ξ={bad:.6g} on the frequency grid; "
                        f"shift the grid by changing x_max or n")
    return values


def midpoint_frequencies(points: int, dx: float) -> np.ndarray:
    """Frequency nodes of the full-line midpoint grid with 2·points samples"""
    size = 2 * points
    dxi = 2 * np.pi / (size * dx)
    return -np.pi / dx + (np.arange(size) + 0.5) * dxi


def toeplitz_coefficients(values: np.ndarray, dx: float) -> Dict[int, complex]:
    """
    Coefficients c(m), |m| < N/2, of P₊FM(κ)F⁻¹P₊* for κ sampled on N midpoint frequencies

    c(m) = N⁻¹·Σ_k κ(ξ_k)·e^{−iξ_k·m·dx}, a Riemann sum for dx·k(m·dx).
    """
    size = len(values)
    xi0 = -np.pi / dx + np.pi / (size * dx)
    spectrum = np.fft.fft(values) / size
    half = size // 2
    m = np.arange(-(half - 1), half)
    coeffs = np.exp(-1j * m * dx * xi0) * spectrum[m % size]
    return dict(zip(m.tolist(), coeffs))


def _toeplitz_from(coeffs: Dict[int, complex], points: int) -> np.ndarray:
    column = np.array([coeffs[m] for m in range(points)])
    row = np.array([coeffs[-m] for m in range(points)])
    return toeplitz(column, row)


def _wrap_energy(coeffs: Dict[int, complex], points: int) -> float:
    energy = {m: abs(c) ** 2 for m, c in coeffs.items()}
    total = sum(energy.values())
    if total == 0.0:
        return 0.0
    return sum(e for m, e in energy.items() if abs(m) >= points // 2) / total


def wh_entries(symbol: Symbol, points: int, dx: float) -> Tuple[np.ndarray, float]:
    """Toeplitz entries of W_κ on `points` half-line midpoints of spacing dx, plus wrap energy"""
    values = sample_symbol(symbol, midpoint_frequencies(points, dx))
    coeffs = toeplitz_coefficients(values, dx)
    return _toeplitz_from(coeffs, points), _wrap_energy(coeffs, points)


def _boundedness_flag(symbol: Symbol, allow_regularized: bool) -> Tuple[bool, List[str]]:
    if is_bounded(symbol):
        return False, []
    if not allow_regularized:
        raise UnboundedSymbolError(
            f"{symbol.describe()} is unbounded; its discretization is a frequency-truncated "
            f"regularization (pass allow_regularized=True for qualitative use)"
        )
    message = (f"{symbol.describe()} is unbounded: the matrix represents a frequency-truncated "
               f"regularized operator, not a quantitative spectral claim")
    logger.warning(message)
    return True, [message]


def wh_matrix(symbol: Symbol, grid: Grid, allow_regularized: bool = False) -> OperatorMatrix:
    """
    Discretized Wiener-Hopf operator W_κ = P₊FM(κ)F⁻¹P₊* on a half-line grid

    The full-line FFT of length 2n makes the operator a Toeplitz matrix;
    entries are the coefficients c(j − l) of toeplitz_coefficients.

    Args:
        symbol: Symbol κ, sampled on grid.frequencies()
        grid: Half-line grid
        allow_regularized: Accept unbounded symbols and flag the result

    Returns:
        OperatorMatrix with the wrap-energy diagnostic
    """
    if not grid.half_line:
        raise GridError("wh_matrix needs a half-line grid")
    regularized, warnings = _boundedness_flag(symbol, allow_regularized)
    entries, wrap = wh_entries(symbol, grid.n, grid.dx)
    if wrap > 1e-3:
        message = f"W({symbol.describe()}) has wrap energy {wrap:.2e}; kernel does not decay before x_max/2"
        logger.warning(message)
        warnings.append(message)
    return OperatorMatrix(entries, grid.points, grid.points, grid.dx, grid.dx,
                          symbol=symbol.describe(), grid=grid, wrap_energy=wrap,
                          regularized=regularized, warnings=warnings)


def apply_wh(symbol: Symbol, f: np.ndarray, grid: Grid) -> np.ndarray:
    """W_κ f by FFT, without forming the matrix"""
    if not grid.half_line:
        raise GridError("apply_wh needs a half-line grid")
    full = grid.full_line()
    values = sample_symbol(symbol, full.dual().points)
    spread = fourier(embed(f, grid), full, inverse=True)
    if spread.ndim > 1:
        values = values.reshape((-1,) + (1,) * (spread.ndim - 1))
    return restrict(fourier_from_dual(values * spread, full, inverse=False), grid)


# Convolution kernels k(t) = (2π)⁻¹∫e^{−itξ}κ(ξ)dξ of builtin symbols
KERNELS: Dict[str, Callable[[np.ndarray], np.ndarray]] = {
    'lalescu': lambda t: np.exp(-np.abs(t)).astype(complex),
    'minus_tanh': lambda t: 1j / (2 * np.sinh(np.pi * t / 2)),
    'minus_sgn': lambda t: 1j / (np.pi * t),
}
PRINCIPAL_VALUE_KERNELS = ('minus_tanh', 'minus_sgn')


def kernel_reference_name(symbol: Symbol) -> Optional[str]:
    """Builtin kernel name matching the symbol, if there is one"""
    name = symbol_builtin_name(symbol)
    if name in KERNELS:
        return name
    for key in KERNELS:
        if BUILTIN_SYMBOLS[key]() == symbol:
            return key
    return None


def kernel_matrix(name: str, grid: Grid) -> OperatorMatrix:
    """
    Wiener-Hopf matrix by direct quadrature of a closed-form kernel

    Entry (j, l) is dx·k((j − l)·dx). Principal-value kernels drop the
    diagonal.
    """
    if name not in KERNELS:
        raise ValidationError(f"No closed-form kernel for '{name}'; known: {sorted(KERNELS)}")
    if not grid.half_line:
        raise GridError("kernel_matrix needs a half-line grid")
    kernel = KERNELS[name]
    m = np.arange(1, grid.n)
    column = np.empty(grid.n, dtype=complex)
    row = np.empty(grid.n, dtype=complex)
    diagonal = 0.0 if name in PRINCIPAL_VALUE_KERNELS else grid.dx * complex(kernel(np.array([0.0]))[0])
    column[0] = row[0] = diagonal
    column[1:] = grid.dx * kernel(m * grid.dx)
    row[1:] = grid.dx * kernel(-m * grid.dx)
    return OperatorMatrix(toeplitz(column, row), grid.points, grid.points, grid.dx, grid.dx,
                          symbol=f"kernel:{name}", grid=grid)


def _nonnegative_values(symbol: Symbol, xi: np.ndarray) -> np.ndarray:
    values = sample_symbol(symbol, xi)
    scale = np.maximum(1.0, np.abs(values))
    if np.any(np.abs(values.imag) > NEGATIVE_TOLERANCE * scale):
        raise ValidationError(f"{symbol.describe()} is not real on the frequency grid")
    values = values.real
    if np.any(values < -NEGATIVE_TOLERANCE):
        worst = float(np.min(values))
        raise ValidationError(f"{symbol.describe()} takes the negative value {worst:.3e}; a nonnegative symbol is required")
    return np.clip(values, 0.0, None)


def support_mask(values: np.ndarray) -> np.ndarray:
    """E = {κ > 0} on the frequency nodes"""
    return values > SUPPORT_THRESHOLD


def a_matrix(symbol: Symbol, grid: Grid) -> Tuple[OperatorMatrix, OperatorMatrix]:
    """
    Factor A = P₊FM(√κ)P_E* with W_κ = AA*

    A maps L²(E) on the frequency nodes of E = {κ > 0} into L²(ℝ₊) on the
    half-line grid: A[j, k] = dξ·(2π)^{-1/2}·e^{−i x_j ξ_k}·√κ(ξ_k).

    Args:
        symbol: Nonnegative symbol κ
        grid: Half-line grid

    Returns:
        (A, A*)
    """
    if not grid.half_line:
        raise GridError("a_matrix needs a half-line grid")
    freq_grid = grid.full_line().dual()
    values = _nonnegative_values(symbol, freq_grid.points)
    mask = support_mask(values)
    if not np.any(mask):
        raise ValidationError(f"{symbol.describe()} vanishes on the whole frequency grid")
    xi = freq_grid.points[mask]
    x = grid.points
    entries = (freq_grid.dx / SQRT_2PI) * np.exp(-1j * np.outer(x, xi)) * np.sqrt(values[mask])
    A = OperatorMatrix(entries, x, xi, grid.dx, freq_grid.dx, symbol=f"A[{symbol.describe()}]", grid=grid)
    return A, A.adjoint()


def restricted_hilbert(grid: Grid, mask: np.ndarray) -> np.ndarray:
    """H_E = P_E·H·P_E* on the frequency nodes selected by `mask`"""
    freq_grid = grid.full_line().dual()
    return hilbert_matrix(freq_grid)[np.ix_(mask, mask)]


def singular_matrix(phi: Symbol, grid: Grid) -> OperatorMatrix:
    """
    L_φ = ½M(φ) + ½M(√φ)H_E M(√φ) on the frequency nodes of E = {φ > 0}

    H_E is the FFT Hilbert transform on the frequency grid compressed to
    E, which takes care of the principal value.
    """
    if not grid.half_line:
        raise GridError("singular_matrix needs a half-line grid")
    freq_grid = grid.full_line().dual()
    values = _nonnegative_values(phi, freq_grid.points)
    mask = support_mask(values)
    if not np.any(mask):
        raise ValidationError(f"{phi.describe()} vanishes on the whole frequency grid")
    root = np.sqrt(values[mask])
    entries = 0.5 * np.diag(values[mask]).astype(complex) \
        + 0.5 * root[:, None] * restricted_hilbert(grid, mask) * root[None, :]
    xi = freq_grid.points[mask]
    return OperatorMatrix(entries, xi, xi, freq_grid.dx, freq_grid.dx,
                          symbol=f"L[{phi.describe()}]", grid=grid)


def _general_values(a: Symbol, b: Symbol, xi: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    a_values = sample_symbol(a, xi)
    if np.any(np.abs(a_values.imag) > NEGATIVE_TOLERANCE * np.maximum(1.0, np.abs(a_values))):
        raise ValidationError(f"a = {a.describe()} must be real")
    return a_values.real, sample_symbol(b, xi)


def general_singular_matrix(a: Symbol, b: Symbol, grid: Grid) -> OperatorMatrix:
    """L(a, b) = M(a) + M(b)H_E M(b̄) on E = {b ≠ 0}"""
    if not grid.half_line:
        raise GridError("general_singular_matrix needs a half-line grid")
    freq_grid = grid.full_line().dual()
    a_values, b_values = _general_values(a, b, freq_grid.points)
    mask = np.abs(b_values) > SUPPORT_THRESHOLD
    if not np.any(mask):
        raise ValidationError(f"b = {b.describe()} vanishes on the whole frequency grid")
    bE = b_values[mask]
    entries = np.diag(a_values[mask]).astype(complex) \
        + bE[:, None] * restricted_hilbert(grid, mask) * bE.conj()[None, :]
    xi = freq_grid.points[mask]
    return OperatorMatrix(entries, xi, xi, freq_grid.dx, freq_grid.dx,
                          symbol=f"L[{a.describe()}; {b.describe()}]", grid=grid)


@dataclass
class GeneralReduction:
    """U·L(a, b)·U⁻¹ = L_φ + M(α) with U = M(u)"""
    phi: TabulatedSymbol
    alpha: TabulatedSymbol
    u: TabulatedSymbol


def general_singular_reduce(a: Symbol, b: Symbol, grid: Grid) -> GeneralReduction:
    """
    φ = 2|b|², α = a − |b|², u = b̄/|b|, tabulated on the frequency nodes

    Raises:
        ValidationError: b vanishes at a frequency node or a is not real
    """
    if not grid.half_line:
        raise GridError("general_singular_reduce needs a half-line grid")
    xi = grid.frequencies()
    a_values, b_values = _general_values(a, b, xi)
    modulus = np.abs(b_values)
    zeros = modulus <= SUPPORT_THRESHOLD * max(1.0, float(np.max(modulus)))
    if np.any(zeros):
        raise ValidationError(f"b = {b.describe()} vanishes at ξ={xi[zeros][0]:.6g}; "
                              f"the reduction needs b ≠ 0 on the grid")
    grid_points = tuple(xi)
    return GeneralReduction(
        phi=TabulatedSymbol(grid_points, tuple(2 * modulus ** 2), label='phi'),
        alpha=TabulatedSymbol(grid_points, tuple(a_values - modulus ** 2), label='alpha'),
        u=TabulatedSymbol(grid_points, tuple(b_values.conj() / modulus), label='u'),
    )
