import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np

from ..config import DEFAULT_CONFIG
from ..lab import Grid, apply_wh, hardy_project, hilbert, negative_frequency_energy
from ..symbols import lalescu_symbol
from ..utils.exceptions import ValidationError
from .eigenfunctions import eigfun_q_grid
from .laguerre import MAX_ORDER, lambda_functions, laguerre_functions
from .quadrature import QuadratureRule, half_line_rule, panel_rule

logger = logging.getLogger(__name__)

TAIL_WARNING = 1e-6

SpectralFunction = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class SmoothBump:
    """exp(1 − 1/(1−u²))·cos(modulation·s) on (a, b) ⊂ (0, 2), u the rescaled variable"""
    a: float = 0.5
    b: float = 1.5
    modulation: float = 0.0
    amplitude: float = 1.0

    def __post_init__(self):
        if not 0 < self.a < self.b < 2:
            raise ValidationError(f"Bump support [{self.a}, {self.b}] must lie strictly inside (0, 2)")

    @property
    def support(self) -> Tuple[float, float]:
        return self.a, self.b

    def __call__(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        u = (2 * s - self.a - self.b) / (self.b - self.a)
        inside = np.abs(u) < 1
        values = np.zeros(s.shape)
        values[inside] = self.amplitude * np.exp(1 - 1 / (1 - u[inside] ** 2))
        return values * np.cos(self.modulation * s)

    def describe(self) -> str:
        return f"bump[{self.a:g},{self.b:g}]" + (f"·cos({self.modulation:g}s)" if self.modulation else "")


TEST_FUNCTIONS: Tuple[SmoothBump, ...] = (
    SmoothBump(0.5, 1.5),
    SmoothBump(0.3, 1.7),
    SmoothBump(0.8, 1.9),
    SmoothBump(1.0, 1.95),
    SmoothBump(0.5, 1.5, modulation=3.0),
)


def times_identity(h: SpectralFunction) -> SpectralFunction:
    """s ↦ s·h(s)"""
    return lambda s: np.asarray(s, dtype=float) * h(s)


def support_of(h: SpectralFunction) -> Tuple[float, float]:
    return tuple(getattr(h, 'support', (0.0, 2.0)))


def spectral_norm(h: SpectralFunction, support: Optional[Tuple[float, float]] = None,
                  panels: int = 64, order: int = 16) -> float:
    """‖h‖ in L²(0, 2)"""
    a, b = support or support_of(h)
    rule = panel_rule(a, b, panels, order)
    return rule.norm(h(rule.nodes))


def gamma_map(h: SpectralFunction) -> Callable[[np.ndarray], np.ndarray]:
    """Γh(y) = 2√y/(1+y²)·h(2/(1+y²)), unitary from L²(0, 2) onto L²(ℝ₊)"""
    def mapped(y):
        y = np.asarray(y, dtype=float)
        if np.any(y < 0):
            raise ValidationError("Γh is defined on y ≥ 0")
        return 2 * np.sqrt(y) / (1 + y ** 2) * h(2 / (1 + y ** 2))
    return mapped


def gamma_inverse(g: Callable[[np.ndarray], np.ndarray]) -> SpectralFunction:
    """Γ⁻¹g(s) = g(τ(s))/(s·√τ(s)) with τ(s) = (2/s − 1)^{1/2}"""
    def mapped(s):
        s = np.asarray(s, dtype=float)
        if np.any((s <= 0) | (s >= 2)):
            raise ValidationError("Γ⁻¹g is defined on (0, 2)")
        tau = np.sqrt(2 / s - 1)
        return g(tau) / (s * np.sqrt(tau))
    return mapped


def u_apply(g) -> Callable[[np.ndarray], np.ndarray]:
    """U g = Σ g_n λ_n for finitely many Laguerre coefficients"""
    g = np.asarray(g)
    if g.ndim != 1 or g.size == 0 or g.size > MAX_ORDER + 1:
        raise ValidationError(f"Expected 1..{MAX_ORDER + 1} coefficients, got shape {g.shape}")

    def mapped(x):
        return g @ lambda_functions(g.size - 1, x)
    return mapped


@dataclass
class LaguerreExpansion:
    """Coefficients of V h = Σ c_n l_n, with the energy the truncation missed"""
    coefficients: np.ndarray
    tail_energy: float
    warnings: List[str] = field(default_factory=list)

    def __call__(self, x) -> np.ndarray:
        return self.coefficients @ laguerre_functions(self.coefficients.size - 1, x)


def u_adjoint(f: Callable[[np.ndarray], np.ndarray], terms: int = 200,
              rule: Optional[QuadratureRule] = None) -> LaguerreExpansion:
    """
    U*f by extracting c_n = ⟨f, λ_n⟩ for n < terms

    Warns when the coefficients miss more than 1e−6 of ‖f‖².
    """
    if not 1 <= terms <= MAX_ORDER + 1:
        raise ValidationError(f"terms must lie in [1, {MAX_ORDER + 1}], got {terms}")
    rule = rule or half_line_rule(max(DEFAULT_CONFIG['lalescu']['quad_panels'], terms),
                                  DEFAULT_CONFIG['lalescu']['quad_order'])
    values = f(rule.nodes)
    coefficients = lambda_functions(terms - 1, rule.nodes) @ (values * rule.weights)
    energy = rule.norm(values) ** 2
    tail = max(0.0, 1.0 - float(np.sum(np.abs(coefficients) ** 2)) / energy) if energy > 0 else 0.0
    expansion = LaguerreExpansion(coefficients, tail)
    if tail > TAIL_WARNING:
        message = f"Laguerre truncation at {terms} terms misses {tail:.2e} of the energy"
        logger.warning(message)
        expansion.warnings.append(message)
    return expansion


def v_apply(h: SpectralFunction, terms: int = 200, rule: Optional[QuadratureRule] = None) -> LaguerreExpansion:
    """V h = U*Γh as a Laguerre expansion"""
    return u_adjoint(gamma_map(h), terms, rule)


def v_direct(h: SpectralFunction, x, norm_scale: float = 1.0,
             support: Optional[Tuple[float, float]] = None,
             panels: int = 64, order: int = 16) -> np.ndarray:
    """
    V h(x) = ∫ q(s, x)·h(s) ds by Gauss-Legendre panels over the support of h

    `norm_scale` multiplies the eigenfunction normalization n(s).
    """
    a, b = support or support_of(h)
    rule = panel_rule(a, b, panels, order)
    x = np.asarray(x, dtype=float)
    weighted = h(rule.nodes) * rule.weights
    return weighted @ eigfun_q_grid(rule.nodes, x, norm_scale)


def _interior_support(h: SpectralFunction) -> Tuple[float, float]:
    support = getattr(h, 'support', None)
    if support is None:
        raise ValidationError("h must carry a compact support inside (0, 2)")
    a, b = support
    if not 0 < a < b < 2:
        raise ValidationError(f"Support [{a}, {b}] touches the spectral edge {{0, 2}}")
    return a, b


def spectral_residual_W(h: SpectralFunction, grid: Grid, norm_scale: float = 1.0) -> float:
    """
    ‖W_λ(Vh) − V(id·h)‖/‖h‖ with W_λ the discretized Lalescu operator

    V is applied by direct quadrature on the grid points. The norm is taken
    over x ≤ x_max/2 to stay clear of the periodic wrap at the far end.
    """
    support = _interior_support(h)
    if not grid.half_line:
        raise ValidationError("spectral_residual_W needs a half-line grid")
    h_norm = spectral_norm(h, support)
    if h_norm == 0:
        return 0.0
    x = grid.points
    Vh = v_direct(h, x, norm_scale, support)
    V_sh = v_direct(times_identity(h), x, norm_scale, support)
    difference = apply_wh(lalescu_symbol(), Vh, grid) - V_sh
    inner = x <= grid.x_max / 2
    return float(np.sqrt(np.sum(np.abs(difference[inner]) ** 2) * grid.dx)) / h_norm


def unit_factor(x) -> np.ndarray:
    """u(x) = (x+i)/√(1+x²)"""
    x = np.asarray(x, dtype=float)
    return (x + 1j) / np.sqrt(1 + x ** 2)


def lalescu_weight(x) -> np.ndarray:
    """φ(x) = 2/(1+x²)"""
    x = np.asarray(x, dtype=float)
    return 2 / (1 + x ** 2)


def _full(grid: Grid) -> Grid:
    return grid.full_line() if grid.half_line else grid


def w_apply(h: SpectralFunction, grid: Grid) -> np.ndarray:
    """W h = M(u)·½(I+H)·(Γh)_oe on the full-line grid"""
    full = _full(grid)
    x = full.points
    odd = np.sign(x) * gamma_map(h)(np.abs(x))
    return unit_factor(x) * hardy_project(odd, full)


def singular_lalescu_apply(f: np.ndarray, grid: Grid) -> np.ndarray:
    """L_λ f = ½φf + ½√φ·H(√φ f) with φ = 2/(1+x²)"""
    full = _full(grid)
    phi = lalescu_weight(full.points)
    root = np.sqrt(phi)
    return 0.5 * phi * f + 0.5 * root * hilbert(root * f, full)


def w_isometry_residual(h: SpectralFunction, grid: Grid) -> float:
    full = _full(grid)
    h_norm = spectral_norm(h)
    return abs(full.norm(w_apply(h, grid)) - h_norm) / h_norm


def w_range_residual(h: SpectralFunction, grid: Grid) -> float:
    """Negative-frequency share of u⁻¹·Wh; ran W ⊂ M(u)H₊"""
    full = _full(grid)
    return negative_frequency_energy(w_apply(h, grid) / unit_factor(full.points), full)


def kernel_residual_L(grid: Grid) -> float:
    """‖L_λ(u·h₋)‖/‖u·h₋‖ for h₋ = 1/(x−i) in H₋"""
    full = _full(grid)
    x = full.points
    f = unit_factor(x) / (x - 1j)
    return full.norm(singular_lalescu_apply(f, full)) / full.norm(f)


def lalescu_commutation_residual(h: SpectralFunction, grid: Grid) -> float:
    """‖L_λ(Wh) − W(id·h)‖/‖h‖"""
    full = _full(grid)
    lhs = singular_lalescu_apply(w_apply(h, full), full)
    rhs = w_apply(times_identity(h), full)
    return full.norm(lhs - rhs) / spectral_norm(h)
