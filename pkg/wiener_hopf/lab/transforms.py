import logging

import numpy as np

from ..utils.exceptions import GridError
from .grid import Grid

logger = logging.getLogger(__name__)

SQRT_2PI = np.sqrt(2 * np.pi)


def _check_full_line(f: np.ndarray, grid: Grid) -> np.ndarray:
    if grid.half_line:
        raise GridError("Fourier and Hilbert transforms act on full-line grids; embed with embed() first")
    f = np.asarray(f, dtype=complex)
    if f.shape[0] != grid.n:
        raise GridError(f"Vector of length {f.shape[0]} does not match grid with n={grid.n}")
    return f


def _column(v: np.ndarray, f: np.ndarray) -> np.ndarray:
    # broadcast a length-n phase along axis 0 of f
    return v.reshape((-1,) + (1,) * (f.ndim - 1))


def fourier(f: np.ndarray, grid: Grid, inverse: bool = False) -> np.ndarray:
    """
    Continuum-normalized Fourier transform of samples on a full-line grid

    (Ff)(ξ_k) = (2π)^{-1/2}·dx·Σ_j e^{∓i x_j ξ_k} f_j, evaluated on
    grid.dual() by one FFT. `inverse=True` uses the e^{+ixξ} kernel.
    Acts along axis 0, so matrices are transformed column by column.

    Args:
        f: Samples on `grid` (vector or matrix)
        grid: Full-line grid
        inverse: Kernel sign

    Returns:
        Samples on grid.dual()
    """
    f = _check_full_line(f, grid)
    dual = grid.dual()
    x0, xi0 = grid.points[0], dual.points[0]
    j = np.arange(grid.n)
    sign = 1.0 if inverse else -1.0
    pre = _column(np.exp(sign * 1j * j * grid.dx * xi0), f)
    post = _column(np.exp(sign * 1j * x0 * dual.points), f)
    if inverse:
        spectrum = np.fft.ifft(f * pre, axis=0) * grid.n
    else:
        spectrum = np.fft.fft(f * pre, axis=0)
    return grid.dx / SQRT_2PI * post * spectrum


def fourier_from_dual(values: np.ndarray, grid: Grid, inverse: bool = True) -> np.ndarray:
    """
    Transform samples on grid.dual() back to `grid`

    With the default `inverse=True` this is the exact inverse of
    fourier(·, grid); `inverse=False` applies F twice, so
    fourier_from_dual(fourier(f), inverse=False) is f reflected.
    """
    if grid.half_line:
        raise GridError("fourier_from_dual needs a full-line grid")
    dual = grid.dual()
    values = np.asarray(values, dtype=complex)
    if values.shape[0] != dual.n:
        raise GridError(f"Vector of length {values.shape[0]} does not match frequency grid with n={dual.n}")
    x0, xi0 = grid.points[0], dual.points[0]
    k = np.arange(dual.n)
    sign = 1.0 if inverse else -1.0
    pre = _column(np.exp(sign * 1j * k * dual.dx * x0), values)
    post = _column(np.exp(sign * 1j * xi0 * grid.points), values)
    if inverse:
        samples = np.fft.ifft(values * pre, axis=0) * dual.n
    else:
        samples = np.fft.fft(values * pre, axis=0)
    return dual.dx / SQRT_2PI * post * samples


def hilbert(f: np.ndarray, grid: Grid) -> np.ndarray:
    """
    H = F⁻¹ M(sgn) F

    The midpoint frequency grid has no ξ = 0 node, so the sign multiplier
    is ±1 everywhere and H² = I holds to round-off.
    """
    f = _check_full_line(f, grid)
    sgn = _column(np.sign(grid.dual().points), f)
    return fourier_from_dual(sgn * fourier(f, grid), grid)


def hardy_project(f: np.ndarray, grid: Grid) -> np.ndarray:
    """½(I + H): orthogonal projection onto the positive-frequency space H₊"""
    f = _check_full_line(f, grid)
    return 0.5 * (f + hilbert(f, grid))


def hilbert_matrix(grid: Grid) -> np.ndarray:
    return hilbert(np.eye(grid.n, dtype=complex), grid)


def negative_frequency_energy(f: np.ndarray, grid: Grid) -> float:
    """Share of ‖f‖² carried by ξ < 0"""
    spectrum = fourier(_check_full_line(f, grid), grid)
    energy = np.abs(spectrum) ** 2
    total = float(np.sum(energy))
    if total == 0.0:
        return 0.0
    return float(np.sum(energy[grid.dual().points < 0])) / total


def embed(f: np.ndarray, grid: Grid) -> np.ndarray:
    """P₊*: zero extension of a half-line vector to grid.full_line()"""
    if not grid.half_line:
        raise GridError("embed expects a half-line grid")
    f = np.asarray(f, dtype=complex)
    if f.shape[0] != grid.n:
        raise GridError(f"Vector of length {f.shape[0]} does not match grid with n={grid.n}")
    out = np.zeros((2 * grid.n,) + f.shape[1:], dtype=complex)
    out[grid.n:] = f
    return out


def restrict(f: np.ndarray, grid: Grid) -> np.ndarray:
    """P₊: restriction of a full-line vector to the half-line `grid`"""
    if not grid.half_line:
        raise GridError("restrict expects the half-line grid as target")
    f = np.asarray(f, dtype=complex)
    if f.shape[0] != 2 * grid.n:
        raise GridError(f"Vector of length {f.shape[0]} does not match full-line grid with n={2 * grid.n}")
    return f[grid.n:]
