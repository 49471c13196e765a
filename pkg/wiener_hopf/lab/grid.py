from dataclasses import dataclass

import numpy as np

from ..utils.exceptions import GridError


def is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class Grid:
    """
    Uniform midpoint grid on [0, x_max] (half_line) or [−x_max, x_max]

    Points sit at cell midpoints, so the full-line grid is symmetric and
    never contains 0. The frequency grid of a full-line grid (`dual`) has
    the same number of points and spacing 2π/(n·dx); the dual of the dual
    is the original grid.
    """
    x_max: float
    n: int
    half_line: bool = True

    def __post_init__(self):
        if not np.isfinite(self.x_max) or self.x_max <= 0:
            raise GridError(f"x_max must be positive and finite, got {self.x_max}")
        if int(self.n) != self.n or not is_power_of_two(int(self.n)):
            raise GridError(f"n must be a power of two, got {self.n}")
        object.__setattr__(self, 'x_max', float(self.x_max))
        object.__setattr__(self, 'n', int(self.n))

    @property
    def length(self) -> float:
        return self.x_max if self.half_line else 2 * self.x_max

    @property
    def dx(self) -> float:
        return self.length / self.n

    @property
    def start(self) -> float:
        return 0.0 if self.half_line else -self.x_max

    @property
    def points(self) -> np.ndarray:
        return self.start + (np.arange(self.n) + 0.5) * self.dx

    @property
    def weight(self) -> float:
        """Quadrature weight of the inner product ⟨f, g⟩ = Σ conj(f)·g·dx"""
        return self.dx

    def full_line(self) -> 'Grid':
        """Full-line grid with the same spacing; half-line points are its upper half"""
        if not self.half_line:
            return self
        return Grid(self.x_max, 2 * self.n, half_line=False)

    def dual(self) -> 'Grid':
        if self.half_line:
            raise GridError("Only full-line grids have a frequency grid; call full_line() first")
        return Grid(np.pi / self.dx, self.n, half_line=False)

    def frequencies(self) -> np.ndarray:
        """Frequency nodes ξ_k used for symbol sampling"""
        return self.full_line().dual().points

    def refined(self) -> 'Grid':
        """Twice as many points on the same interval"""
        return Grid(self.x_max, 2 * self.n, self.half_line)

    def extended(self) -> 'Grid':
        """Twice the interval at the same spacing"""
        return Grid(2 * self.x_max, 2 * self.n, self.half_line)

    def inner(self, f: np.ndarray, g: np.ndarray) -> complex:
        return complex(np.vdot(f, g) * self.dx)

    def norm(self, f: np.ndarray) -> float:
        return float(np.sqrt(np.sum(np.abs(f) ** 2) * self.dx))

    def to_dict(self) -> dict:
        return {'x_max': self.x_max, 'n': self.n, 'half_line': self.half_line}


def tolerance(n: int, constant: float = 1.0) -> float:
    """tol(n) = C/√n, the fixed-n acceptance threshold"""
    return constant / np.sqrt(n)
