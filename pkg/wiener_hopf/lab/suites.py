import logging
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Callable, Dict, List, Optional, Type

import numpy as np

from ..config import DEFAULT_CONFIG
from ..symbols import (
    ConstantSymbol, IndicatorSymbol, ScaledSymbol, SumSymbol, Symbol, TabulatedSymbol,
    lalescu_symbol, minus_tanh_symbol
)
from ..utils.exceptions import ValidationError
from .grid import Grid, is_power_of_two, tolerance
from .identities import (
    CheckResult, convergence_check, friedrichs_shift, relative_residual,
    shift_invariance_residual, spectral_enclosure, threshold_check
)
from .operators import (
    PRINCIPAL_VALUE_KERNELS, OperatorMatrix, a_matrix, general_singular_matrix, general_singular_reduce,
    kernel_matrix, kernel_reference_name, restricted_hilbert, sample_symbol, singular_matrix,
    support_mask, wh_matrix
)
from .polar import polar_isometry
from .transforms import (
    fourier, fourier_from_dual, hardy_project, hilbert
)


def kernel_agreement(W: OperatorMatrix, K: OperatorMatrix, grid: Grid) -> float:
    """Relative gap between Wf and Kf for a Gaussian f, measured on [0, x_max/2]"""
    x = grid.points
    f = np.exp(-(x - grid.x_max / 4) ** 2 / 2)
    inner = x <= grid.x_max / 2
    Wf = W.apply(f)
    return float(np.linalg.norm((K.apply(f) - Wf)[inner]) / np.linalg.norm(Wf[inner]))


@dataclass
class SuiteResult:
    """Lab suite execution result"""
    suite_name: str
    checks: List[CheckResult]
    parameters: Dict[str, Any]
    execution_time: datetime
    elapsed: float = 0.0
    dumps: Dict[str, Any] = field(default_factory=dict)
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failed_checks(self) -> List[str]:
        return [check.name for check in self.checks if not check.passed]

    def to_dict(self, include_timestamp: bool = True) -> Dict[str, Any]:
        data = {
            'suite': self.suite_name,
            'passed': self.passed,
            'parameters': self.parameters,
            'checks': [check.to_dict() for check in self.checks],
            'metadata': self.metadata,
        }
        if include_timestamp:
            data['execution_time'] = self.execution_time.isoformat()
            data['elapsed_seconds'] = self.elapsed
        return data


class LabSuite(ABC):
    """Base class for the half-line lab identity suites"""

    default_symbol: Optional[Callable[[], Symbol]] = None

    def __init__(self, name: str, description: str = ""):
        self.name = name
        self.description = description
        self.logger = logging.getLogger(f"{__name__}.{name}")
        lab = DEFAULT_CONFIG['lab']
        self.parameters: Dict[str, Any] = {
            'x_max': lab['x_max'],
            'n': list(lab['n']),
            'tol_constant': lab['tol_constant'],
            'rank_tol': lab['rank_tol'],
            'min_ratio': lab['min_ratio'],
            'residual_floor': lab['residual_floor'],
            'seed': DEFAULT_CONFIG['cli']['seed'],
            'allow_regularized': False,
        }

    @abstractmethod
    def run(self, symbol: Optional[Symbol] = None) -> SuiteResult:
        """
        Run the suite's checks at every grid size

        Args:
            symbol: Symbol under test; the suite default when None

        Returns:
            SuiteResult
        """
        pass

    def validate_parameters(self, parameters: Dict[str, Any]) -> bool:
        sizes = parameters.get('n', self.parameters['n'])
        if isinstance(sizes, int):
            sizes = [sizes]
        if not sizes or any(not isinstance(n, (int, np.integer)) or not is_power_of_two(int(n)) for n in sizes):
            return False
        if float(parameters.get('x_max', self.parameters['x_max'])) <= 0:
            return False
        for key in ('tol_constant', 'rank_tol', 'min_ratio', 'residual_floor'):
            if key in parameters and float(parameters[key]) <= 0:
                return False
        return True

    def set_parameters(self, parameters: Dict[str, Any]):
        if not self.validate_parameters(parameters):
            raise ValidationError(f"Invalid parameters for suite {self.name}: {parameters}")
        parameters = dict(parameters)
        if isinstance(parameters.get('n'), int):
            parameters['n'] = [parameters['n']]
        self.parameters.update(parameters)
        self.logger.info(f"Parameters updated: {parameters}")

    def get_parameter_schema(self) -> Dict[str, Any]:
        return {
            'x_max': {'type': 'float', 'min': 0.0},
            'n': {'type': 'list[int]', 'constraint': 'powers of two'},
            'tol_constant': {'type': 'float', 'min': 0.0},
            'rank_tol': {'type': 'float', 'min': 0.0},
            'min_ratio': {'type': 'float', 'min': 0.0},
            'residual_floor': {'type': 'float', 'min': 0.0},
            'seed': {'type': 'int'},
            'allow_regularized': {'type': 'bool'},
        }

    def get_parameter_info(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'description': self.description,
            'parameters': self.parameters,
            'parameter_schema': self.get_parameter_schema()
        }

    def grids(self) -> List[Grid]:
        return [Grid(self.parameters['x_max'], int(n)) for n in self.parameters['n']]

    def tol(self, n: int) -> float:
        return tolerance(n, self.parameters['tol_constant'])

    def resolve_symbol(self, symbol: Optional[Symbol]) -> Optional[Symbol]:
        if symbol is None and self.default_symbol is not None:
            return self.default_symbol()
        return symbol

    def convergence(self, name: str, residuals: List[float], independent: bool = False,
                    tol: Optional[float] = None, **parameters) -> CheckResult:
        sizes = [int(n) for n in self.parameters['n']]
        return convergence_check(
            name, residuals,
            tol=self.tol(sizes[0]) if tol is None else tol,
            floor=self.parameters['residual_floor'],
            min_ratio=self.parameters['min_ratio'],
            independent=independent,
            parameters={'n': sizes, 'x_max': self.parameters['x_max'], **parameters},
        )

    def finish(self, checks: List[CheckResult], started: float, symbol: Optional[Symbol],
               dumps: Optional[Dict[str, Any]] = None, **metadata) -> SuiteResult:
        result = SuiteResult(
            suite_name=self.name,
            checks=checks,
            parameters=dict(self.parameters),
            execution_time=datetime.now(),
            elapsed=time.perf_counter() - started,
            dumps=dumps or {},
            metadata={'symbol': symbol.describe() if symbol is not None else None, **metadata},
        )
        for check in checks:
            level = logging.INFO if check.passed else logging.WARNING
            self.logger.log(level, f"{check.name}: residual {check.residual:.3e} "
                                   f"(tol {check.tolerance:.1e}) {'pass' if check.passed else 'FAIL'}")
        return result

    def __str__(self):
        return f"LabSuite({self.name})"

    def __repr__(self):
        return f"LabSuite({self.name}, params={self.parameters})"


class FactorizationSuite(LabSuite):
    """AA* = W_κ and A*A = L_κ for a nonnegative symbol"""

    default_symbol = staticmethod(lalescu_symbol)

    def __init__(self):
        super().__init__('factorization', 'Factorization identities AA* = W and A*A = L')

    def run(self, symbol: Optional[Symbol] = None) -> SuiteResult:
        started = time.perf_counter()
        symbol = self.resolve_symbol(symbol)
        outer, inner, hermitian, quadrature = [], [], [], []
        dumps: Dict[str, Any] = {}
        # AA* = W holds to round-off; the closed-form kernel is an independent reference
        kernel = kernel_reference_name(symbol)
        if kernel in PRINCIPAL_VALUE_KERNELS:
            kernel = None
        for grid in self.grids():
            W = wh_matrix(symbol, grid, allow_regularized=self.parameters['allow_regularized'])
            A, Astar = a_matrix(symbol, grid)
            L = singular_matrix(symbol, grid)
            outer.append(relative_residual(A.compose(Astar), W))
            inner.append(relative_residual(Astar.compose(A), L))
            hermitian.append(relative_residual(W, W.adjoint()))
            if kernel is not None:
                quadrature.append(kernel_agreement(A.compose(Astar), kernel_matrix(kernel, grid), grid))
            dumps = {'W': W, 'L': L, 'W_singular_values': np.linalg.svd(W.entries, compute_uv=False)}
        checks = [
            self.convergence('AA* = W', outer),
            self.convergence('A*A = L', inner),
            threshold_check('W hermitian', max(hermitian), 1e-10, {'n': self.parameters['n']}),
        ]
        if kernel is not None:
            checks.append(self.convergence('AA* against kernel quadrature', quadrature, independent=True, kernel=kernel))
        return self.finish(checks, started, symbol, dumps)


class HilbertOpsSuite(LabSuite):
    """Unitarity, inversion and Hardy projection checks of the FFT transforms"""

    def __init__(self):
        super().__init__('hilbert-ops', 'Fourier unitarity, H² = I and Hardy projection identities')

    def run(self, symbol: Optional[Symbol] = None) -> SuiteResult:
        started = time.perf_counter()
        rng = np.random.default_rng(self.parameters['seed'])
        residuals: Dict[str, List[float]] = {}

        def record(name: str, value: float):
            residuals.setdefault(name, []).append(float(value))

        for half in self.grids():
            grid = half.full_line()
            x = grid.points
            f = rng.normal(size=grid.n) + 1j * rng.normal(size=grid.n)
            norm = grid.norm(f)

            spectrum = fourier(f, grid)
            record('fourier unitarity', abs(grid.dual().norm(spectrum) / norm - 1))
            record('fourier inversion', relative_residual(fourier_from_dual(spectrum, grid), f))
            record('fourier reflection', relative_residual(fourier_from_dual(spectrum, grid, inverse=False), f[::-1]))
            gaussian = np.exp(-x ** 2 / 2)
            record('gaussian fixed point', relative_residual(fourier(gaussian, grid),
                                                             np.exp(-grid.dual().points ** 2 / 2)))

            Hf = hilbert(f, grid)
            record('hilbert involution', relative_residual(hilbert(Hf, grid), f))
            Pf = hardy_project(f, grid)
            record('hardy idempotence', relative_residual(hardy_project(Pf, grid), Pf))

            g = rng.normal(size=grid.n)
            odd = g - g[::-1]
            record('odd orthogonality', abs(grid.inner(hilbert(odd, grid), odd)) / grid.norm(odd) ** 2)
            even = g + g[::-1]
            record('even energy split', abs(grid.norm(hardy_project(even, grid)) ** 2 / grid.norm(even) ** 2 - 0.5))

            modulated = gaussian * np.exp(6j * x)
            record('positive frequency fixed point', relative_residual(hilbert(modulated, grid), modulated))

        tolerances = {
            'gaussian fixed point': 1e-8,
            'positive frequency fixed point': 1e-6,
        }
        checks = [
            threshold_check(name, max(values), tolerances.get(name, 1e-10),
                            {'n': self.parameters['n'], 'x_max': self.parameters['x_max'],
                             'seed': self.parameters['seed']})
            for name, values in residuals.items()
        ]
        return self.finish(checks, started, None)


class IsometrySuite(LabSuite):
    """T*W_κT = P·L_κ·P for the polar isometry T of A, and H_E = T*W_{2·1_E−1}T for indicators"""

    default_symbol = staticmethod(lambda: IndicatorSymbol(((0.0, 1.0),)))

    def __init__(self):
        super().__init__('isometry', 'Isometric conjugation of W_κ onto L_κ through the polar isometry')

    def run(self, symbol: Optional[Symbol] = None) -> SuiteResult:
        started = time.perf_counter()
        symbol = self.resolve_symbol(symbol)
        conjugation, intertwining, hilbert_identity = [], [], []
        notes: List[str] = []
        dumps: Dict[str, Any] = {}
        for grid in self.grids():
            A, _ = a_matrix(symbol, grid)
            W = wh_matrix(symbol, grid)
            L = singular_matrix(symbol, grid)
            polar = polar_isometry(A, self.parameters['rank_tol'])
            notes.extend(polar.warnings)
            T, Tstar = polar.T, polar.T.adjoint()
            P = polar.projection()
            conjugation.append(relative_residual(Tstar.compose(W).compose(T), P.compose(L).compose(P)))
            intertwining.append(polar.intertwining_residual)

            if isinstance(symbol, IndicatorSymbol):
                shifted = SumSymbol((ScaledSymbol(2.0, symbol), ConstantSymbol(-1.0)))
                W2 = wh_matrix(shifted, grid)
                mask = support_mask(sample_symbol(symbol, grid.frequencies()).real)
                H_E = restricted_hilbert(grid, mask)
                hilbert_identity.append(relative_residual(Tstar.compose(W2).compose(T).entries,
                                                          P.entries @ H_E @ P.entries))
            dumps = {'T': T, 'singular_values': polar.singular_values}

        checks = [
            self.convergence('T*WT = PLP', conjugation),
            self.convergence('AA* = T A*A T*', intertwining),
        ]
        if hilbert_identity:
            checks.append(self.convergence('H_E = T*W(2·1_E − 1)T', hilbert_identity))
        checks[0].notes.extend(notes)
        return self.finish(checks, started, symbol, dumps)


class KernelSuite(LabSuite):
    """FFT Wiener-Hopf matrix against direct quadrature of the closed-form kernel"""

    default_symbol = staticmethod(lalescu_symbol)

    def __init__(self):
        super().__init__('kernel', 'FFT discretization against the closed-form convolution kernel')

    def run(self, symbol: Optional[Symbol] = None) -> SuiteResult:
        started = time.perf_counter()
        symbol = self.resolve_symbol(symbol)
        name = kernel_reference_name(symbol)
        if name is None:
            raise ValidationError(f"No closed-form kernel is known for {symbol.describe()}")
        residuals = [kernel_agreement(wh_matrix(symbol, grid), kernel_matrix(name, grid), grid)
                     for grid in self.grids()]

        sizes = [int(n) for n in self.parameters['n']]
        if name == 'minus_sgn':
            # the 1/t kernel does not decay, so the periodized FFT kernel keeps a floor at fixed x_max
            check = threshold_check('kernel agreement', residuals[-1], self.tol(sizes[-1]),
                                    {'n': sizes, 'kernel': name, 'residuals': residuals})
        else:
            check = self.convergence('kernel agreement', residuals, independent=True, kernel=name)
        return self.finish([check], started, symbol, kernel=name)


class ShiftSuite(LabSuite):
    """W_κ = S_b*W_κS_b under x_max refinement at fixed spacing"""

    default_symbol = staticmethod(lalescu_symbol)

    def __init__(self):
        super().__init__('shift', 'Shift invariance S_b* W S_b = W')

    def run(self, symbol: Optional[Symbol] = None) -> SuiteResult:
        started = time.perf_counter()
        symbol = self.resolve_symbol(symbol)
        base = self.grids()[0]
        steps = max(1, int(round(0.5 / base.dx)))
        b = steps * base.dx
        grids = [base, base.extended()]
        residuals = [shift_invariance_residual(symbol, b, g) for g in grids]
        identity = shift_invariance_residual(ConstantSymbol(1.0), b, base)
        parameters = {'b': b, 'x_max': [g.x_max for g in grids], 'n': [g.n for g in grids]}
        checks = [
            convergence_check('shift invariance', residuals, tol=0.05,
                              floor=self.parameters['residual_floor'],
                              min_ratio=self.parameters['min_ratio'], parameters=parameters),
            threshold_check('shift invariance of I', identity, 1e-12, {'b': b, 'n': base.n}),
        ]
        return self.finish(checks, started, symbol)


class EnclosureSuite(LabSuite):
    """Spectrum of W_κ inside [ess inf κ, ess sup κ], and the Friedrichs shift round trip"""

    default_symbol = staticmethod(minus_tanh_symbol)

    def __init__(self):
        super().__init__('enclosure', 'Spectral enclosure by the essential range')

    def run(self, symbol: Optional[Symbol] = None) -> SuiteResult:
        started = time.perf_counter()
        symbol = self.resolve_symbol(symbol)
        excess, round_trip = [], []
        dumps: Dict[str, Any] = {}
        bounds = None
        for grid in self.grids():
            enclosure = spectral_enclosure(symbol, grid, self.tol(grid.n))
            excess.append(enclosure.excess)
            bounds = [enclosure.lower, enclosure.upper]

            shift = friedrichs_shift(symbol)
            shifted = spectral_enclosure(shift.kappa_shifted, grid, self.tol(grid.n))
            mapped = np.sort(shift.reconstruct(shifted.eigenvalues))
            round_trip.append(relative_residual(mapped, enclosure.eigenvalues))
            dumps = {'W_eigenvalues': enclosure.eigenvalues}

        sizes = [int(n) for n in self.parameters['n']]
        checks = [
            threshold_check('spectral enclosure', max(excess), self.tol(sizes[-1]),
                            {'n': sizes, 'essential_bounds': bounds}),
            threshold_check('friedrichs round trip', max(round_trip), 1e-10, {'n': sizes}),
        ]
        return self.finish(checks, started, symbol, dumps)


class GeneralReductionSuite(LabSuite):
    """U·L(a, b)·U⁻¹ = L_φ + M(α) with a = |b|²"""

    default_symbol = staticmethod(lambda: ScaledSymbol(1j, lalescu_symbol()))

    def __init__(self):
        super().__init__('general-reduction', 'Unitary reduction of M(a) + M(b)H_E M(b̄)')

    def run(self, symbol: Optional[Symbol] = None) -> SuiteResult:
        started = time.perf_counter()
        b = self.resolve_symbol(symbol)
        reduction_residuals, alpha_sizes = [], []
        for grid in self.grids():
            xi = grid.frequencies()
            a = TabulatedSymbol(tuple(xi), tuple(np.abs(sample_symbol(b, xi)) ** 2), label='|b|^2')
            L = general_singular_matrix(a, b, grid)
            reduction = general_singular_reduce(a, b, grid)
            u = sample_symbol(reduction.u, xi)
            alpha = sample_symbol(reduction.alpha, xi).real
            conjugated = u[:, None] * L.entries * u.conj()[None, :]
            reduced = singular_matrix(reduction.phi, grid).entries + np.diag(alpha)
            reduction_residuals.append(relative_residual(conjugated, reduced))
            alpha_sizes.append(float(np.max(np.abs(alpha))))
        checks = [
            self.convergence('U L(a,b) U⁻¹ = L_φ + M(α)', reduction_residuals),
            threshold_check('alpha vanishes for a = |b|²', max(alpha_sizes), 1e-12, {'n': self.parameters['n']}),
        ]
        return self.finish(checks, started, b)


class SuiteRegistry:
    """Registry for lab suites"""

    def __init__(self):
        self._suites: Dict[str, Type[LabSuite]] = {}
        self.logger = logging.getLogger(__name__)

    def register_suite(self, suite_class: Type[LabSuite], suite_name: Optional[str] = None) -> str:
        """
        Register a suite class

        Args:
            suite_class: LabSuite subclass
            suite_name: Registry key; defaults to the instance name

        Returns:
            str: Registered suite name
        """
        if not issubclass(suite_class, LabSuite):
            raise ValidationError("Suite class must inherit from LabSuite")
        name = suite_name or suite_class().name
        if name in self._suites:
            self.logger.warning(f"Suite {name} already registered, overwriting")
        self._suites[name] = suite_class
        self.logger.debug(f"Suite {name} registered")
        return name

    def create_suite(self, suite_name: str, parameters: Optional[Dict[str, Any]] = None) -> LabSuite:
        if suite_name not in self._suites:
            raise ValidationError(f"Suite '{suite_name}' not found; known: {self.list_suites()}")
        suite = self._suites[suite_name]()
        if parameters:
            suite.set_parameters(parameters)
        return suite

    def list_suites(self) -> List[str]:
        return sorted(self._suites)

    def get_suite_info(self, suite_name: str) -> Dict[str, Any]:
        return self.create_suite(suite_name).get_parameter_info()

    def remove_suite(self, suite_name: str):
        if suite_name in self._suites:
            del self._suites[suite_name]
            self.logger.info(f"Suite {suite_name} removed from registry")

    def __contains__(self, suite_name: str) -> bool:
        return suite_name in self._suites

    def __len__(self) -> int:
        return len(self._suites)


suite_registry = SuiteRegistry()
for _suite in (FactorizationSuite, HilbertOpsSuite, IsometrySuite, KernelSuite,
               ShiftSuite, EnclosureSuite, GeneralReductionSuite):
    suite_registry.register_suite(_suite)
