import time
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from ..config import DEFAULT_CONFIG
from ..lab import CheckResult, Grid, LabSuite, SuiteResult, convergence_check, threshold_check, tolerance
from ..symbols import Symbol
from .chebyshev import cheb_Q, q_orthonormality_residual, q_values
from .eigenfunctions import BOUND_MIN_S, eigen_residual, eigfun_q, q_bound
from .laguerre import (
    MAX_ORDER, gamma_factor, generating_function_check, lambda_closed_form_residual,
    lambda_functions, laguerre_reference_residual
)
from .quadrature import half_line_rule, moment_integral, moment_zero_check
from .transforms import (
    SmoothBump, TEST_FUNCTIONS, gamma_inverse, gamma_map, kernel_residual_L,
    lalescu_commutation_residual, spectral_norm, spectral_residual_W, u_apply, v_apply,
    v_direct, w_isometry_residual, w_range_residual
)


def _curve_frame(x: np.ndarray, values: np.ndarray) -> pd.DataFrame:
    return pd.DataFrame({'x': x, 're': np.real(values), 'im': np.imag(values)})


class LalescuSuite(LabSuite):
    """
    Validation of the diagonalization of the Lalescu operator

    Covers the eigenfunctions q_s, the Laguerre image basis λ_n, the
    polynomials Q_n, the maps Γ, U and V, the spectral representation of W_λ
    and the isometry W onto M(u)H₊.
    """

    def __init__(self):
        super().__init__('lalescu', 'Spectral representation of the Lalescu operator')
        cfg = DEFAULT_CONFIG['lalescu']
        self.parameters.update({
            'x_max': cfg['x_max'],
            'n': [cfg['grid_points'], 2 * cfg['grid_points']],
            'max_n': cfg['max_n'],
            'cheb_max_n': cfg['cheb_max_n'],
            'moment_max_k': cfg['moment_max_k'],
            'laguerre_terms': cfg['laguerre_terms'],
            'quad_panels': cfg['quad_panels'],
            'quad_order': cfg['quad_order'],
            'bump': list(cfg['bump']),
            'perturb_norm': cfg['perturb_norm'],
        })

    def validate_parameters(self, parameters: Dict[str, Any]) -> bool:
        if not super().validate_parameters(parameters):
            return False
        for key in ('max_n', 'cheb_max_n'):
            if key in parameters and not 0 <= int(parameters[key]) <= MAX_ORDER:
                return False
        if 'moment_max_k' in parameters and not 0 <= int(parameters['moment_max_k']) <= 50:
            return False
        if 'laguerre_terms' in parameters and not 1 <= int(parameters['laguerre_terms']) <= MAX_ORDER + 1:
            return False
        if 'perturb_norm' in parameters and float(parameters['perturb_norm']) <= 0:
            return False
        if 'bump' in parameters:
            a, b = parameters['bump']
            if not 0 < a < b < 2:
                return False
        return True

    def get_parameter_schema(self) -> Dict[str, Any]:
        schema = super().get_parameter_schema()
        schema.update({
            'max_n': {'type': 'int', 'min': 0, 'max': MAX_ORDER},
            'cheb_max_n': {'type': 'int', 'min': 0, 'max': MAX_ORDER},
            'moment_max_k': {'type': 'int', 'min': 0, 'max': 50},
            'laguerre_terms': {'type': 'int', 'min': 1, 'max': MAX_ORDER + 1},
            'quad_panels': {'type': 'int', 'min': 1},
            'quad_order': {'type': 'int', 'min': 1},
            'bump': {'type': 'list[float]', 'constraint': '0 < a < b < 2'},
            'perturb_norm': {'type': 'float', 'min': 0.0},
        })
        return schema

    def run(self, symbol: Optional[Symbol] = None) -> SuiteResult:
        started = time.perf_counter()
        p = self.parameters
        rng = np.random.default_rng(p['seed'])
        rule = half_line_rule(p['quad_panels'], p['quad_order'])
        checks: List[CheckResult] = []

        checks += self._eigenfunction_checks()
        checks += self._basis_checks(rule)
        checks += self._gamma_and_u_checks(rule, rng)
        checks += self._normalization_checks()
        checks += self._spectral_checks()

        return self.finish(checks, started, None, self._plot_data())

    def _eigenfunction_checks(self) -> List[CheckResult]:
        s_grid = np.linspace(0.05, 1.95, 21)
        x_grid = np.linspace(0.0, 10.0, 21)
        residual = max(float(np.max(eigen_residual(s, x_grid))) for s in s_grid)

        bounded_s = np.linspace(0.6, 1.95, 21)
        excess = max(float(np.max(np.abs(eigfun_q(s, x_grid)))) / q_bound(s) - 1.0 for s in bounded_s)
        bound = threshold_check('eigenfunction bound', max(0.0, excess), 1e-12,
                                {'s': [0.6, 1.95], 'x': [0.0, 10.0]})
        bound.notes.append(f"|q_s| ≤ (s(2−s))^(−1/2) requires s ≥ {BOUND_MIN_S:.4f}")
        return [
            threshold_check('eigen residual', residual, 1e-10,
                            {'s': [0.05, 1.95], 'x': [0.0, 10.0], 'points': [21, 21]}),
            bound,
        ]

    def _basis_checks(self, rule) -> List[CheckResult]:
        p = self.parameters
        x = np.linspace(0.0, 20.0, 41)
        generating = generating_function_check(0.5, x, p['laguerre_terms'])
        generating_check = threshold_check('laguerre generating function', generating.residual, 1e-10,
                                           {'q': 0.5, 'terms': generating.terms})
        generating_check.notes.extend(generating.notes)

        samples = np.linspace(0.0, 10.0, 201)
        gram = rule.gram(lambda_functions(p['max_n'], rule.nodes))
        moments = [moment_zero_check(k) for k in range(-p['moment_max_k'], p['moment_max_k'] + 1)]
        moment_check = threshold_check('vanishing moments', max(moments), 1e-8, {'k_max': p['moment_max_k']})
        moment_check.notes.append(f"raw moment at k = −1: {moment_integral(-1).real:.12f} (π/6 = {np.pi / 6:.12f})")

        q2 = np.array(cheb_Q(2).coeffs)
        return [
            threshold_check('laguerre recurrence vs scipy', laguerre_reference_residual(30, x), 1e-10,
                            {'n_max': 30, 'x': [0.0, 20.0]}),
            generating_check,
            threshold_check('lambda closed form vs chebyshev form',
                            lambda_closed_form_residual(p['max_n'], samples), 1e-10, {'n_max': p['max_n']}),
            threshold_check('|gamma| = 1', float(np.max(np.abs(np.abs(gamma_factor(samples)) - 1))), 1e-12, {}),
            threshold_check('lambda orthonormality', float(np.max(np.abs(gram - np.eye(p['max_n'] + 1)))), 1e-6,
                            {'n_max': p['max_n'], 'panels': p['quad_panels'], 'order': p['quad_order']}),
            moment_check,
            threshold_check('Q orthonormality', q_orthonormality_residual(p['cheb_max_n']), 1e-10,
                            {'n_max': p['cheb_max_n']}),
            threshold_check('Q_2 coefficients', float(np.max(np.abs(q2 - [-1.0, -2.0 / 3.0, 4.0]))), 1e-14, {}),
        ]

    def _gamma_and_u_checks(self, rule, rng: np.random.Generator) -> List[CheckResult]:
        p = self.parameters
        coefficients = rng.normal(size=5)

        def h(s):
            return np.polynomial.polynomial.polyval(s, coefficients)

        h_norm = spectral_norm(h, (0.0, 2.0), p['quad_panels'], p['quad_order'])
        isometry = abs(rule.norm(gamma_map(h)(rule.nodes)) - h_norm) / h_norm

        s = np.linspace(0.05, 1.95, 39)
        inverse = float(np.max(np.abs(gamma_inverse(gamma_map(h))(s) - h(s)))) / float(np.max(np.abs(h(s))))

        g = rng.normal(size=p['max_n'] + 1)
        unitarity = abs(rule.norm(u_apply(g)(rule.nodes)) - np.linalg.norm(g)) / np.linalg.norm(g)
        return [
            threshold_check('gamma isometry', isometry, 1e-10, {'degree': 4, 'seed': p['seed']}),
            threshold_check('gamma inverse', inverse, 1e-10, {}),
            threshold_check('U unitarity', unitarity, 1e-8, {'coefficients': p['max_n'] + 1, 'seed': p['seed']}),
        ]

    def _normalization_checks(self) -> List[CheckResult]:
        """V computed two ways: direct eigenfunction quadrature and U*Γ"""
        p = self.parameters
        grid = Grid(40.0, 512)
        discrepancies, tails, isometry = [], [], []
        for h in TEST_FUNCTIONS:
            expansion = v_apply(h, p['laguerre_terms'])
            reference = expansion(grid.points)
            direct = v_direct(h, grid.points, p['perturb_norm'])
            discrepancies.append(grid.norm(direct - reference) / grid.norm(reference))
            tails.append(expansion.tail_energy)
            h_norm = spectral_norm(h)
            isometry.append(abs(float(np.linalg.norm(expansion.coefficients)) - h_norm) / h_norm)
        check = threshold_check('V normalization cross-check', max(discrepancies), 1e-4,
                                {'functions': [h.describe() for h in TEST_FUNCTIONS],
                                 'perturb_norm': p['perturb_norm'], 'terms': p['laguerre_terms']})
        check.residuals = [float(d) for d in discrepancies]
        check.notes.append(f"max Laguerre tail energy {max(tails):.2e}")
        v_isometry = threshold_check('V isometry', max(isometry), 1e-6, {'terms': p['laguerre_terms']})
        return [check, v_isometry]

    def _spectral_checks(self) -> List[CheckResult]:
        p = self.parameters
        bump = SmoothBump(*p['bump'])
        sizes = [int(n) for n in p['n']]
        grids = [Grid(p['x_max'], n) for n in sizes]
        spectral = convergence_check(
            'spectral residual', [spectral_residual_W(bump, g) for g in grids],
            tol=1e-3, floor=p['residual_floor'], min_ratio=p['min_ratio'],
            parameters={'n': sizes, 'x_max': p['x_max'], 'h': bump.describe()},
        )

        base = grids[0]
        refinement = [base, base.extended()]
        tol = tolerance(base.n, p['tol_constant'])
        # extending x_max at fixed dx leaves the quadrature error in place, so
        # both levels are held to tol instead of a decay rate
        norms = [w_isometry_residual(bump, g) for g in refinement]
        isometry = CheckResult(
            'W isometry', max(norms), tol, bool(max(norms) <= tol),
            {'x_max': [g.x_max for g in refinement], 'n': [g.n for g in refinement]},
            residuals=norms, ratio=norms[0] / norms[1] if norms[1] > 0 else float('inf'),
        )

        commutation = [lalescu_commutation_residual(bump, g) for g in refinement]
        coarse, fine = commutation
        passed = fine <= p['residual_floor'] or (coarse <= tol and fine <= coarse)
        commutation_check = CheckResult(
            'L_λ W = W M(id)', fine, tol, bool(passed),
            {'x_max': [g.x_max for g in refinement], 'n': [g.n for g in refinement]},
            residuals=commutation, ratio=coarse / fine if fine > 0 else float('inf'),
        )
        return [
            spectral,
            isometry,
            threshold_check('W range in M(u)H₊', w_range_residual(bump, base), tol, {'n': base.n}),
            threshold_check('L_λ kernel contains M(u)H₋', kernel_residual_L(base), tol, {'n': base.n}),
            commutation_check,
        ]

    def _plot_data(self) -> Dict[str, pd.DataFrame]:
        x = np.linspace(0.0, 20.0, 401)
        xi = np.linspace(-1.0, 1.0, 201)
        n_max = min(5, self.parameters['max_n'])
        lambdas = lambda_functions(n_max, x)
        q_curves = q_values(n_max, xi)
        curves = {f"q_s={s:g}": _curve_frame(x, eigfun_q(s, x)) for s in (0.25, 0.5, 1.0, 1.5, 1.75)}
        curves.update({f"lambda_{n}": _curve_frame(x, lambdas[n]) for n in range(n_max + 1)})
        curves.update({f"Q_{n}": _curve_frame(xi, q_curves[n]) for n in range(n_max + 1)})
        return curves
