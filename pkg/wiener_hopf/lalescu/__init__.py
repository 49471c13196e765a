from .eigenfunctions import (
    BOUND_MIN_S, EigenParams, eigfun_q, eigfun_q_grid, eigen_residual, q_bound, q_sup
)
from .chebyshev import ChebCombo, cheb_Q, cheb_weight, q_gram, q_orthonormality_residual, q_values
from .laguerre import (
    GeneratingFunctionCheck, gamma_factor, generating_function, generating_function_check,
    lambda_chebyshev_form, lambda_closed_form_residual, lambda_fn, lambda_functions,
    laguerre_functions, laguerre_l, laguerre_reference_residual, printed_generating_function
)
from .quadrature import QuadratureRule, half_line_rule, moment_integral, moment_zero_check, panel_rule
from .transforms import (
    LaguerreExpansion, SmoothBump, TEST_FUNCTIONS, gamma_inverse, gamma_map, kernel_residual_L,
    lalescu_commutation_residual, singular_lalescu_apply, spectral_norm, spectral_residual_W,
    times_identity, u_adjoint, u_apply, unit_factor, v_apply, v_direct, w_apply,
    w_isometry_residual, w_range_residual
)
from .suite import LalescuSuite

__all__ = [
    'BOUND_MIN_S', 'EigenParams', 'eigfun_q', 'eigfun_q_grid', 'eigen_residual', 'q_bound', 'q_sup',
    'ChebCombo', 'cheb_Q', 'cheb_weight', 'q_gram', 'q_orthonormality_residual', 'q_values',
    'GeneratingFunctionCheck', 'gamma_factor', 'generating_function', 'generating_function_check',
    'lambda_chebyshev_form', 'lambda_closed_form_residual', 'lambda_fn', 'lambda_functions',
    'laguerre_functions', 'laguerre_l', 'laguerre_reference_residual', 'printed_generating_function',
    'QuadratureRule', 'half_line_rule', 'moment_integral', 'moment_zero_check', 'panel_rule',
    'LaguerreExpansion', 'SmoothBump', 'TEST_FUNCTIONS', 'gamma_inverse', 'gamma_map', 'kernel_residual_L',
    'lalescu_commutation_residual', 'singular_lalescu_apply', 'spectral_norm', 'spectral_residual_W',
    'times_identity', 'u_adjoint', 'u_apply', 'unit_factor', 'v_apply', 'v_direct', 'w_apply',
    'w_isometry_residual', 'w_range_residual',
    'LalescuSuite'
]
