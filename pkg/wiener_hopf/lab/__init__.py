from .grid import Grid, tolerance, is_power_of_two
from .transforms import (
    fourier, fourier_from_dual, hilbert, hardy_project, hilbert_matrix,
    negative_frequency_energy, embed, restrict
)
from .operators import (
    OperatorMatrix, GeneralReduction, KERNELS, wh_matrix, apply_wh, kernel_matrix,
    kernel_reference_name, a_matrix, singular_matrix, general_singular_matrix,
    general_singular_reduce, restricted_hilbert, sample_symbol, toeplitz_coefficients
)
from .polar import PolarFactors, polar_isometry
from .identities import (
    CheckResult, FriedrichsShift, SpectralEnclosure, relative_residual, threshold_check,
    convergence_check, friedrichs_shift, shift_invariance_residual, spectral_enclosure
)
from .suites import LabSuite, SuiteResult, SuiteRegistry, suite_registry

__all__ = [
    'Grid', 'tolerance', 'is_power_of_two',
    'fourier', 'fourier_from_dual', 'hilbert', 'hardy_project', 'hilbert_matrix',
    'negative_frequency_energy', 'embed', 'restrict',
    'OperatorMatrix', 'GeneralReduction', 'KERNELS', 'wh_matrix', 'apply_wh', 'kernel_matrix',
    'kernel_reference_name', 'a_matrix', 'singular_matrix', 'general_singular_matrix',
    'general_singular_reduce', 'restricted_hilbert', 'sample_symbol', 'toeplitz_coefficients',
    'PolarFactors', 'polar_isometry',
    'CheckResult', 'FriedrichsShift', 'SpectralEnclosure', 'relative_residual', 'threshold_check',
    'convergence_check', 'friedrichs_shift', 'shift_invariance_residual', 'spectral_enclosure',
    'LabSuite', 'SuiteResult', 'SuiteRegistry', 'suite_registry'
]
