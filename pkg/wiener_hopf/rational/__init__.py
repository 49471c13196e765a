from .calculus import (
    RationalFunction, RationalFunctionBasis, DomainDescriptor, SplitPair,
    split_pair, domain_descriptor, kernel_basis, cokernel_basis, shifted_numerator
)
from .classifier import (
    SpectralClassification, SpectralClassifier, classify_point, CATEGORIES,
    RESOLVENT, REGULAR_VALUE_NOT_RESOLVENT, POINT_SPECTRUM, CONTINUOUS_SPECTRUM, RESIDUAL_SPECTRUM
)
from .deficiency import DeficiencyReport, deficiency
from .hardy import HardyMembership, validate_hardy_membership, wrong_side_energy, PLUS, MINUS

__all__ = [
    'RationalFunction', 'RationalFunctionBasis', 'DomainDescriptor', 'SplitPair',
    'split_pair', 'domain_descriptor', 'kernel_basis', 'cokernel_basis', 'shifted_numerator',
    'SpectralClassification', 'SpectralClassifier', 'classify_point', 'CATEGORIES',
    'RESOLVENT', 'REGULAR_VALUE_NOT_RESOLVENT', 'POINT_SPECTRUM', 'CONTINUOUS_SPECTRUM',
    'RESIDUAL_SPECTRUM',
    'DeficiencyReport', 'deficiency',
    'HardyMembership', 'validate_hardy_membership', 'wrong_side_energy', 'PLUS', 'MINUS'
]
