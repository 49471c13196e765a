import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional

from ..config import DEFAULT_CONFIG
from ..polycore import Polynomial, split_roots
from ..symbols import RationalSymbol, essential_range_membership
from .calculus import degree_data, shifted_numerator, split_pair

RESOLVENT = 'Resolvent'
REGULAR_VALUE_NOT_RESOLVENT = 'RegularValueNotResolvent'
POINT_SPECTRUM = 'PointSpectrum'
CONTINUOUS_SPECTRUM = 'ContinuousSpectrum'
RESIDUAL_SPECTRUM = 'ResidualSpectrum'

CATEGORIES = (RESOLVENT, REGULAR_VALUE_NOT_RESOLVENT, POINT_SPECTRUM,
              CONTINUOUS_SPECTRUM, RESIDUAL_SPECTRUM)


@dataclass
class SpectralClassification:
    """Fredholm and spectral verdict for M₊(κ) − λI at one λ"""
    lam: complex
    in_closure_of_range: bool
    is_fredholm: bool
    dim_ker: Optional[int]
    dim_coker: Optional[int]
    index: Optional[int]
    category: str
    is_regular_value: bool
    degree_data: Dict[str, int]
    unreliable: bool = False
    range_distance: float = 0.0
    warnings: List[str] = field(default_factory=list)

    def to_record(self) -> Dict[str, Any]:
        return {
            'lambda': [self.lam.real, self.lam.imag],
            'category': self.category,
            'dim_ker': self.dim_ker,
            'dim_coker': self.dim_coker,
            'index': self.index,
            'is_fredholm': self.is_fredholm,
            'in_closure_of_range': self.in_closure_of_range,
            'is_regular_value': self.is_regular_value,
            'unreliable': self.unreliable,
            'degrees': dict(self.degree_data),
            'warnings': list(self.warnings),
        }


class SpectralClassifier:
    """Classifies every λ for one rational symbol P/Q"""

    def __init__(self, P: Polynomial, Q: Polynomial, config: Optional[Dict[str, Any]] = None):
        config = config or DEFAULT_CONFIG
        self.eps_real = config['polycore']['eps_real']
        self.range_tol = config['symbol']['range_tol']
        self.range_samples = config['symbol']['range_samples']
        self.logger = logging.getLogger(__name__)

        self.pair = split_pair(P, Q, self.eps_real)
        self.symbol = RationalSymbol(self.pair.P, self.pair.Q)

    def classify(self, lam: complex) -> SpectralClassification:
        """
        Classify λ

        Args:
            lam: Spectral parameter

        Returns:
            SpectralClassification. Dimensions are None when M₊(κ) − λI
            vanishes identically.
        """
        lam = complex(lam)
        Q_split = self.pair.Q_split
        N = shifted_numerator(self.pair.P, self.pair.Q, lam)
        warnings = self.pair.coprime_warnings + Q_split.warnings

        if N.is_zero:
            self.logger.debug(f"κ ≡ {lam}: the whole space is the kernel")
            return SpectralClassification(
                lam=lam, in_closure_of_range=True, is_fredholm=False, dim_ker=None,
                dim_coker=None, index=None, category=POINT_SPECTRUM, is_regular_value=False,
                degree_data={}, unreliable=bool(warnings), warnings=warnings
            )

        N_split = split_roots(N, self.eps_real)
        warnings.extend(N_split.warnings)

        dim_ker = max(0, min(N_split.deg_lower - Q_split.deg_lower_closed,
                             Q_split.deg_upper - N_split.deg_upper_closed))
        dim_coker = max(0, N_split.deg_upper - Q_split.deg_upper)

        membership = essential_range_membership(self.symbol, lam, self.range_tol, self.range_samples)
        warnings.extend(membership.warnings)
        in_closure = membership.member
        is_fredholm = not in_closure
        index = dim_ker - dim_coker if is_fredholm else None
        is_regular_value = (not in_closure) and Q_split.deg_upper <= N_split.deg_upper

        if dim_ker > 0:
            category = POINT_SPECTRUM
        elif dim_coker > 0:
            category = RESIDUAL_SPECTRUM
        elif in_closure:
            category = CONTINUOUS_SPECTRUM
        else:
            category = RESOLVENT

        return SpectralClassification(
            lam=lam, in_closure_of_range=in_closure, is_fredholm=is_fredholm,
            dim_ker=dim_ker, dim_coker=dim_coker, index=index, category=category,
            is_regular_value=is_regular_value, degree_data=degree_data(N_split, Q_split),
            unreliable=bool(warnings) or membership.borderline,
            range_distance=membership.distance, warnings=warnings
        )

    def classify_grid(self, lams: Iterable[complex]) -> List[SpectralClassification]:
        results = [self.classify(lam) for lam in lams]
        unreliable = sum(r.unreliable for r in results)
        if unreliable:
            self.logger.warning(f"{unreliable} of {len(results)} classifications are unreliable")
        return results


def classify_point(P: Polynomial, Q: Polynomial, lam: complex,
                   config: Optional[Dict[str, Any]] = None) -> SpectralClassification:
    """Classification of M₊(P/Q) − λI"""
    return SpectralClassifier(P, Q, config).classify(lam)
