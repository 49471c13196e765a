import logging
from dataclasses import dataclass, field
from typing import List, Tuple

from ..config import CLUSTER_RADIUS, EPS_REAL
from ..utils.exceptions import ValidationError
from .polynomial import Polynomial
from .roots import RootList, find_roots

logger = logging.getLogger(__name__)


@dataclass
class RootSplit:
    """Roots of one polynomial partitioned by half-plane"""
    lower: RootList = field(default_factory=list)
    real: RootList = field(default_factory=list)
    upper: RootList = field(default_factory=list)
    eps_real: float = EPS_REAL
    leading: complex = 1 + 0j
    warnings: List[str] = field(default_factory=list)

    @staticmethod
    def _count(items: RootList) -> int:
        return sum(m for _, m in items)

    @property
    def deg_lower(self) -> int:
        return self._count(self.lower)

    @property
    def deg_real(self) -> int:
        return self._count(self.real)

    @property
    def deg_upper(self) -> int:
        return self._count(self.upper)

    @property
    def deg_upper_closed(self) -> int:
        """deg P_>= (real plus upper roots)"""
        return self.deg_real + self.deg_upper

    @property
    def deg_lower_closed(self) -> int:
        """deg P_<= (real plus lower roots)"""
        return self.deg_real + self.deg_lower

    @property
    def degree(self) -> int:
        return self.deg_lower + self.deg_real + self.deg_upper

    @property
    def ill_conditioned(self) -> bool:
        return bool(self.warnings)

    def lower_factor(self) -> Polynomial:
        return Polynomial.from_roots(self.lower)

    def real_factor(self) -> Polynomial:
        return Polynomial.from_roots(self.real)

    def upper_factor(self) -> Polynomial:
        return Polynomial.from_roots(self.upper)

    def upper_closed_factor(self) -> Polynomial:
        return Polynomial.from_roots(self.real + self.upper)

    def lower_closed_factor(self) -> Polynomial:
        return Polynomial.from_roots(self.real + self.lower)

    def factors(self) -> Tuple[Polynomial, Polynomial, Polynomial]:
        """Monic (P_<, P_real, P_>)"""
        return self.lower_factor(), self.real_factor(), self.upper_factor()


def split_roots(p: Polynomial, eps_real: float = EPS_REAL,
                cluster_radius: float = CLUSTER_RADIUS) -> RootSplit:
    """
    Partition the roots of p into lower, real and upper half-plane sets

    A root with |Im| <= eps_real is real. Roots with eps_real < |Im| <= 10 eps_real
    are classified by sign but recorded as an ill-conditioned warning.

    Args:
        p: Nonzero polynomial
        eps_real: Real-axis tolerance
        cluster_radius: Multiplicity clustering radius

    Returns:
        RootSplit
    """
    if p.is_zero:
        raise ValidationError("Cannot split the zero polynomial")
    if eps_real < 0:
        raise ValidationError(f"eps_real must be nonnegative, got {eps_real}")

    split = RootSplit(eps_real=eps_real, leading=p.leading)
    for root, mult in find_roots(p, cluster_radius=cluster_radius):
        imag = root.imag
        if abs(imag) <= eps_real:
            split.real.append((complex(root.real, 0.0), mult))
            continue
        if abs(imag) <= 10 * eps_real:
            message = (f"Root {root:.6g} lies within {abs(imag):.2e} of the real axis; "
                       f"half-plane classification is ill-conditioned")
            logger.warning(message)
            split.warnings.append(message)
        if imag > 0:
            split.upper.append((root, mult))
        else:
            split.lower.append((root, mult))
    return split


def half_plane_split(p: Polynomial, eps_real: float = EPS_REAL,
                     cluster_radius: float = CLUSTER_RADIUS
                     ) -> Tuple[RootSplit, Tuple[Polynomial, Polynomial, Polynomial]]:
    """RootSplit of p and its monic factor triple (P_<, P_real, P_>)"""
    split = split_roots(p, eps_real=eps_real, cluster_radius=cluster_radius)
    return split, split.factors()
