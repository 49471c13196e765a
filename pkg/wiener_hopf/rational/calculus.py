import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

from ..config import EPS_REAL
from ..polycore import (
    Polynomial, RootSplit, conj_reflect, reduce_coprime_with_warnings, split_roots
)
from ..utils.exceptions import ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RationalFunction:
    """numerator / denominator, used for basis elements of L²(ℝ)"""
    numerator: Polynomial
    denominator: Polynomial

    def __post_init__(self):
        if self.denominator.is_zero:
            raise ValidationError("Rational function with zero denominator")

    def evaluate(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        return self.numerator(x) / self.denominator(x)

    def __call__(self, x):
        return self.evaluate(x)

    def times(self, P: Polynomial, Q: Polynomial) -> 'RationalFunction':
        """Product with P/Q, common roots cancelled"""
        num, den, _ = reduce_coprime_with_warnings(self.numerator * P, self.denominator * Q)
        return RationalFunction(num, den)

    def reduced(self) -> 'RationalFunction':
        if self.numerator.is_zero:
            return RationalFunction(self.numerator, Polynomial.constant(1.0))
        num, den, _ = reduce_coprime_with_warnings(self.numerator, self.denominator)
        return RationalFunction(num, den)

    def to_text(self) -> str:
        return f"({self.numerator})/({self.denominator})"


@dataclass
class RationalFunctionBasis:
    """Monomial-weighted basis elements (not orthonormalized)"""
    elements: List[RationalFunction] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def to_strings(self) -> List[str]:
        return [e.to_text() for e in self.elements]


@dataclass
class DomainDescriptor:
    """dom M₊(κ) = (q_real/(x+i)^sigma)·H₊"""
    q_real: Polynomial
    sigma: int
    warnings: List[str] = field(default_factory=list)


@dataclass
class SplitPair:
    """Coprime P, Q with their half-plane splits"""
    P: Polynomial
    Q: Polynomial
    P_split: RootSplit
    Q_split: RootSplit
    coprime_warnings: List[str] = field(default_factory=list)

    @property
    def warnings(self) -> List[str]:
        return self.coprime_warnings + self.P_split.warnings + self.Q_split.warnings


def split_pair(P: Polynomial, Q: Polynomial, eps_real: float = EPS_REAL) -> SplitPair:
    """Reduce P/Q to lowest terms and split numerator and denominator"""
    if Q.is_zero:
        raise ValidationError("Rational symbol needs a nonzero denominator")
    if P.is_zero:
        one = Polynomial.constant(1.0)
        return SplitPair(P, one, RootSplit(eps_real=eps_real, leading=0j), split_roots(one, eps_real))
    P_red, Q_red, warnings = reduce_coprime_with_warnings(P, Q)
    P_split = split_roots(P_red, eps_real)
    Q_split = split_roots(Q_red, eps_real)
    return SplitPair(P_red, Q_red, P_split, Q_split, warnings)


def _monomial_basis(num: Polynomial, den: Polynomial, size: int) -> List[RationalFunction]:
    x = Polynomial.x()
    return [RationalFunction(num * (x ** j), den) for j in range(max(0, size))]


def domain_descriptor(P: Polynomial, Q: Polynomial, eps_real: float = EPS_REAL) -> DomainDescriptor:
    """
    Domain of the Wiener-Hopf operator with rational symbol P/Q

    Args:
        P: Numerator
        Q: Denominator

    Returns:
        DomainDescriptor with the monic real-zero factor q of Q and
        sigma = max(deg q, deg P − deg Q + deg q)
    """
    pair = split_pair(P, Q, eps_real)
    q_real = pair.Q_split.real_factor()
    deg_q = int(q_real.degree)
    sigma = max(deg_q, int(pair.P.degree) - int(pair.Q.degree) + deg_q)
    return DomainDescriptor(q_real, sigma, pair.warnings)


def kernel_size(P_split: RootSplit, Q_split: RootSplit) -> int:
    """min(deg P_< − deg Q_≤, deg Q_> − deg P_≥), clipped at 0"""
    bound = min(P_split.deg_lower - Q_split.deg_lower_closed,
                Q_split.deg_upper - P_split.deg_upper_closed)
    return max(0, bound)


def cokernel_size(P_split: RootSplit, Q_split: RootSplit) -> int:
    """deg P_> − deg Q_>, clipped at 0"""
    return max(0, P_split.deg_upper - Q_split.deg_upper)


def kernel_basis(P: Polynomial, Q: Polynomial, eps_real: float = EPS_REAL) -> RationalFunctionBasis:
    """
    Kernel of M₊(P/Q): {(Q_≤/P_<)·x^j : 0 <= j < bound}

    Args:
        P: Numerator
        Q: Denominator

    Returns:
        RationalFunctionBasis, empty when the bound is not positive
    """
    pair = split_pair(P, Q, eps_real)
    size = kernel_size(pair.P_split, pair.Q_split)
    elements = _monomial_basis(pair.Q_split.lower_closed_factor(), pair.P_split.lower_factor(), size)
    return RationalFunctionBasis(elements, pair.warnings)


def cokernel_basis(P: Polynomial, Q: Polynomial, eps_real: float = EPS_REAL) -> RationalFunctionBasis:
    """
    Orthogonal complement of the range of M₊(P/Q)

    Elements are conj(Q_>)/conj(P_>)·x^j for 0 <= j < deg P_> − deg Q_>,
    where conj conjugates coefficients and so moves the upper-half-plane
    roots into the lower half-plane.

    Args:
        P: Numerator
        Q: Denominator

    Returns:
        RationalFunctionBasis
    """
    pair = split_pair(P, Q, eps_real)
    size = cokernel_size(pair.P_split, pair.Q_split)
    elements = _monomial_basis(conj_reflect(pair.Q_split.upper_factor()),
                               conj_reflect(pair.P_split.upper_factor()), size)
    return RationalFunctionBasis(elements, pair.warnings)


def degree_data(N_split: RootSplit, Q_split: RootSplit) -> Dict[str, int]:
    return {
        'P_lambda_lower': N_split.deg_lower,
        'P_lambda_upper_closed': N_split.deg_upper_closed,
        'P_lambda_upper': N_split.deg_upper,
        'Q_lower_closed': Q_split.deg_lower_closed,
        'Q_upper': Q_split.deg_upper,
    }


def shifted_numerator(P: Polynomial, Q: Polynomial, lam: complex) -> Polynomial:
    """Numerator of κ − λ for κ = P/Q, i.e. P − λQ"""
    return P - Q * complex(lam)


def rational_parts(P: Polynomial, Q: Polynomial) -> Tuple[Polynomial, Polynomial]:
    """Real coefficient polynomials (p, q) of a real rational symbol"""
    if not (P.is_real() and Q.is_real()):
        raise ValidationError("Deficiency indices need real coefficient polynomials p and q")
    return (Polynomial(tuple(complex(c.real) for c in P.coeffs)),
            Polynomial(tuple(complex(c.real) for c in Q.coeffs)))
