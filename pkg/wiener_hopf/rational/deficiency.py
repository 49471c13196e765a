import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List

from ..config import EPS_REAL
from ..polycore import Polynomial, conj_reflect, reduce_coprime_with_warnings, split_roots
from ..utils.exceptions import ConditioningError, ValidationError
from .calculus import RationalFunctionBasis, _monomial_basis, rational_parts

logger = logging.getLogger(__name__)


@dataclass
class DeficiencyReport:
    """Deficiency indices of M₊(p/q) for real p, q"""
    n_plus: int
    n_minus: int
    basis_plus: RationalFunctionBasis
    basis_minus: RationalFunctionBasis
    Q_plus: Polynomial
    Q_minus: Polynomial
    warnings: List[str] = field(default_factory=list)

    @property
    def has_selfadjoint_extension(self) -> bool:
        return self.n_plus == self.n_minus

    def to_dict(self) -> Dict[str, Any]:
        return {
            'n_plus': self.n_plus,
            'n_minus': self.n_minus,
            'basis_plus': self.basis_plus.to_strings(),
            'basis_minus': self.basis_minus.to_strings(),
            'Q_plus': self.Q_plus.to_text(),
            'Q_minus': self.Q_minus.to_text(),
            'has_selfadjoint_extension': self.has_selfadjoint_extension,
            'warnings': list(self.warnings),
        }


def deficiency(p: Polynomial, q: Polynomial, eps_real: float = EPS_REAL) -> DeficiencyReport:
    """
    Deficiency indices and spaces of the symmetric operator M₊(p/q)

    p − iq is factored as Q₊Q₋ by root location; n± = deg Q± − deg q_<,
    with bases q_</conj(Q₊)·x^j and q_</Q₋·x^j.

    Args:
        p: Real numerator
        q: Real denominator

    Returns:
        DeficiencyReport

    Raises:
        ValidationError: non-real coefficients
        ConditioningError: p − iq has a numerically real root
    """
    if p.is_zero or q.is_zero:
        raise ValidationError("deficiency needs nonzero p and q")
    p, q = rational_parts(p, q)
    p, q, warnings = reduce_coprime_with_warnings(p, q)

    combined = p - q * 1j
    split = split_roots(combined, eps_real)
    if split.deg_real > 0:
        roots = ', '.join(f"{z:.6g}" for z, _ in split.real)
        raise ConditioningError(
            f"p − iq has numerically real roots ({roots}); p and q are not coprime to working precision"
        )
    warnings = warnings + split.warnings

    Q_plus = split.upper_factor()
    Q_minus = split.lower_factor() * split.leading
    q_lower = split_roots(q, eps_real).lower_factor()

    n_plus = int(Q_plus.degree) - int(q_lower.degree)
    n_minus = int(Q_minus.degree) - int(q_lower.degree)
    if n_plus < 0 or n_minus < 0:
        raise ConditioningError(f"Negative deficiency index ({n_plus}, {n_minus}) from degree data")

    basis_plus = RationalFunctionBasis(_monomial_basis(q_lower, conj_reflect(Q_plus), n_plus))
    basis_minus = RationalFunctionBasis(_monomial_basis(q_lower, Q_minus.monic(), n_minus))
    logger.debug(f"deficiency indices ({n_plus}, {n_minus}) for p={p}, q={q}")

    return DeficiencyReport(n_plus, n_minus, basis_plus, basis_minus, Q_plus, Q_minus, warnings)
