import logging
from typing import List, Tuple

import numpy as np
from scipy import linalg

from ..config import CLUSTER_RADIUS, ZERO_THRESHOLD
from ..utils.exceptions import NumericalFailureError, ValidationError
from .polynomial import Polynomial

logger = logging.getLogger(__name__)

RootList = List[Tuple[complex, int]]


def companion_matrix(p: Polynomial) -> np.ndarray:
    """Frobenius companion matrix of p (degree >= 1)"""
    coeffs = p.as_array()
    degree = len(coeffs) - 1
    monic = coeffs[:-1] / coeffs[-1]
    matrix = np.zeros((degree, degree), dtype=complex)
    if degree > 1:
        matrix[1:, :-1] = np.eye(degree - 1)
    matrix[:, -1] = -monic
    return matrix


def _cluster(values: np.ndarray, radius: float) -> List[List[complex]]:
    clusters: List[List[complex]] = []
    centers: List[complex] = []
    for z in sorted(values, key=lambda v: (v.real, v.imag)):
        for idx, center in enumerate(centers):
            if abs(z - center) <= radius * max(1.0, abs(center)):
                clusters[idx].append(z)
                centers[idx] = complex(np.mean(clusters[idx]))
                break
        else:
            clusters.append([z])
            centers.append(complex(z))
    return clusters


def _relative_residual(p: Polynomial, z: complex) -> float:
    scale = float(np.sum(np.abs(p.as_array()) * np.abs(z) ** np.arange(len(p.coeffs))))
    if scale == 0.0:
        return 0.0
    return float(abs(p(z)) / scale)


def _refine(p: Polynomial, dp: Polynomial, z: complex, multiplicity: int,
            steps: int) -> complex:
    """Modified Newton z - m p/p'; a step is kept only if |p| decreases"""
    value = abs(p(z))
    for _ in range(steps):
        slope = dp(z)
        if value == 0.0 or slope == 0:
            break
        candidate = z - multiplicity * p(z) / slope
        candidate_value = abs(p(candidate))
        if not np.isfinite(candidate_value) or candidate_value >= value:
            break
        z, value = complex(candidate), candidate_value
    return z


def find_roots(p: Polynomial, cluster_radius: float = CLUSTER_RADIUS,
               newton_steps: int = 8, residual_tolerance: float = 1e-6) -> RootList:
    """
    Roots of p with multiplicities

    Companion-matrix eigenvalues are grouped within cluster_radius (relative
    to the root size), then each cluster centroid is polished by modified
    Newton steps.

    Args:
        p: Nonzero polynomial
        cluster_radius: Multiplicity detection radius
        newton_steps: Maximum refinement steps per root
        residual_tolerance: Largest accepted relative residual |p(z)| / sum |c_k||z|^k

    Returns:
        List of (root, multiplicity), sorted by real then imaginary part
    """
    if p.is_zero:
        raise ValidationError("Cannot find roots of the zero polynomial")
    if p.degree == 0:
        return []

    coeffs = p.as_array()
    scale = np.max(np.abs(coeffs))
    zero_mult = 0
    while zero_mult < len(coeffs) - 1 and abs(coeffs[zero_mult]) <= ZERO_THRESHOLD * scale:
        zero_mult += 1

    roots: RootList = []
    if zero_mult:
        roots.append((0j, zero_mult))

    reduced = Polynomial(tuple(coeffs[zero_mult:]))
    if reduced.degree >= 1:
        eigenvalues = linalg.eigvals(companion_matrix(reduced))
        dp = reduced.derivative()
        residuals = []
        for cluster in _cluster(eigenvalues, cluster_radius):
            multiplicity = len(cluster)
            z = _refine(reduced, dp, complex(np.mean(cluster)), multiplicity, newton_steps)
            residual = _relative_residual(reduced, z)
            residuals.append(residual)
            logger.debug(f"root {z} (x{multiplicity}) residual {residual:.3e}")
            roots.append((z, multiplicity))
        if max(residuals) > residual_tolerance:
            raise NumericalFailureError(
                f"Root refinement did not converge for degree {p.degree} polynomial",
                residuals
            )

    return sorted(roots, key=lambda item: (item[0].real, item[0].imag))


def roots(p: Polynomial, cluster_radius: float = CLUSTER_RADIUS) -> RootList:
    """Multiset of roots of p; a constant polynomial has none"""
    return find_roots(p, cluster_radius=cluster_radius)


def reduce_coprime_with_warnings(P: Polynomial, Q: Polynomial,
                                 cluster_radius: float = CLUSTER_RADIUS
                                 ) -> Tuple[Polynomial, Polynomial, List[str]]:
    """
    Cancel common roots of P and Q

    Args:
        P: Numerator
        Q: Denominator
        cluster_radius: Matching radius for common roots

    Returns:
        (P', Q', warnings). P'/Q' = P/Q; inputs are returned unchanged when
        nothing cancels.
    """
    if P.is_zero or Q.is_zero:
        raise ValidationError("reduce_coprime needs nonzero polynomials")

    p_roots = [[z, m] for z, m in find_roots(P, cluster_radius)]
    q_roots = [[z, m] for z, m in find_roots(Q, cluster_radius)]
    warnings: List[str] = []
    cancelled = False

    for p_item in p_roots:
        for q_item in q_roots:
            if p_item[1] == 0 or q_item[1] == 0:
                continue
            distance = abs(p_item[0] - q_item[0])
            size = max(1.0, abs(p_item[0]))
            if distance <= cluster_radius * size:
                common = min(p_item[1], q_item[1])
                p_item[1] -= common
                q_item[1] -= common
                cancelled = True
            elif distance <= 10 * cluster_radius * size:
                message = (f"Near-common roots {p_item[0]:.6g} and {q_item[0]:.6g} "
                           f"(distance {distance:.2e}) were not cancelled")
                logger.warning(message)
                warnings.append(message)

    if not cancelled:
        return P, Q, warnings

    P_red = Polynomial.from_roots([(z, m) for z, m in p_roots if m > 0], P.leading)
    Q_red = Polynomial.from_roots([(z, m) for z, m in q_roots if m > 0], Q.leading)
    return P_red, Q_red, warnings


def reduce_coprime(P: Polynomial, Q: Polynomial,
                   cluster_radius: float = CLUSTER_RADIUS) -> Tuple[Polynomial, Polynomial]:
    """Coprime representative (P', Q') of P/Q"""
    P_red, Q_red, _ = reduce_coprime_with_warnings(P, Q, cluster_radius)
    return P_red, Q_red
