import logging
from dataclasses import dataclass, field
from typing import List, Union

import numpy as np
from scipy.linalg import svd

from ..utils.exceptions import ValidationError
from .operators import OperatorMatrix

logger = logging.getLogger(__name__)


@dataclass
class PolarFactors:
    """A = T·|A| with T a partial isometry and |A| = (A*A)^{1/2}"""
    T: OperatorMatrix
    absA: OperatorMatrix
    rank_tol: float
    rank: int
    singular_values: np.ndarray
    intertwining_residual: float
    warnings: List[str] = field(default_factory=list)

    def projection(self) -> OperatorMatrix:
        """T*T, the projection onto (ker A)^⊥"""
        return self.T.adjoint().compose(self.T)


def _as_operator(A: Union[OperatorMatrix, np.ndarray]) -> OperatorMatrix:
    if isinstance(A, OperatorMatrix):
        return A
    entries = np.asarray(A, dtype=complex)
    if entries.ndim != 2:
        raise ValidationError(f"polar_isometry needs a matrix, got shape {entries.shape}")
    rows, cols = entries.shape
    return OperatorMatrix(entries, np.arange(rows, dtype=float), np.arange(cols, dtype=float), 1.0, 1.0)


def polar_isometry(A: Union[OperatorMatrix, np.ndarray], rank_tol: float = 1e-8) -> PolarFactors:
    """
    Polar decomposition through the SVD

    The weighted matrix √w_r·A/√w_c is unitarily equivalent to A, so its
    SVD U·S·Vᴴ gives |A| = V·S·Vᴴ and T = √(w_c/w_r)·U_r·V_rᴴ, where r counts
    singular values above rank_tol·σ_max. The result also reports the
    intertwining residual ‖AA* − T·A*A·T*‖/‖AA*‖.

    Args:
        A: OperatorMatrix, or a plain array with unit weights
        rank_tol: Relative singular value cut-off

    Returns:
        PolarFactors
    """
    A = _as_operator(A)
    if not np.all(np.isfinite(A.entries)):
        raise ValidationError("polar_isometry needs finite entries")
    scale = np.sqrt(A.row_weight / A.col_weight)
    U, s, Vh = svd(scale * A.entries, full_matrices=False)
    sigma_max = float(s[0]) if s.size else 0.0

    warnings: List[str] = []
    if sigma_max > 0:
        ratios = s / sigma_max
        straddling = (ratios >= rank_tol / 10) & (ratios <= rank_tol * 10)
        if np.any(straddling):
            message = (f"{int(np.sum(straddling))} singular values lie within a decade of the "
                       f"rank cut-off {rank_tol:.1e}·σ_max; the kernel dimension is ambiguous")
            logger.warning(message)
            warnings.append(message)
    rank = int(np.sum(s > rank_tol * sigma_max)) if sigma_max > 0 else 0

    V = Vh.conj().T
    abs_entries = (V * s) @ Vh
    T_entries = (U[:, :rank] @ Vh[:rank]) / scale

    T = OperatorMatrix(T_entries, A.row_points, A.col_points, A.row_weight, A.col_weight,
                       symbol=f"T[{A.symbol}]" if A.symbol else '', grid=A.grid)
    absA = OperatorMatrix(abs_entries, A.col_points, A.col_points, A.col_weight, A.col_weight,
                          symbol=f"|{A.symbol}|" if A.symbol else '', grid=A.grid)

    AAstar = A.compose(A.adjoint())
    conjugated = T.compose(A.adjoint().compose(A)).compose(T.adjoint())
    denom = max(AAstar.norm(), np.finfo(float).tiny)
    residual = float(np.linalg.norm(AAstar.entries - conjugated.entries)) / denom
    logger.debug(f"polar decomposition: rank {rank}/{s.size}, intertwining residual {residual:.2e}")

    return PolarFactors(T, absA, rank_tol, rank, s, residual, warnings)
