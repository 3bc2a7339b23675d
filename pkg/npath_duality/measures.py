"""
Wave and particle quantifiers for N-path interference

- coherence C: normalized sum of off-diagonal magnitudes of the reduced
  quanton state, in the path basis
- distinguishability D = sqrt(1 - S^2) and D_Q = 1 - S, where
  S = 1/(N-1) sum_{i != j} |c_i c_j| |<d_i|d_j>|
- Englert's two-path distinguishability sqrt(1 - |<d_1|d_2>|^2)
- the upper bound on the minimum-error distinguishability D_B of Bagan et al.

For a pure joint state S equals C, so D^2 + C^2 = 1 and D^2 = D_Q (2 - D_Q).
"""

import logging
import math
from dataclasses import dataclass, asdict
from typing import Any, Dict, Sequence, Union

import numpy as np

from .config import DEFAULT_SETTINGS
from .core_linalg import as_matrix
from .errors import DimensionError, NumericalDomainError, PreconditionError
from .joint_state import PureJointState, QuantonDensityMatrix, partial_trace

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MeasureReport:
    n: int
    coherence_C: float
    dist_D: float
    dist_DQ: float
    bagan_DB_bound: float
    duality_sum: float

    def __post_init__(self):
        values = (self.coherence_C, self.dist_D, self.dist_DQ, self.bagan_DB_bound, self.duality_sum)
        if not all(math.isfinite(v) for v in values):
            raise NumericalDomainError(f"non-finite measure in report: {values}")
        upper = 1.0 + DEFAULT_SETTINGS.duality_tol
        for name in ("coherence_C", "dist_D", "dist_DQ"):
            value = getattr(self, name)
            if not 0.0 <= value <= upper:
                raise NumericalDomainError(f"{name}={value!r} outside [0, 1]")

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization"""
        return asdict(self)


def _clamped_sqrt(radicand: float, tol: float, what: str) -> float:
    if radicand < 0.0:
        if radicand < -tol:
            raise NumericalDomainError(f"{what}: radicand {radicand!r} is negative")
        logger.debug("%s: radicand %.3e clamped to zero", what, radicand)
        return 0.0
    return math.sqrt(radicand)


def _probabilities(p: Sequence[float]) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size < 2:
        raise PreconditionError(f"need at least two path probabilities, got shape {p.shape}")
    if not np.all(np.isfinite(p)) or np.any(p < 0.0):
        raise PreconditionError("path probabilities must be finite and non-negative")
    if abs(p.sum() - 1.0) > DEFAULT_SETTINGS.normalization_tol:
        raise PreconditionError(f"path probabilities must sum to 1, got {p.sum()!r}")
    return p


def _overlap_matrix(overlaps, n: int) -> np.ndarray:
    o = np.abs(as_matrix(overlaps, "overlaps"))
    if o.shape != (n, n):
        raise DimensionError(f"overlaps must be {n}x{n}, got {o.shape}")
    return o


def inner_sum(p: Sequence[float], overlaps,
              tol: float = DEFAULT_SETTINGS.radicand_tol) -> float:
    """
    S = 1/(N-1) sum_{i != j} sqrt(p_i p_j) |<d_i|d_j>|

    Args:
        p: Path probabilities |c_i|^2
        overlaps: N x N matrix of overlaps (or their magnitudes)
        tol: Amount by which S may exceed 1 before it is an error

    Returns:
        S in [0, 1]
    """
    p = _probabilities(p)
    o = _overlap_matrix(overlaps, p.size)
    a = np.sqrt(p)
    terms = np.outer(a, a) * o
    np.fill_diagonal(terms, 0.0)
    s = float(terms.sum()) / (p.size - 1)
    if s > 1.0:
        if s > 1.0 + tol:
            raise NumericalDomainError(f"overlap sum {s!r} exceeds 1")
        s = 1.0
    return s


def distinguishability_from_overlaps(p: Sequence[float], overlaps) -> float:
    """D = sqrt(1 - S^2) from probabilities and overlap magnitudes"""
    s = inner_sum(p, overlaps)
    return _clamped_sqrt(1.0 - s * s, DEFAULT_SETTINGS.radicand_tol, "distinguishability")


def _state_inner_sum(s: PureJointState) -> float:
    return inner_sum(s.amps.probabilities, s.dets.overlaps())


def coherence(rho: Union[QuantonDensityMatrix, np.ndarray],
              tol: float = DEFAULT_SETTINGS.duality_tol) -> float:
    """
    C = 1/(N-1) sum_{i != j} |rho_ij|, in the path basis

    Args:
        rho: Reduced quanton density matrix
        tol: Overshoot above 1 that is clamped; anything larger raises

    Returns:
        Coherence in [0, 1]
    """
    if not isinstance(rho, QuantonDensityMatrix):
        rho = QuantonDensityMatrix(rho)
    if rho.n < 2:
        raise PreconditionError(f"coherence needs N >= 2, got N={rho.n}")
    magnitudes = np.abs(rho.rho)
    np.fill_diagonal(magnitudes, 0.0)
    c = float(magnitudes.sum()) / (rho.n - 1)
    if c > 1.0:
        if c > 1.0 + tol:
            raise NumericalDomainError(f"coherence {c!r} exceeds 1")
        logger.debug("coherence %.17g clamped to 1", c)
        c = 1.0
    return c


def distinguishability_D(s: PureJointState) -> float:
    """
    Path distinguishability D = sqrt(1 - S^2)

    Args:
        s: Pure joint state

    Returns:
        D in [0, 1]; 1 for mutually orthogonal detector states
    """
    return distinguishability_from_overlaps(s.amps.probabilities, s.dets.overlaps())


def distinguishability_DQ(s: PureJointState) -> float:
    """
    UQSD-based distinguishability D_Q = 1 - S

    Args:
        s: Pure joint state

    Returns:
        D_Q in [0, 1]
    """
    return 1.0 - _state_inner_sum(s)


def englert_D(s: PureJointState) -> float:
    """
    Englert's two-path distinguishability sqrt(1 - |<d_1|d_2>|^2)

    Only defined for two equally weighted paths.

    Args:
        s: Pure joint state with N = 2 and |c_1| = |c_2| = 1/sqrt(2)

    Returns:
        D in [0, 1]
    """
    if s.n != 2:
        raise PreconditionError(f"englert_D requires N = 2, got N={s.n}")
    p = s.amps.probabilities
    tol = DEFAULT_SETTINGS.englert_amp_tol
    for i, value in enumerate(p):
        if abs(value - 0.5) > tol:
            raise PreconditionError(
                f"englert_D requires equal amplitudes |c_i|^2 = 1/2, path {i} has {value!r}")
    overlap = abs(s.dets.gram()[0, 1])
    return _clamped_sqrt(1.0 - overlap * overlap, DEFAULT_SETTINGS.radicand_tol, "englert_D")


def bagan_DB_bound(p: Sequence[float], g, complements=None) -> float:
    """
    Upper bound on the distinguishability D_B of Bagan et al.

        1/(N-1) sum_{i,j} sqrt(((p_i + p_j)/2)^2 - p_i p_j |<d_i|d_j>|^2)

    The sum runs over all ordered pairs; the i = j terms vanish for
    normalized detector states. Each radicand is evaluated as
    ((p_i - p_j)/2)^2 + p_i p_j (1 - |<d_i|d_j>|^2).

    Args:
        p: Path probabilities
        g: Detector Gram matrix with unit diagonal
        complements: Optional matrix of 1 - |<d_i|d_j>|^2, e.g. from
            DetectorSet.overlap_complements(); derived from g when omitted

    Returns:
        The bound, non-negative
    """
    p = _probabilities(p)
    g = as_matrix(g, "gram")
    n = p.size
    if g.shape != (n, n):
        raise DimensionError(f"gram must be {n}x{n}, got {g.shape}")
    if np.max(np.abs(np.diag(g) - 1.0)) > DEFAULT_SETTINGS.density_tol:
        raise PreconditionError("gram matrix must have a unit diagonal")
    if complements is None:
        complements = 1.0 - np.abs(g) ** 2
    else:
        complements = np.asarray(complements, dtype=float)
        if complements.shape != (n, n):
            raise DimensionError(f"complements must be {n}x{n}, got {complements.shape}")

    tol = DEFAULT_SETTINGS.radicand_tol
    half_gap = 0.5 * (p[:, None] - p[None, :])
    radicands = half_gap ** 2 + np.outer(p, p) * complements
    total = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                total += _clamped_sqrt(float(radicands[i, j]), tol, f"bagan bound term ({i},{j})")
    return total / (n - 1)


def state_bagan_bound(s: PureJointState) -> float:
    """bagan_DB_bound for a pure state, with overlap complements taken from the detector vectors"""
    return bagan_DB_bound(s.amps.probabilities, s.dets.gram(), s.dets.overlap_complements())


def full_report(s: PureJointState) -> MeasureReport:
    """
    Evaluate every quantifier for one pure state

    Args:
        s: Pure joint state

    Returns:
        MeasureReport with duality_sum = D^2 + C^2
    """
    c = coherence(partial_trace(s))
    d = distinguishability_D(s)
    return MeasureReport(
        n=s.n,
        coherence_C=c,
        dist_D=d,
        dist_DQ=distinguishability_DQ(s),
        bagan_DB_bound=state_bagan_bound(s),
        duality_sum=d * d + c * c,
    )
