"""
Phase-scan interference readout

Path i picks up a phase phi_i before the paths are recombined with equal
weight; the detected intensity is

    I(phi) = sum_{i,j} rho_ij exp(i (phi_i - phi_j))

Visibility (Imax - Imin)/(Imax + Imin) is taken from the grid extremes of a
scan, no fitting. It is only meaningful as a wave-nature measure for N = 2,
where it equals the coherence C for equal path amplitudes.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .config import DEFAULT_SETTINGS
from .errors import DimensionError, InvariantViolation, NumericalDomainError, PreconditionError
from .joint_state import QuantonDensityMatrix

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, eq=False)
class PhaseScan:
    phases: np.ndarray
    intensities: np.ndarray

    def __post_init__(self):
        phases = np.asarray(self.phases, dtype=float)
        intensities = np.asarray(self.intensities, dtype=float)
        if phases.shape != intensities.shape or phases.ndim != 1:
            raise DimensionError(f"phases {phases.shape} and intensities {intensities.shape} must match")
        if intensities.size and intensities.min() < -DEFAULT_SETTINGS.density_tol:
            raise InvariantViolation("non-negative intensity", index=int(np.argmin(intensities)))
        object.__setattr__(self, "phases", phases)
        object.__setattr__(self, "intensities", np.clip(intensities, 0.0, None))

    @property
    def span(self) -> float:
        """Covered phase range, counting the last grid cell"""
        if self.phases.size < 2:
            return 0.0
        width = float(self.phases.max() - self.phases.min())
        return width + width / (self.phases.size - 1)


def _rho(rho: Union[QuantonDensityMatrix, np.ndarray]) -> np.ndarray:
    if isinstance(rho, QuantonDensityMatrix):
        return rho.rho
    return QuantonDensityMatrix(rho).rho


def intensity(rho: Union[QuantonDensityMatrix, np.ndarray], phi: Sequence[float]) -> float:
    """
    Screen intensity for per-path phases phi

    Args:
        rho: Reduced quanton density matrix
        phi: N phases in radians

    Returns:
        Real intensity, non-negative for a valid density matrix
    """
    r = _rho(rho)
    phi = np.asarray(phi, dtype=float)
    if phi.shape != (r.shape[0],):
        raise DimensionError(f"need {r.shape[0]} phases, got shape {phi.shape}")
    u = np.exp(1j * phi)
    value = complex(u @ r @ u.conj())
    if abs(value.imag) > DEFAULT_SETTINGS.imag_residue_tol:
        raise NumericalDomainError(f"intensity has imaginary residue {value.imag!r}")
    return value.real


def phase_scan(rho: Union[QuantonDensityMatrix, np.ndarray],
               points: int = DEFAULT_SETTINGS.scan_points, path: int = -1) -> PhaseScan:
    """
    Scan the phase of one path over [0, 2 pi), others held at zero

    With the other phases fixed the intensity is a single cosine in the
    scanned phase, I = const + 2 |a| cos(phi + arg a) with
    a = sum_{j != path} rho[path][j]. The grid is offset so that phi = -arg a
    is a grid point; for an even point count the minimum is one as well.

    Args:
        rho: Reduced quanton density matrix
        points: Number of equally spaced phases
        path: Index of the scanned path, last path by default

    Returns:
        PhaseScan
    """
    r = _rho(rho)
    n = r.shape[0]
    if not -n <= path < n:
        raise DimensionError(f"path index {path} out of range for N={n}")
    if points < 1:
        raise PreconditionError(f"phase scan needs at least one point, got {points}")
    k = path % n
    fringe = complex(r[k].sum() - r[k, k])
    step = TWO_PI / points
    start = (-cmath.phase(fringe)) % step if fringe != 0 else 0.0
    phases = start + step * np.arange(points)
    values = []
    for value in phases:
        phi = np.zeros(n)
        phi[path] = value
        values.append(intensity(r, phi))
    return PhaseScan(phases, np.array(values))


def visibility(scan: PhaseScan) -> float:
    """
    Fringe visibility (Imax - Imin)/(Imax + Imin)

    Args:
        scan: At least min_scan_points samples spanning a full period

    Returns:
        Visibility in [0, 1]
    """
    if scan.phases.size < DEFAULT_SETTINGS.min_scan_points:
        raise PreconditionError(
            f"visibility needs at least {DEFAULT_SETTINGS.min_scan_points} scan points, got {scan.phases.size}")
    if scan.span < TWO_PI - 1e-9:
        raise PreconditionError(f"scan must span 2 pi, spans {scan.span!r}")
    high = float(scan.intensities.max())
    low = float(scan.intensities.min())
    if high + low <= 0.0:
        raise NumericalDomainError("visibility is undefined for an all-zero scan")
    return min(1.0, max(0.0, (high - low) / (high + low)))
