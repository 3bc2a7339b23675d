"""
Quanton and path-detector joint states

A quanton passing N paths, correlated with a path-detector, is described by

    |Psi> = sum_i c_i |psi_i> |d_i>

with orthonormal path states |psi_i>, amplitudes c_i and normalized (not
necessarily orthogonal) detector states |d_i>. Classical mixedness is
modelled by an explicit Ensemble of such pure states.

All value types validate their invariants on construction and never repair
inputs; use the `normalized(...)` constructors to rescale raw data.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from .config import DEFAULT_SETTINGS
from .core_linalg import as_matrix, as_vector, gram, is_hermitian_psd_trace1, norm, overlap_complements
from .errors import DimensionError, InvariantViolation

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PathAmplitudes:
    """The N complex amplitudes c_i, with sum |c_i|^2 = 1"""
    c: np.ndarray

    def __post_init__(self):
        c = as_vector(self.c, "amplitudes")
        if c.size < 2:
            raise InvariantViolation("at least two paths", detail=f"got N={c.size}")
        total = float(np.sum(np.abs(c) ** 2))
        if abs(total - 1.0) > DEFAULT_SETTINGS.normalization_tol:
            raise InvariantViolation("amplitudes normalized (sum |c_i|^2 = 1)",
                                     detail=f"sum is {total!r}")
        object.__setattr__(self, "c", c)

    @classmethod
    def normalized(cls, values: Sequence[complex]) -> "PathAmplitudes":
        """Rescale arbitrary non-zero amplitudes to unit norm"""
        c = as_vector(values, "amplitudes")
        total = norm(c)
        if total == 0.0:
            raise InvariantViolation("amplitudes normalized (sum |c_i|^2 = 1)", detail="all amplitudes are zero")
        return cls(c / total)

    @classmethod
    def from_probabilities(cls, p: Sequence[float]) -> "PathAmplitudes":
        """Real non-negative amplitudes c_i = sqrt(p_i)"""
        p = np.asarray(p, dtype=float)
        if np.any(p < 0):
            raise InvariantViolation("non-negative path probabilities", index=int(np.argmin(p)))
        return cls(np.sqrt(p))

    @property
    def n(self) -> int:
        return int(self.c.size)

    @property
    def probabilities(self) -> np.ndarray:
        """p_i = |c_i|^2"""
        return np.abs(self.c) ** 2


@dataclass(frozen=True, eq=False)
class DetectorSet:
    """N unit-norm detector states |d_i> of a common dimension M, stored as rows"""
    d: np.ndarray

    def __post_init__(self):
        d = as_matrix(self.d, "detector states")
        norms = np.linalg.norm(d, axis=1)
        for i, value in enumerate(norms):
            if abs(value - 1.0) > DEFAULT_SETTINGS.normalization_tol:
                raise InvariantViolation("unit-norm detector state", index=i,
                                         detail=f"norm is {value!r}")
        object.__setattr__(self, "d", d)

    @classmethod
    def normalized(cls, vectors: Iterable[Sequence[complex]]) -> "DetectorSet":
        """Rescale each non-zero vector to unit norm"""
        rows = [as_vector(v, f"detectors[{i}]") for i, v in enumerate(vectors)]
        if len({r.size for r in rows}) > 1:
            raise DimensionError("detector states must share one dimension")
        scaled = []
        for i, row in enumerate(rows):
            length = norm(row)
            if length == 0.0:
                raise InvariantViolation("unit-norm detector state", index=i, detail="zero vector")
            scaled.append(row / length)
        return cls(np.array(scaled))

    @property
    def n(self) -> int:
        return int(self.d.shape[0])

    @property
    def m(self) -> int:
        return int(self.d.shape[1])

    def vectors(self) -> List[np.ndarray]:
        return [self.d[i] for i in range(self.n)]

    def gram(self) -> np.ndarray:
        """Gram matrix G[i][j] = <d_i|d_j>"""
        return gram(self.vectors())

    def overlaps(self) -> np.ndarray:
        """Magnitudes |<d_i|d_j>|"""
        return np.abs(self.gram())

    def overlap_complements(self) -> np.ndarray:
        """1 - |<d_i|d_j>|^2, accurate for nearly parallel pairs"""
        return overlap_complements(self.vectors())


@dataclass(frozen=True, eq=False)
class PureJointState:
    """sum_i c_i |psi_i>|d_i>"""
    amps: PathAmplitudes
    dets: DetectorSet

    def __post_init__(self):
        if self.amps.n != self.dets.n:
            raise DimensionError(f"{self.amps.n} amplitudes but {self.dets.n} detector states")

    @classmethod
    def normalized(cls, amplitudes: Sequence[complex],
                   detectors: Iterable[Sequence[complex]]) -> "PureJointState":
        return cls(PathAmplitudes.normalized(amplitudes), DetectorSet.normalized(detectors))

    @property
    def n(self) -> int:
        return self.amps.n


@dataclass(frozen=True, eq=False)
class QuantonDensityMatrix:
    """Reduced N x N state of the quanton in the path basis"""
    rho: np.ndarray

    def __post_init__(self):
        rho = as_matrix(self.rho, "rho")
        if rho.shape[0] != rho.shape[1]:
            raise DimensionError(f"rho must be square, got shape {rho.shape}")
        if not is_hermitian_psd_trace1(rho, DEFAULT_SETTINGS.density_tol):
            raise InvariantViolation("density matrix (Hermitian, PSD, trace 1)")
        object.__setattr__(self, "rho", rho)

    @classmethod
    def from_pure(cls, s: "PureJointState") -> "QuantonDensityMatrix":
        """Reduced state of a pure joint state, see partial_trace"""
        return partial_trace(s)

    @classmethod
    def from_ensemble(cls, e: "Ensemble") -> "QuantonDensityMatrix":
        """Weighted reduced state of an ensemble, see reduce_ensemble"""
        return reduce_ensemble(e)

    @property
    def n(self) -> int:
        return int(self.rho.shape[0])


@dataclass(frozen=True, eq=False)
class Ensemble:
    """Classical mixture of pure joint states sharing the path count N"""
    components: Tuple[Tuple[float, PureJointState], ...]

    def __post_init__(self):
        components = tuple((float(w), s) for w, s in self.components)
        if not components:
            raise InvariantViolation("non-empty ensemble")
        n = components[0][1].n
        for k, (weight, state) in enumerate(components):
            if not np.isfinite(weight) or weight <= 0.0:
                raise InvariantViolation("positive ensemble weight", index=k, detail=f"weight is {weight!r}")
            if state.n != n:
                raise DimensionError(f"component {k} has N={state.n}, expected {n}")
        total = sum(w for w, _ in components)
        if abs(total - 1.0) > DEFAULT_SETTINGS.normalization_tol:
            raise InvariantViolation("ensemble weights sum to 1", detail=f"sum is {total!r}")
        object.__setattr__(self, "components", components)

    @classmethod
    def normalized(cls, weights: Sequence[float], states: Sequence[PureJointState]) -> "Ensemble":
        """Rescale positive weights to sum to one"""
        if len(weights) != len(states):
            raise DimensionError(f"{len(weights)} weights for {len(states)} states")
        total = float(sum(weights))
        if total <= 0.0:
            raise InvariantViolation("positive ensemble weight", detail="weights do not have a positive sum")
        return cls(tuple((w / total, s) for w, s in zip(weights, states)))

    @property
    def n(self) -> int:
        return self.components[0][1].n

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for w, _ in self.components])

    @property
    def states(self) -> List[PureJointState]:
        return [s for _, s in self.components]


def partial_trace(s: PureJointState) -> QuantonDensityMatrix:
    """
    Trace out the path-detector

    rho[i][j] = c_i conj(c_j) <d_j|d_i>

    Args:
        s: Pure joint state

    Returns:
        Reduced quanton density matrix, with diagonal |c_i|^2
    """
    c = s.amps.c
    g = s.dets.gram()
    rho = np.outer(c, c.conj()) * g.T
    np.fill_diagonal(rho, np.abs(c) ** 2)
    return QuantonDensityMatrix(rho)


def reduce_ensemble(e: Ensemble) -> QuantonDensityMatrix:
    """
    Weighted sum of the reduced states of every component

    Args:
        e: Ensemble of pure joint states

    Returns:
        sum_k w_k partial_trace(component_k)
    """
    rho = np.zeros((e.n, e.n), dtype=np.complex128)
    for weight, state in e.components:
        rho += weight * partial_trace(state).rho
    logger.debug("reduced ensemble of %d components, N=%d", len(e.components), e.n)
    return QuantonDensityMatrix(rho)
