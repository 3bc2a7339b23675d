"""
Built-in scenarios and theta sweeps

Families:
    figure1    N=3, p_i=1/3, d1=(cos t, sin t, 0), d2=(sin t, cos t, 0), d3=(0, 0, 1)
    figure2    N=3, p_i=1/3, d1=(cos t, sin t, 0), d2=(sin t, -cos t, 0),
               d3=(0, 2*sqrt(2)/3, 1/3)
    degenerate linearly dependent detector set: d_i = a_i for i < n and
               d_n = (a_{n-2} + a_{n-1})/sqrt(2), in dimension n-1
    random     amplitudes and detector states drawn as complex Gaussians and
               normalized (uniform on the unit sphere)
    custom     a caller-supplied PureJointState

Detector coordinates are in the orthonormal basis (|+>, |->, |0>).

Random sampling uses numpy.random.default_rng(seed), i.e. the PCG64 bit
generator of numpy's Generator API, so a seed reproduces the same states on
every platform.
"""

import logging
import math
from dataclasses import dataclass, asdict
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional, Sequence

import numpy as np

from .config import DEFAULT_SETTINGS
from .errors import InvariantViolation, PreconditionError, UnknownFamilyError
from .joint_state import DetectorSet, Ensemble, PathAmplitudes, PureJointState, partial_trace
from .measures import coherence, distinguishability_D, state_bagan_bound

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)


class Family(str, Enum):
    FIGURE1 = "figure1"
    FIGURE2 = "figure2"
    DEGENERATE = "degenerate"
    RANDOM = "random"
    CUSTOM = "custom"


SWEEP_FAMILIES = (Family.FIGURE1, Family.FIGURE2)


def parse_family(value) -> Family:
    """Accept a Family, its value ('figure1') or a figure id (1, '2')"""
    if isinstance(value, Family):
        return value
    text = str(value).strip().lower()
    if text in ("1", "2"):
        text = f"figure{text}"
    try:
        return Family(text)
    except ValueError:
        raise UnknownFamilyError(f"unknown scenario family: {value!r}") from None


@dataclass(frozen=True)
class ScenarioSpec:
    family: Family
    theta: float = 0.0
    n: int = 3
    m: int = 3
    seed: int = 0
    custom_state: Optional[PureJointState] = None

    def __post_init__(self):
        object.__setattr__(self, "family", parse_family(self.family))
        if not math.isfinite(self.theta):
            raise PreconditionError(f"theta must be finite, got {self.theta!r}")
        if self.family is Family.DEGENERATE and self.n < 3:
            raise PreconditionError(f"degenerate scenario needs n >= 3, got n={self.n}")
        if self.family is Family.RANDOM:
            if self.n < 2:
                raise PreconditionError(f"random scenario needs n >= 2, got n={self.n}")
            if self.m < 1:
                raise PreconditionError(f"random scenario needs m >= 1, got m={self.m}")
        if self.family is Family.CUSTOM and self.custom_state is None:
            raise PreconditionError("custom scenario needs custom_state")


@dataclass(frozen=True)
class SweepRow:
    theta: float
    D2: float
    C2: float
    DB2_bound: float
    sum_DC: float
    sum_DBC: float

    def __post_init__(self):
        values = (self.theta, self.D2, self.C2, self.DB2_bound, self.sum_DC, self.sum_DBC)
        if not all(math.isfinite(v) for v in values):
            raise InvariantViolation("finite sweep row", detail=f"theta={self.theta!r}")

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization"""
        return asdict(self)


CSV_COLUMNS = ("theta", "D2", "C2", "DB2_bound", "sum_DC", "sum_DBC")


def _uniform_amplitudes(n: int) -> PathAmplitudes:
    return PathAmplitudes(np.full(n, 1.0 / math.sqrt(n)))


def figure1_state(theta: float) -> PureJointState:
    c, s = math.cos(theta), math.sin(theta)
    dets = DetectorSet(np.array([
        [c, s, 0.0],
        [s, c, 0.0],
        [0.0, 0.0, 1.0],
    ]))
    return PureJointState(_uniform_amplitudes(3), dets)


def figure2_state(theta: float) -> PureJointState:
    c, s = math.cos(theta), math.sin(theta)
    dets = DetectorSet(np.array([
        [c, s, 0.0],
        [s, -c, 0.0],
        [0.0, 2.0 * SQRT2 / 3.0, 1.0 / 3.0],
    ]))
    return PureJointState(_uniform_amplitudes(3), dets)


def degenerate_state(n: int) -> PureJointState:
    """
    Linearly dependent detector set of n states in n-1 dimensions

    d_i = a_i for i = 1..n-1 and d_n = (a_{n-2} + a_{n-1})/sqrt(2), with equal
    path amplitudes.
    """
    if n < 3:
        raise PreconditionError(f"degenerate scenario needs n >= 3, got n={n}")
    basis = np.eye(n - 1)
    last = (basis[n - 3] + basis[n - 2]) / SQRT2
    return PureJointState(_uniform_amplitudes(n), DetectorSet(np.vstack([basis, last])))


def _complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_state(n: int, m: int, rng: np.random.Generator) -> PureJointState:
    """
    Draw one pure joint state with amplitudes and detector states uniform on their spheres

    Args:
        n: Number of paths
        m: Detector dimension
        rng: numpy Generator, advanced in place

    Returns:
        PureJointState
    """
    amps = _complex_gaussian(rng, n)
    dets = _complex_gaussian(rng, (n, m))
    amps = amps / np.linalg.norm(amps)
    dets = dets / np.linalg.norm(dets, axis=1, keepdims=True)
    return PureJointState(PathAmplitudes(amps), DetectorSet(dets))


def random_states(n: int, m: int, count: int, seed: int) -> Iterator[PureJointState]:
    """Yield count states from one generator seeded with seed"""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        yield random_state(n, m, rng)


def random_ensemble(n: int, components: int, rng: np.random.Generator,
                    max_m: int = 6) -> Ensemble:
    """
    Draw an ensemble of random pure states with Dirichlet weights

    Each component gets its own detector dimension in 1..max_m.
    """
    weights = rng.dirichlet(np.ones(components))
    states = [random_state(n, int(rng.integers(1, max_m + 1)), rng) for _ in range(components)]
    return Ensemble.normalized(list(weights), states)


def phase_flipped(s: PureJointState, k: int) -> PureJointState:
    """Copy of s with amplitude c_k multiplied by -1"""
    c = np.array(s.amps.c)
    c[k] = -c[k]
    return PureJointState(PathAmplitudes(c), s.dets)


def build(spec: ScenarioSpec) -> PureJointState:
    """
    Construct the pure joint state described by a ScenarioSpec

    Args:
        spec: Scenario description

    Returns:
        PureJointState
    """
    if spec.family is Family.FIGURE1:
        return figure1_state(spec.theta)
    if spec.family is Family.FIGURE2:
        return figure2_state(spec.theta)
    if spec.family is Family.DEGENERATE:
        return degenerate_state(spec.n)
    if spec.family is Family.RANDOM:
        return random_state(spec.n, spec.m, np.random.default_rng(spec.seed))
    return spec.custom_state


def build_ensemble(specs: Sequence[ScenarioSpec], weights: Sequence[float]) -> Ensemble:
    """Mix the states built from specs with the given (rescaled) weights"""
    return Ensemble.normalized(list(weights), [build(spec) for spec in specs])


def _family_state(family: Family, theta: float) -> PureJointState:
    if family is Family.FIGURE1:
        return figure1_state(theta)
    return figure2_state(theta)


def _sweep_family(family) -> Family:
    family = parse_family(family)
    if family not in SWEEP_FAMILIES:
        raise UnknownFamilyError(f"family {family.value!r} cannot be swept, use figure1 or figure2")
    return family


def evaluate_row(family, theta: float) -> SweepRow:
    """Compute one sweep row through the measures pipeline"""
    family = _sweep_family(family)
    state = _family_state(family, theta)
    c = coherence(partial_trace(state))
    d = distinguishability_D(state)
    bound = state_bagan_bound(state)
    d2, c2, db2 = d * d, c * c, bound * bound
    return SweepRow(theta=float(theta), D2=d2, C2=c2, DB2_bound=db2,
                    sum_DC=d2 + c2, sum_DBC=db2 + c2)


def rows_for_grid(family, thetas: Sequence[float]) -> List[SweepRow]:
    family = _sweep_family(family)
    rows = [evaluate_row(family, float(t)) for t in thetas]
    logger.debug("evaluated %d %s rows", len(rows), family.value)
    return rows


def theta_grid(theta_start: float = DEFAULT_SETTINGS.theta_start,
               theta_end: float = DEFAULT_SETTINGS.theta_end,
               steps: int = DEFAULT_SETTINGS.theta_steps) -> np.ndarray:
    """Uniform closed grid including both endpoints"""
    if steps < 2:
        raise PreconditionError(f"a theta grid needs at least 2 steps, got {steps}")
    if not (math.isfinite(theta_start) and math.isfinite(theta_end)):
        raise PreconditionError("theta bounds must be finite")
    return np.linspace(theta_start, theta_end, steps)


def sweep(family, theta_start: float = DEFAULT_SETTINGS.theta_start,
          theta_end: float = DEFAULT_SETTINGS.theta_end,
          steps: int = DEFAULT_SETTINGS.theta_steps) -> List[SweepRow]:
    """
    Evaluate a figure family on a uniform theta grid

    Args:
        family: figure1 or figure2 (or 1 / 2)
        theta_start: First angle, radians
        theta_end: Last angle, radians
        steps: Number of grid points, at least 2

    Returns:
        One SweepRow per grid point, ordered by theta index
    """
    return rows_for_grid(family, theta_grid(theta_start, theta_end, steps))


def closed_form_row(family, theta: float) -> SweepRow:
    """Analytic D^2, C^2 and bound^2 for the figure families"""
    family = _sweep_family(family)
    s, c = math.sin(theta), math.cos(theta)
    if family is Family.FIGURE1:
        sin2 = math.sin(2.0 * theta) ** 2
        c2 = sin2 / 9.0
        # sqrt(1 - sin^2 2t) = |cos 2t|
        db2 = (2.0 + abs(math.cos(2.0 * theta))) ** 2 / 9.0
    else:
        c2 = 8.0 / 81.0 * (abs(s) + abs(c)) ** 2
        db2 = (1.0 + math.sqrt(1.0 - 8.0 / 9.0 * s * s) + math.sqrt(1.0 - 8.0 / 9.0 * c * c)) ** 2 / 9.0
    d2 = 1.0 - c2
    return SweepRow(theta=float(theta), D2=d2, C2=c2, DB2_bound=db2,
                    sum_DC=d2 + c2, sum_DBC=db2 + c2)


def max_closed_form_deviation(family, rows: Sequence[SweepRow]) -> float:
    """Largest absolute difference between pipeline rows and the analytic formulas"""
    worst = 0.0
    for row in rows:
        exact = closed_form_row(family, row.theta)
        worst = max(worst,
                    abs(row.D2 - exact.D2),
                    abs(row.C2 - exact.C2),
                    abs(row.DB2_bound - exact.DB2_bound))
    return worst


# Development smoke run
if __name__ == "__main__":
    for fam in SWEEP_FAMILIES:
        rows = sweep(fam, 0.0, math.pi / 2, 5)
        print(f"{fam.value}:")
        for row in rows:
            print(f"  theta={row.theta:.4f}  D2={row.D2:.6f}  C2={row.C2:.6f}  DB2<={row.DB2_bound:.6f}")
        print(f"  max closed-form deviation: {max_closed_form_deviation(fam, rows):.2e}")
