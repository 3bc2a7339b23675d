"""
Verification of the N-path duality relations

- D^2 + C^2 = 1 for pure joint states, and <= 1 for ensembles
- D^2 = D_Q (2 - D_Q), and the additive form D_Q + C <= 1
- Duerr's first four criteria for a path quantifier
- UQSD feasibility (linear independence of the detector states)
- comparison of D with the Bagan et al. bound on the figure families

Mixed-state convention: for an ensemble {(w_k, s_k)} the distinguishability
is the weight average D_Q_bar = sum_k w_k D_Q(s_k) of the GIVEN
decomposition, mapped through D_bar^2 = D_Q_bar (2 - D_Q_bar). Coherence is
taken from the mixed reduced state. Because coherence is convex under
mixing, D_bar^2 + C^2 <= 1 for every decomposition; the value of D_bar
depends on the decomposition.
"""

import logging
import math
from dataclasses import dataclass, asdict, field
from typing import Any, Dict, List, Sequence, Union

import numpy as np

from .config import DEFAULT_SETTINGS
from .core_linalg import numerical_rank
from .errors import PreconditionError
from .joint_state import DetectorSet, Ensemble, PureJointState, partial_trace, reduce_ensemble
from .measures import (
    MeasureReport,
    coherence,
    distinguishability_D,
    distinguishability_DQ,
    distinguishability_from_overlaps,
    full_report,
    state_bagan_bound,
)
from .scenarios import Family, SweepRow, parse_family, random_state, rows_for_grid

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DualityVerdict:
    sum: float
    saturated: bool
    tolerance: float
    detail: MeasureReport
    bounded: bool = True

    def __post_init__(self):
        if self.saturated != (abs(self.sum - 1.0) <= self.tolerance):
            raise ValueError("saturated flag disagrees with the duality sum")

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization"""
        return asdict(self)


@dataclass(frozen=True)
class DurrReport:
    continuity_ok: bool
    global_max_ok: bool
    global_min_ok: bool
    monotonicity_ok: bool
    probe_count: int

    def __post_init__(self):
        if self.probe_count <= 0:
            raise ValueError("probe_count must be positive")

    @property
    def all_ok(self) -> bool:
        return self.continuity_ok and self.global_max_ok and self.global_min_ok and self.monotonicity_ok

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization"""
        data = asdict(self)
        data["all_ok"] = self.all_ok
        return data


def _verdict(report: MeasureReport, tol: float) -> DualityVerdict:
    total = report.duality_sum
    return DualityVerdict(sum=total, saturated=abs(total - 1.0) <= tol, tolerance=tol,
                          detail=report, bounded=total <= 1.0 + tol)


def check_pure_duality(s: PureJointState, tol: float = DEFAULT_SETTINGS.duality_tol) -> DualityVerdict:
    """
    Evaluate D^2 + C^2 for a pure joint state, which must equal 1

    Args:
        s: Pure joint state
        tol: Saturation tolerance, positive

    Returns:
        DualityVerdict; saturated is expected to be True
    """
    if not tol > 0:
        raise PreconditionError(f"tol must be positive, got {tol}")
    verdict = _verdict(full_report(s), tol)
    if not verdict.saturated:
        logger.warning("pure-state duality not saturated: D^2 + C^2 = %r", verdict.sum)
    return verdict


def ensemble_distinguishability_DQ(e: Ensemble) -> float:
    """Weight-averaged D_Q over the given decomposition"""
    return float(sum(w * distinguishability_DQ(s) for w, s in e.components))


def check_mixed_duality(e: Ensemble, tol: float = DEFAULT_SETTINGS.duality_tol) -> DualityVerdict:
    """
    Evaluate D_bar^2 + C^2 for an ensemble, which must not exceed 1

    Args:
        e: Ensemble of pure joint states
        tol: Tolerance for both saturation and the upper bound

    Returns:
        DualityVerdict with bounded = (sum <= 1 + tol)
    """
    if not tol > 0:
        raise PreconditionError(f"tol must be positive, got {tol}")
    c = coherence(reduce_ensemble(e))
    dq = ensemble_distinguishability_DQ(e)
    d2 = max(0.0, dq * (2.0 - dq))
    bound = float(sum(w * state_bagan_bound(s) for w, s in e.components))
    report = MeasureReport(n=e.n, coherence_C=c, dist_D=math.sqrt(d2), dist_DQ=dq,
                           bagan_DB_bound=bound, duality_sum=d2 + c * c)
    verdict = _verdict(report, tol)
    if not verdict.bounded:
        logger.warning("mixed-state duality exceeded: D^2 + C^2 = %r", verdict.sum)
    return verdict


def check_dq_identity(s: PureJointState, tol: float = DEFAULT_SETTINGS.duality_tol) -> bool:
    """True iff |D^2 - D_Q (2 - D_Q)| <= tol"""
    d = distinguishability_D(s)
    dq = distinguishability_DQ(s)
    return abs(d * d - dq * (2.0 - dq)) <= tol


def check_additive_duality(target: Union[PureJointState, Ensemble],
                           tol: float = DEFAULT_SETTINGS.duality_tol) -> bool:
    """
    Additive form of the relation

    Pure state: |D_Q + C - 1| <= tol. Ensemble: D_Q_bar + C <= 1 + tol.
    """
    if isinstance(target, Ensemble):
        c = coherence(reduce_ensemble(target))
        return ensemble_distinguishability_DQ(target) + c <= 1.0 + tol
    c = coherence(partial_trace(target))
    return abs(distinguishability_DQ(target) + c - 1.0) <= tol


def uqsd_feasible(d: DetectorSet, tol: float = DEFAULT_SETTINGS.rank_tol) -> bool:
    """
    Unambiguous discrimination of all detector states needs linear independence

    Args:
        d: Detector states
        tol: Relative rank tolerance

    Returns:
        True iff the Gram matrix has full rank N
    """
    return numerical_rank(d.gram(), tol) == d.n


def identifiable_paths(d: DetectorSet, tol: float = DEFAULT_SETTINGS.rank_tol) -> List[int]:
    """
    Paths whose detector state lies outside the span of all the others

    Only these states can be unambiguously identified when the set is
    linearly dependent; for an independent set every path is returned.

    Args:
        d: Detector states
        tol: Relative rank tolerance

    Returns:
        Sorted 0-based path indices
    """
    g = d.gram()
    full = numerical_rank(g, tol)
    found = []
    for i in range(d.n):
        keep = [k for k in range(d.n) if k != i]
        if not keep:
            found.append(i)
            continue
        if numerical_rank(g[np.ix_(keep, keep)], tol) < full:
            found.append(i)
    return found


# Duerr criteria

_CONTINUITY_DELTAS = (1e-3, 1e-4, 1e-5, 1e-6)
_CONTINUITY_RATIO = 0.2  # linear scaling gives 0.1 per decade, allow a factor 2
_CONTINUITY_FLOOR = 1e-11
_EXACT_TOL = 1e-12


def _interior_probabilities(n: int, rng: np.random.Generator) -> np.ndarray:
    """Random probabilities with every p_i >= 1/(2n)"""
    return 0.5 * rng.dirichlet(np.ones(n)) + 0.5 / n


def _random_overlaps(n: int, rng: np.random.Generator) -> np.ndarray:
    return random_state(n, n, rng).dets.overlaps()


def _uniform_overlaps(n: int, g: float) -> np.ndarray:
    o = np.full((n, n), g)
    np.fill_diagonal(o, 1.0)
    return o


def _shift(p: np.ndarray, i: int, j: int, eps: float) -> np.ndarray:
    q = p.copy()
    q[i] += eps
    q[j] -= eps
    return q


def _continuity_probe(n: int, rng: np.random.Generator) -> bool:
    while True:
        p = _interior_probabilities(n, rng)
        overlaps = _random_overlaps(n, rng)
        if distinguishability_from_overlaps(p, overlaps) ** 2 >= 0.05:
            break
    i, j = rng.choice(n, size=2, replace=False)
    diffs = []
    for delta in _CONTINUITY_DELTAS:
        up = distinguishability_from_overlaps(_shift(p, i, j, delta), overlaps)
        down = distinguishability_from_overlaps(_shift(p, i, j, -delta), overlaps)
        diffs.append(abs(up - down))
    for before, after in zip(diffs, diffs[1:]):
        if after > _CONTINUITY_FLOOR and after > _CONTINUITY_RATIO * before:
            return False
    return True


def _global_max_ok(n: int, rng: np.random.Generator, probes: int) -> bool:
    orthonormal = np.eye(n)
    for i in range(n):
        p = np.zeros(n)
        p[i] = 1.0
        if abs(distinguishability_from_overlaps(p, orthonormal) - 1.0) > _EXACT_TOL:
            return False
    for _ in range(probes):
        p = rng.dirichlet(np.ones(n))
        if distinguishability_from_overlaps(p, _random_overlaps(n, rng)) > 1.0 + _EXACT_TOL:
            return False
    return True


def _global_min_ok(n: int, rng: np.random.Generator, probes: int) -> bool:
    uniform = np.full(n, 1.0 / n)
    d_min = distinguishability_from_overlaps(uniform, np.ones((n, n)))
    if d_min * d_min > _EXACT_TOL:
        return False
    for _ in range(probes):
        p = rng.dirichlet(np.ones(n))
        if distinguishability_from_overlaps(p, _random_overlaps(n, rng)) < d_min - 1e-7:
            return False
    return True


def _equalization_probe(n: int, rng: np.random.Generator) -> bool:
    g = rng.uniform(0.1, 1.0)
    overlaps = _uniform_overlaps(n, g)
    while True:
        p = rng.dirichlet(np.ones(n))
        i, j = rng.choice(n, size=2, replace=False)
        if p[i] < p[j]:
            i, j = j, i
        if p[i] - p[j] > 1e-3:
            break
    eps = rng.uniform(0.05, 1.0) * (p[i] - p[j]) / 2.0
    before = distinguishability_from_overlaps(p, overlaps)
    after = distinguishability_from_overlaps(_shift(p, j, i, eps), overlaps)
    return after < before


def _parallelization_probe(n: int, rng: np.random.Generator) -> bool:
    p = _interior_probabilities(n, rng)
    while True:
        overlaps = _random_overlaps(n, rng)
        i, j = rng.choice(n, size=2, replace=False)
        if overlaps[i, j] < 1.0 - 1e-3:
            break
    raised = overlaps.copy()
    raised[i, j] = raised[j, i] = overlaps[i, j] + rng.uniform(0.05, 1.0) * (1.0 - overlaps[i, j])
    before = distinguishability_from_overlaps(p, overlaps)
    after = distinguishability_from_overlaps(p, raised)
    return after < before


def durr_criteria(n: int, probes: int = DEFAULT_SETTINGS.durr_probes, seed: int = 0) -> DurrReport:
    """
    Check Duerr's first four criteria for the distinguishability D

    (1) continuity in the probabilities, by central finite differences that
        must shrink linearly as delta shrinks by decades;
    (2) D = 1 for a certain path and orthogonal detectors, and D <= 1 on random probes;
    (3) D = 0 for equal probabilities and parallel detectors, and never below it;
    (4) equalizing a pair of probabilities under uniform overlaps, or raising
        a single overlap at fixed probabilities, strictly decreases D.

    Continuity probes are drawn from the interior (p_i >= 1/(2n), D^2 >= 0.05)
    where the differences are in the linear regime. Raised overlaps in (4)
    act on the overlap magnitudes directly.

    Args:
        n: Number of paths, at least 2
        probes: Random probes per sub-check, at least 100
        seed: Seed for numpy.random.default_rng

    Returns:
        DurrReport
    """
    if n < 2:
        raise PreconditionError(f"durr_criteria needs n >= 2, got n={n}")
    if probes < 100:
        raise PreconditionError(f"durr_criteria needs probes >= 100, got {probes}")
    rng = np.random.default_rng(seed)

    continuity = all(_continuity_probe(n, rng) for _ in range(probes))
    global_max = _global_max_ok(n, rng, probes)
    global_min = _global_min_ok(n, rng, probes)
    monotonic = all(_equalization_probe(n, rng) for _ in range(probes))
    monotonic = all(_parallelization_probe(n, rng) for _ in range(probes)) and monotonic

    report = DurrReport(continuity_ok=continuity, global_max_ok=global_max, global_min_ok=global_min,
                        monotonicity_ok=monotonic, probe_count=5 * probes + n + 1)
    if not report.all_ok:
        logger.warning("Duerr criteria failed for n=%d seed=%d: %s", n, seed, report.to_dict())
    return report


# Bagan comparison

@dataclass(frozen=True)
class BaganComparison:
    family: Family
    rows: List[SweepRow]
    d2_increments: List[float] = field(default_factory=list)
    c2_increments: List[float] = field(default_factory=list)
    db2_increments: List[float] = field(default_factory=list)

    @property
    def min_gap(self) -> float:
        """min over theta of D^2 - bound^2"""
        return min(r.D2 - r.DB2_bound for r in self.rows)

    def d2_dominates(self, tol: float = DEFAULT_SETTINGS.duality_tol) -> bool:
        return self.min_gap >= -tol

    def complementary(self, tol: float = DEFAULT_SETTINGS.duality_tol) -> bool:
        """D^2 and C^2 never move in the same direction between grid points"""
        return all(dd * dc <= tol for dd, dc in zip(self.d2_increments, self.c2_increments))

    def bound_tracks_coherence(self, lo: float, hi: float) -> bool:
        """bound^2 and C^2 both increase at every step with both endpoints in (lo, hi)"""
        steps = 0
        for k, (db, dc) in enumerate(zip(self.db2_increments, self.c2_increments)):
            if lo < self.rows[k].theta and self.rows[k + 1].theta < hi:
                steps += 1
                if not (db > 0.0 and dc > 0.0):
                    return False
        return steps > 0

    def summary(self) -> Dict[str, Any]:
        return {
            "family": self.family.value,
            "points": len(self.rows),
            "min_D2_minus_DB2": self.min_gap,
            "d2_dominates": self.d2_dominates(),
            "complementary": self.complementary(),
        }

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization"""
        return {
            "summary": self.summary(),
            "rows": [r.to_dict() for r in self.rows],
            "d2_increments": list(self.d2_increments),
            "c2_increments": list(self.c2_increments),
            "db2_increments": list(self.db2_increments),
        }


def bagan_comparison(family, theta_grid: Sequence[float]) -> BaganComparison:
    """
    Tabulate D^2, C^2 and the Bagan bound^2 over a theta grid

    Args:
        family: figure1 or figure2
        theta_grid: Angles in radians, increasing

    Returns:
        BaganComparison with per-row values and step increments
    """
    rows = rows_for_grid(family, theta_grid)
    d2 = np.diff([r.D2 for r in rows])
    c2 = np.diff([r.C2 for r in rows])
    db2 = np.diff([r.DB2_bound for r in rows])
    comparison = BaganComparison(family=parse_family(family), rows=rows, d2_increments=d2.tolist(),
                                 c2_increments=c2.tolist(), db2_increments=db2.tolist())
    logger.debug("bagan comparison %s", comparison.summary())
    return comparison


def random_corpus(count: int, seed: int, ns: Sequence[int] = (2, 3, 4, 5),
                  ms: Sequence[int] = (1, 2, 3, 4, 5, 6)) -> List[PureJointState]:
    """Seeded pure states cycling through every (n, m) combination"""
    rng = np.random.default_rng(seed)
    combos = [(n, m) for n in ns for m in ms]
    return [random_state(*combos[k % len(combos)], rng) for k in range(count)]
