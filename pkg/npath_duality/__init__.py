"""
npath_duality - wave-particle duality quantifiers for N-path interference

Computes the coherence C of the quanton and the path distinguishabilities D
and D_Q obtained from a quantum path-detector, checks the duality relation
D^2 + C^2 <= 1 (saturated for pure joint states) and compares D with the
Bagan et al. upper bound.
"""

from .config import DEFAULT_SETTINGS, Settings
from .core_linalg import gram, inner, is_hermitian_psd_trace1, numerical_rank
from .duality_suite import (
    DualityVerdict,
    DurrReport,
    bagan_comparison,
    check_additive_duality,
    check_dq_identity,
    check_mixed_duality,
    check_pure_duality,
    durr_criteria,
    identifiable_paths,
    uqsd_feasible,
)
from .errors import (
    DimensionError,
    DualityError,
    InvariantViolation,
    NonFiniteError,
    NumericalDomainError,
    PreconditionError,
    ScenarioParseError,
    UnknownFamilyError,
)
from .interference_pattern import PhaseScan, intensity, phase_scan, visibility
from .joint_state import (
    DetectorSet,
    Ensemble,
    PathAmplitudes,
    PureJointState,
    QuantonDensityMatrix,
    partial_trace,
    reduce_ensemble,
)
from .measures import (
    MeasureReport,
    bagan_DB_bound,
    coherence,
    distinguishability_D,
    distinguishability_DQ,
    englert_D,
    full_report,
    state_bagan_bound,
)
from .scenarios import Family, ScenarioSpec, SweepRow, build, sweep

__version__ = "1.0.0"
