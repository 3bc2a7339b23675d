"""
Shared settings for the N-path duality toolkit

Every tolerance and default used by the library lives here so that the
numerical contract is stated once. Operations that accept a tolerance take
it as a keyword argument defaulting to the DEFAULT_SETTINGS value; the value
types in joint_state validate against DEFAULT_SETTINGS directly.
"""

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class Settings:
    # validation
    normalization_tol: float = 1e-12
    density_tol: float = 1e-10
    rank_tol: float = 1e-10

    # measures and duality checks
    duality_tol: float = 1e-12
    radicand_tol: float = 1e-12
    englert_amp_tol: float = 1e-9
    imag_residue_tol: float = 1e-12

    # theta sweeps, radians, closed interval
    theta_start: float = 0.0
    theta_end: float = math.pi
    theta_steps: int = 181

    # phase scans
    scan_points: int = 256
    min_scan_points: int = 64

    durr_probes: int = 1000

    # output
    csv_digits: int = 17
    scenario_version: int = 1


DEFAULT_SETTINGS = Settings()
