"""State builders shared by several test modules."""

import math

import numpy as np

from npath_duality.joint_state import DetectorSet, PathAmplitudes, PureJointState


def two_path_state(overlap: complex, p1: float = 0.5) -> PureJointState:
    """N=2 state with <d_1|d_2> = overlap (|overlap| <= 1) and p = (p1, 1 - p1)"""
    overlap = complex(overlap)
    d1 = [1.0, 0.0]
    d2 = [overlap, math.sqrt(max(0.0, 1.0 - abs(overlap) ** 2))]
    amps = PathAmplitudes(np.array([math.sqrt(p1), math.sqrt(1.0 - p1)]))
    return PureJointState(amps, DetectorSet(np.array([d1, d2])))


def uniform_state(detectors) -> PureJointState:
    """Equal path amplitudes over the given detector rows"""
    detectors = np.asarray(detectors, dtype=complex)
    n = detectors.shape[0]
    return PureJointState(PathAmplitudes(np.full(n, 1.0 / math.sqrt(n))), DetectorSet(detectors))
