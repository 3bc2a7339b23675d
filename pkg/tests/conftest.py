"""Shared fixtures for the npath_duality tests."""

import numpy as np
import pytest

from helpers import uniform_state
from npath_duality.joint_state import DetectorSet, PathAmplitudes, PureJointState


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def orthogonal_state():
    amps = PathAmplitudes.normalized([1.0, 2.0j, -0.5])
    return PureJointState(amps, DetectorSet(np.eye(3)))


@pytest.fixture
def identical_state():
    return uniform_state(np.tile([0.6, 0.8j], (4, 1)))
