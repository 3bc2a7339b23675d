"""
Tests for the complex linear algebra helpers.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from npath_duality.core_linalg import (
    gram,
    inner,
    is_hermitian_psd_trace1,
    norm,
    numerical_rank,
    overlap_complements,
    random_unitary,
)
from npath_duality.errors import DimensionError, NonFiniteError
from npath_duality.scenarios import degenerate_state, figure1_state

E1 = [1.0, 0.0, 0.0]
E2 = [0.0, 1.0, 0.0]
E3 = [0.0, 0.0, 1.0]

bounded_complex = st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False)


class TestInner:

    def test_normalized_basis_vector(self):
        assert inner(E1, E1) == 1 + 0j

    def test_orthonormal_pair(self):
        assert inner(E1, E2) == 0

    def test_rotated_pair(self):
        theta = math.pi / 6
        u = [math.cos(theta), math.sin(theta), 0.0]
        v = [math.sin(theta), math.cos(theta), 0.0]
        assert inner(u, v) == pytest.approx(math.sqrt(3) / 2, abs=1e-15)

    def test_conjugates_first_argument(self):
        assert inner([1j, 0.0], [1.0, 0.0]) == pytest.approx(-1j)
        assert inner([1.0, 0.0], [1j, 0.0]) == pytest.approx(1j)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            inner(E1, [1.0, 0.0])

    def test_rejects_nan(self):
        with pytest.raises(NonFiniteError):
            inner([float("nan"), 0.0], [1.0, 0.0])

    def test_norm_of_complex_vector(self):
        assert norm([3.0, 4j]) == pytest.approx(5.0)

    @pytest.mark.property
    @given(st.integers(min_value=1, max_value=6).flatmap(
        lambda n: st.tuples(st.lists(bounded_complex, min_size=n, max_size=n),
                            st.lists(bounded_complex, min_size=n, max_size=n))))
    @settings(max_examples=200, deadline=None)
    def test_conjugate_symmetry(self, pair):
        u, v = pair
        np.testing.assert_allclose(inner(u, v), np.conj(inner(v, u)), rtol=1e-12, atol=1e-9)

    @pytest.mark.property
    @given(st.integers(min_value=1, max_value=6).flatmap(
        lambda n: st.tuples(st.lists(bounded_complex, min_size=n, max_size=n),
                            st.lists(bounded_complex, min_size=n, max_size=n))))
    @settings(max_examples=200, deadline=None)
    def test_cauchy_schwarz(self, pair):
        u, v = pair
        assert abs(inner(u, v)) <= np.linalg.norm(u) * np.linalg.norm(v) * (1 + 1e-12) + 1e-12


class TestGram:

    def test_orthonormal_triple_is_identity(self):
        np.testing.assert_array_equal(gram([E1, E2, E3]), np.eye(3))

    def test_figure1_detector_set(self):
        theta = 0.3
        g = gram(figure1_state(theta).dets.vectors())
        assert g[0, 1] == pytest.approx(math.sin(2 * theta), abs=1e-15)
        assert g[0, 2] == 0
        assert g[1, 2] == 0

    def test_identical_vectors_give_all_ones(self):
        v = [0.6, 0.8j]
        np.testing.assert_allclose(gram([v, v, v]), np.ones((3, 3)), atol=1e-15)

    def test_exactly_hermitian_with_real_diagonal(self, rng):
        vecs = rng.standard_normal((5, 4)) + 1j * rng.standard_normal((5, 4))
        g = gram(list(vecs))
        np.testing.assert_array_equal(g, g.conj().T)
        assert np.all(np.diag(g).imag == 0)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            gram([E1, [1.0, 0.0]])


class TestOverlapComplements:

    def test_matches_one_minus_squared_overlap(self, rng):
        vecs = rng.standard_normal((4, 3)) + 1j * rng.standard_normal((4, 3))
        vecs /= np.linalg.norm(vecs, axis=1, keepdims=True)
        expected = 1.0 - np.abs(gram(list(vecs))) ** 2
        np.testing.assert_allclose(overlap_complements(list(vecs)), expected, atol=1e-12)

    def test_zero_diagonal_and_symmetric(self, rng):
        vecs = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
        out = overlap_complements(list(vecs))
        assert np.all(np.diag(out) == 0.0)
        np.testing.assert_array_equal(out, out.T)

    def test_parallel_pair_is_exactly_zero(self):
        v = [0.6, 0.8j]
        assert overlap_complements([v, v])[0, 1] == 0.0

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            overlap_complements([E1, [1.0, 0.0]])


class TestNumericalRank:

    def test_identity(self):
        assert numerical_rank(np.eye(3)) == 3

    def test_all_ones(self):
        assert numerical_rank(np.ones((3, 3))) == 1

    def test_degenerate_detector_set(self):
        assert numerical_rank(degenerate_state(4).dets.gram()) == 3

    def test_rejects_non_square(self):
        with pytest.raises(DimensionError):
            numerical_rank(np.ones((2, 3)))

    def test_rejects_non_positive_tolerance(self):
        with pytest.raises(ValueError):
            numerical_rank(np.eye(2), tol=0.0)

    @pytest.mark.property
    def test_invariant_under_unitary_change_of_basis(self, rng):
        for _ in range(50):
            n, m = rng.integers(2, 6), rng.integers(1, 6)
            vecs = rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))
            if rng.random() < 0.5 and n > 1:
                vecs[-1] = vecs[0] + 2.0 * vecs[1 % n]
            u = random_unitary(int(m), rng)
            rotated = [u @ v for v in vecs]
            assert numerical_rank(gram(list(vecs)), 1e-10) == numerical_rank(gram(rotated), 1e-10)


class TestDensityCheck:

    def test_maximally_mixed(self):
        assert is_hermitian_psd_trace1(np.diag([1 / 3, 1 / 3, 1 / 3]))

    def test_wrong_trace(self):
        assert not is_hermitian_psd_trace1(np.diag([1.0, 0.5]))

    def test_not_hermitian(self):
        assert not is_hermitian_psd_trace1(np.array([[0.5, 0.1], [0.0, 0.5]]))

    def test_negative_eigenvalue(self):
        assert not is_hermitian_psd_trace1(np.array([[0.5, 0.9], [0.9, 0.5]]))

    def test_reduced_state_of_joint_state(self):
        from npath_duality.joint_state import partial_trace
        assert is_hermitian_psd_trace1(partial_trace(figure1_state(0.4)).rho)
