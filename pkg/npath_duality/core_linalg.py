"""
Complex linear algebra helpers

Small dense complex vectors and matrices are plain numpy arrays of dtype
complex128. The helpers here validate them (finite, right shape) and provide
the handful of operations the rest of the package needs: inner products,
Gram matrices, numerical rank and density-matrix checks.

Inner product convention: inner(u, v) = <u|v> conjugates the FIRST
argument (physics convention, numpy.vdot). Note that many numerical
libraries conjugate the second argument instead.
"""

import logging
from typing import List, Sequence

import numpy as np

from .config import DEFAULT_SETTINGS
from .errors import DimensionError, NonFiniteError

logger = logging.getLogger(__name__)


def as_vector(entries, name: str = "vector") -> np.ndarray:
    """
    Convert entries to a finite one-dimensional complex128 array

    Args:
        entries: Sequence of numbers (complex or real) or an existing array
        name: Label used in error messages

    Returns:
        A new read-only complex128 array
    """
    vec = np.array(entries, dtype=np.complex128)
    if vec.ndim != 1 or vec.size == 0:
        raise DimensionError(f"{name} must be a non-empty one-dimensional array, got shape {vec.shape}")
    if not np.all(np.isfinite(vec)):
        raise NonFiniteError(f"{name} contains NaN or Inf")
    vec.flags.writeable = False
    return vec


def as_matrix(entries, name: str = "matrix") -> np.ndarray:
    """
    Convert entries to a finite two-dimensional complex128 array

    Args:
        entries: Nested sequence of numbers or an existing array
        name: Label used in error messages

    Returns:
        A new read-only complex128 array
    """
    mat = np.array(entries, dtype=np.complex128)
    if mat.ndim != 2 or mat.size == 0:
        raise DimensionError(f"{name} must be a non-empty rectangular matrix, got shape {mat.shape}")
    if not np.all(np.isfinite(mat)):
        raise NonFiniteError(f"{name} contains NaN or Inf")
    mat.flags.writeable = False
    return mat


def _require_square(m: np.ndarray, name: str = "matrix") -> None:
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {m.shape}")


def inner(u, v) -> complex:
    """
    Inner product <u|v>, conjugate-linear in u

    Args:
        u: Bra-side vector
        v: Ket-side vector

    Returns:
        Complex scalar <u|v>
    """
    u = as_vector(u, "u")
    v = as_vector(v, "v")
    if u.shape != v.shape:
        raise DimensionError(f"dimension mismatch: {u.size} vs {v.size}")
    return complex(np.vdot(u, v))


def norm(v) -> float:
    """Euclidean norm of a complex vector"""
    return float(np.linalg.norm(as_vector(v)))


def gram(vectors: Sequence) -> np.ndarray:
    """
    Gram matrix G[i][j] = <v_i|v_j>

    The upper triangle is computed and the lower triangle is filled by
    conjugation, so the result is exactly Hermitian with a real diagonal.

    Args:
        vectors: Vectors of a common dimension

    Returns:
        len(vectors) x len(vectors) complex128 array
    """
    vecs: List[np.ndarray] = [as_vector(v, f"vectors[{i}]") for i, v in enumerate(vectors)]
    if not vecs:
        raise DimensionError("gram needs at least one vector")
    dim = vecs[0].size
    for i, v in enumerate(vecs):
        if v.size != dim:
            raise DimensionError(f"vectors[{i}] has dimension {v.size}, expected {dim}")

    n = len(vecs)
    g = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        g[i, i] = np.vdot(vecs[i], vecs[i]).real
        for j in range(i + 1, n):
            g[i, j] = np.vdot(vecs[i], vecs[j])
            g[j, i] = np.conj(g[i, j])
    g.flags.writeable = False
    return g


def hermitian_eigenvalues(m) -> np.ndarray:
    """Ascending eigenvalues of the Hermitian part of a square matrix"""
    m = as_matrix(m)
    _require_square(m)
    return np.linalg.eigvalsh(0.5 * (m + m.conj().T))


def numerical_rank(m, tol: float = DEFAULT_SETTINGS.rank_tol) -> int:
    """
    Count eigenvalues above tol times the largest eigenvalue

    Args:
        m: Hermitian positive semidefinite matrix, typically a Gram matrix
        tol: Relative threshold, must be positive

    Returns:
        Numerical rank
    """
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    eigs = hermitian_eigenvalues(m)
    largest = float(eigs[-1])
    if largest <= 0.0:
        return 0
    return int(np.count_nonzero(eigs > tol * largest))


def is_hermitian_psd_trace1(m, tol: float = DEFAULT_SETTINGS.density_tol) -> bool:
    """
    Check that m is a valid density matrix

    Args:
        m: Square matrix
        tol: Absolute tolerance applied to Hermiticity, eigenvalues and trace

    Returns:
        True iff max|m - m^dagger| <= tol, all eigenvalues >= -tol and |tr m - 1| <= tol
    """
    m = as_matrix(m)
    _require_square(m)
    if np.max(np.abs(m - m.conj().T)) > tol:
        return False
    if abs(np.trace(m) - 1.0) > tol:
        return False
    eigs = np.linalg.eigvalsh(0.5 * (m + m.conj().T))
    if eigs[0] < -tol:
        return False
    if eigs[0] < 0.0:
        logger.debug("smallest eigenvalue %.3e treated as zero", eigs[0])
    return True


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """
    Haar-random unitary from the QR decomposition of a complex Gaussian matrix

    Args:
        dim: Matrix dimension
        rng: Seeded numpy Generator

    Returns:
        dim x dim unitary matrix
    """
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def overlap_complements(vectors: Sequence) -> np.ndarray:
    """
    Matrix of ||v_i||^2 ||v_j||^2 - |<v_i|v_j>|^2, i.e. 1 - |<v_i|v_j>|^2 for unit vectors

    Evaluated through the Lagrange identity as sum_{k<l} |v_ik v_jl - v_il v_jk|^2,
    a sum of non-negative terms that stays accurate when an overlap approaches 1.

    Args:
        vectors: Vectors of a common dimension

    Returns:
        Real symmetric non-negative matrix with a zero diagonal
    """
    vecs = [as_vector(v, f"vectors[{i}]") for i, v in enumerate(vectors)]
    if not vecs or len({v.size for v in vecs}) > 1:
        raise DimensionError("overlap_complements needs vectors of one common dimension")
    rows = np.array(vecs)
    wedge = (rows[:, None, :, None] * rows[None, :, None, :]
             - rows[:, None, None, :] * rows[None, :, :, None])
    out = 0.5 * np.sum(np.abs(wedge) ** 2, axis=(2, 3))
    out.flags.writeable = False
    return out
