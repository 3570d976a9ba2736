"""Dense complex linear algebra for small Hilbert-space dimensions.

Hermitian matrices are plain ``numpy`` complex arrays validated on entry.
The module fixes one real-coordinate chart for hermitian-matrix space (a
generalized Gell-Mann basis) so that every induced measurement map becomes
an ordinary real matrix with a reproducible layout.

Basis ordering for dimension n (n*n elements, orthonormal in the
Hilbert-Schmidt inner product):

  0:                 identity / sqrt(n)
  next n(n-1)/2:     (E_ij + E_ji) / sqrt(2)          for i < j, row-major
  next n(n-1)/2:     i (E_ij - E_ji) / sqrt(2)        for i < j, row-major
  last n-1:          (sum_{j<=l} E_jj - l E_ll) / sqrt(l(l+1))   for l = 1..n-1
"""

from __future__ import annotations

import numpy as np

HERMITICITY_TOL = 1e-9


class ContractViolation(ValueError):
    """An operation was called outside its documented contract."""


class DegenerateInputError(ContractViolation):
    """Input is numerically degenerate (rank deficient, zero, ...)."""


def as_complex_matrix(a) -> np.ndarray:
    """Validate and return a finite 2-d complex128 array."""
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 2:
        raise ContractViolation(f"expected a 2-d matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr.view(np.float64))):
        raise ContractViolation("matrix contains NaN or Inf entries")
    return arr


def hermitian_part(a: np.ndarray) -> np.ndarray:
    return (a + a.conj().T) / 2


def as_hermitian(a, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Return the symmetrized copy of ``a``; reject genuinely non-hermitian input.

    Symmetrization absorbs float noise up to ``tol``; larger residues are a
    caller bug, not noise, and raise.
    """
    arr = as_complex_matrix(a)
    if arr.shape[0] != arr.shape[1]:
        raise ContractViolation(f"hermitian matrix must be square, got {arr.shape}")
    residue = np.abs(arr - arr.conj().T).max() if arr.size else 0.0
    if residue > tol:
        raise ContractViolation(f"hermiticity residue {residue:.3e} exceeds {tol:.1e}")
    return hermitian_part(arr)


def hs_inner(a: np.ndarray, b: np.ndarray) -> float:
    """Hilbert-Schmidt inner product tr(a b) of two hermitian matrices."""
    if a.shape != b.shape:
        raise ContractViolation(f"dimension mismatch: {a.shape} vs {b.shape}")
    val = np.sum(a * b.T)
    if abs(val.imag) > 1e-12 * max(1.0, abs(val.real)):
        raise ContractViolation(f"inner product has imaginary residue {val.imag:.3e}")
    return float(val.real)


def hs_norm(a: np.ndarray) -> float:
    """Hilbert-Schmidt norm sqrt(tr(a^2)) = Frobenius norm for hermitian a."""
    return float(np.linalg.norm(a))


def eig_hermitian(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and a unitary of eigenvectors of hermitian ``a``.

    Contract: a = V diag(w) V^dag and V^dag V = I, both to 1e-10.
    """
    a = as_hermitian(a)
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise RuntimeError(f"eigendecomposition failed for shape {a.shape}: {exc}")
    return w, v


def qr_isometry(a: np.ndarray, rank_tol: float = 1e-12) -> np.ndarray:
    """Orthonormalize the columns of ``a`` (m x n, m >= n) into an isometry.

    The R factor's diagonal is rotated to be real positive, which makes the
    map deterministic and idempotent on matrices that are already isometries.
    """
    a = as_complex_matrix(a)
    m, n = a.shape
    if m < n:
        raise ContractViolation(f"need at least as many rows as columns, got {a.shape}")
    q, r = np.linalg.qr(a)
    diag = np.abs(np.diagonal(r))
    scale = diag.max() if n else 0.0
    if n and diag.min() <= rank_tol * max(1.0, scale):
        raise DegenerateInputError(
            f"rank-deficient input: smallest R diagonal {diag.min():.3e}"
        )
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * phases[np.newaxis, :]


class GellMannBasis:
    """Orthonormal hermitian basis of H(C^n) in the ordering documented above."""

    _cache: dict[int, "GellMannBasis"] = {}

    def __init__(self, dim: int):
        if dim < 1:
            raise ContractViolation(f"dimension must be >= 1, got {dim}")
        self.dim = dim
        self.matrices = self._build(dim)

    @classmethod
    def get(cls, dim: int) -> "GellMannBasis":
        basis = cls._cache.get(dim)
        if basis is None:
            basis = cls(dim)
            cls._cache[dim] = basis
        return basis

    @staticmethod
    def _build(n: int) -> np.ndarray:
        mats = np.zeros((n * n, n, n), dtype=np.complex128)
        mats[0] = np.eye(n) / np.sqrt(n)
        idx = 1
        for i in range(n):
            for j in range(i + 1, n):
                mats[idx, i, j] = mats[idx, j, i] = 1 / np.sqrt(2)
                idx += 1
        for i in range(n):
            for j in range(i + 1, n):
                mats[idx, i, j] = 1j / np.sqrt(2)
                mats[idx, j, i] = -1j / np.sqrt(2)
                idx += 1
        for l in range(1, n):
            c = 1 / np.sqrt(l * (l + 1))
            for j in range(l):
                mats[idx, j, j] = c
            mats[idx, l, l] = -l * c
            idx += 1
        return mats

    def vectorize(self, a: np.ndarray) -> np.ndarray:
        if a.shape != (self.dim, self.dim):
            raise ContractViolation(f"expected shape {(self.dim, self.dim)}, got {a.shape}")
        return np.einsum("kab,ba->k", self.matrices, a).real.copy()

    def devectorize(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=np.float64)
        if v.shape != (self.dim * self.dim,):
            raise ContractViolation(
                f"expected coordinate vector of length {self.dim * self.dim}, got {v.shape}"
            )
        return np.einsum("k,kab->ab", v, self.matrices)


def vectorize(a: np.ndarray) -> np.ndarray:
    """Real coordinates of a hermitian matrix in the fixed basis (an isometry)."""
    return GellMannBasis.get(a.shape[0]).vectorize(a)


def devectorize(v: np.ndarray, dim: int) -> np.ndarray:
    """Inverse of :func:`vectorize`."""
    return GellMannBasis.get(dim).devectorize(v)


def complex_matrix_to_json(a: np.ndarray) -> list:
    """Nested rows of [re, im] pairs; floats keep full decimal precision."""
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(a)]


def complex_matrix_from_json(rows) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=np.complex128)


def hermitian_to_json(a: np.ndarray) -> dict:
    return {"dim": int(a.shape[0]), "entries": complex_matrix_to_json(a)}


def hermitian_from_json(obj: dict) -> np.ndarray:
    a = complex_matrix_from_json(obj["entries"])
    if a.shape != (obj["dim"], obj["dim"]):
        raise ContractViolation("serialized dim does not match entry array")
    return as_hermitian(a)
