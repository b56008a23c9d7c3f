"""Dense complex matrix arithmetic: adjoints, commutators, Schatten norms,
exponentials of skew-Hermitian matrices and seeded random generators.

Plain ``numpy`` arrays of dtype ``complex128`` play the role of generic
operators. :class:`SkewHermitian` and :class:`UnitaryElement` are thin
validated wrappers; both expose ``__array__`` so they can be handed to any
function below.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .jacobi import SVDConvergenceError, jacobi_svd

UNITARY_TOL = 1e-12
SKEW_TOL = 1e-12


class ValidationError(ValueError):
    """A matrix failed the invariant checked at construction."""


def as_matrix(a) -> np.ndarray:
    """Coerce to a square, finite ``complex128`` array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] < 1:
        raise ValidationError("matrix dimension must be positive")
    if not np.all(np.isfinite(m)):
        raise ValidationError("matrix has non-finite entries")
    return m


def _check_same_dim(*mats):
    dims = {m.shape for m in mats}
    if len(dims) != 1:
        raise ValueError(f"dimension mismatch: {sorted(dims)}")


def _op_norm(m):
    return float(np.linalg.norm(m, 2)) if m.size else 0.0


@dataclass(frozen=True, eq=False)
class SkewHermitian:
    """Element of the Lie algebra u(n), ``x* = -x``."""

    matrix: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        defect = _op_norm(m + m.conj().T)
        if defect > SKEW_TOL * _op_norm(m):
            raise ValidationError(f"not skew-Hermitian (defect {defect:.3e})")

    @classmethod
    def unchecked(cls, m) -> "SkewHermitian":
        obj = object.__new__(cls)
        object.__setattr__(obj, "matrix", np.asarray(m, dtype=np.complex128))
        return obj

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)


@dataclass(frozen=True, eq=False)
class UnitaryElement:
    """Element of the group U(n)."""

    matrix: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        n = m.shape[0]
        defect = _op_norm(m.conj().T @ m - np.eye(n))
        if defect > UNITARY_TOL * n:
            raise ValidationError(f"not unitary (defect {defect:.3e})")

    @classmethod
    def unchecked(cls, m) -> "UnitaryElement":
        obj = object.__new__(cls)
        object.__setattr__(obj, "matrix", np.asarray(m, dtype=np.complex128))
        return obj

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def inverse(self) -> np.ndarray:
        return self.matrix.conj().T

    def __matmul__(self, other):
        if isinstance(other, UnitaryElement):
            return UnitaryElement.unchecked(self.matrix @ other.matrix)
        return self.matrix @ np.asarray(other)

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)


def adjoint(a) -> np.ndarray:
    return np.asarray(a, dtype=np.complex128).conj().T


def commutator(a, b) -> np.ndarray:
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    _check_same_dim(a, b)
    return a @ b - b @ a


def trace(a) -> complex:
    return complex(np.trace(np.asarray(a, dtype=np.complex128)))


def svd_values(a, max_sweeps=None) -> np.ndarray:
    """Singular values in non-increasing order (one-sided Jacobi)."""
    kw = {} if max_sweeps is None else {"max_sweeps": max_sweeps}
    return jacobi_svd(as_matrix(a), compute_uv=False, **kw)


def schatten_norm(a, p=1) -> float:
    """Schatten p-norm for p in {1, 2, inf}.

    p=2 is the Frobenius norm and is computed from the entries directly.
    """
    if p == 2:
        m = np.asarray(a, dtype=np.complex128)
        return float(np.sqrt(np.sum(m.real**2 + m.imag**2)))
    if p == 1:
        return float(np.sum(svd_values(a)))
    if p in (np.inf, "inf"):
        return float(svd_values(a)[0])
    raise ValueError(f"unsupported Schatten index p={p!r}")


def op_norm(a) -> float:
    return schatten_norm(a, np.inf)


def exp_skew(x) -> UnitaryElement:
    """exp(x) for skew-Hermitian x.

    Writes x = iH with H = -ix Hermitian and uses H = V diag(lam) V*, so
    exp(x) = V diag(exp(i lam)) V*.
    """
    x = np.asarray(x, dtype=np.complex128)
    h = -1j * x
    h = 0.5 * (h + h.conj().T)
    try:
        lam, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise SVDConvergenceError(f"eigensolver failed: {exc}") from exc
    return UnitaryElement.unchecked((v * np.exp(1j * lam)) @ v.conj().T)


def _rng(seed):
    return np.random.default_rng(seed)


def _complex_gaussian(rng, dim):
    return rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))


def random_skew_hermitian(dim, seed) -> SkewHermitian:
    """(G - G*)/2 for an i.i.d. complex Gaussian G."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    g = _complex_gaussian(_rng(seed), dim)
    return SkewHermitian.unchecked(0.5 * (g - g.conj().T))


def random_unitary(dim, seed) -> UnitaryElement:
    return exp_skew(random_skew_hermitian(dim, seed))


def random_trace_class(dim, seed, normalize=True) -> np.ndarray:
    """Random operator; with ``normalize`` it is rescaled to unit trace norm."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    a = _complex_gaussian(_rng(seed), dim)
    if normalize:
        a = a / schatten_norm(a, 1)
    return a
