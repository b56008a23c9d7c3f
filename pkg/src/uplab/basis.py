"""Symmetric basis window, triangular truncations and the splitting
L2 = u2 (+) b2+.

Storage rows/columns list the integer labels in ascending order, so the
"upper triangular" predicate ``m >= n`` on labels (row m, column n) is the
*lower* triangle of the stored array. Everything here is phrased in labels
and only translated to ``np.tril`` at the last moment.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matrix_core import SkewHermitian, ValidationError, as_matrix

MEMBERSHIP_TOL = 1e-12


@dataclass(frozen=True)
class BasisWindow:
    """Labels -N, ..., N-1 mapped increasingly onto storage 0, ..., 2N-1."""

    half_width: int

    def __post_init__(self):
        if int(self.half_width) < 1:
            raise ValueError("half_width must be >= 1")

    @classmethod
    def for_dim(cls, dim: int) -> "BasisWindow":
        if dim % 2:
            raise ValueError(f"symmetric window needs an even dimension, got {dim}")
        return cls(dim // 2)

    @property
    def dim(self) -> int:
        return 2 * self.half_width

    @property
    def labels(self) -> np.ndarray:
        return np.arange(-self.half_width, self.half_width)

    def index(self, label: int) -> int:
        if not -self.half_width <= label < self.half_width:
            raise KeyError(label)
        return label + self.half_width

    @property
    def minus(self) -> slice:
        """Storage slice of H- (labels -N..-1)."""
        return slice(0, self.half_width)

    @property
    def plus(self) -> slice:
        """Storage slice of H+ (labels 0..N-1)."""
        return slice(self.half_width, self.dim)

    def to_json(self) -> dict:
        return {"N": self.half_width}


def _prepare(a, w):
    m = as_matrix(a)
    if w is not None and m.shape[0] != w.dim:
        raise ValueError(f"matrix dim {m.shape[0]} does not match window dim {w.dim}")
    return m


def t_plus(a, w=None) -> np.ndarray:
    """Keep entries (m, n) with m >= n."""
    return np.tril(_prepare(a, w))


def t_plus_plus(a, w=None) -> np.ndarray:
    """Keep entries (m, n) with m > n."""
    return np.tril(_prepare(a, w), -1)


def t_zero(a, w=None) -> np.ndarray:
    m = _prepare(a, w)
    return np.diag(np.diag(m))


def half_diagonal_truncation(a, w=None) -> np.ndarray:
    """(T++ + 1/2 T0)(a)."""
    m = _prepare(a, w)
    out = np.tril(m, -1)
    idx = np.arange(m.shape[0])
    out[idx, idx] = 0.5 * m[idx, idx]
    return out


def p_b2(x, w=None) -> np.ndarray:
    """Projection onto b+ along u: (T++ + 1/2 T0)(x + x*)."""
    m = _prepare(x, w)
    return half_diagonal_truncation(m + m.conj().T)


def p_u2(x, w=None) -> np.ndarray:
    """Projection onto u along b+: x - p_b2(x)."""
    m = _prepare(x, w)
    return m - p_b2(m)


def in_b_plus(x, tol=MEMBERSHIP_TOL) -> bool:
    m = as_matrix(x)
    bound = tol * float(np.linalg.norm(m, 2))
    below = np.triu(m, 1)
    if below.size and np.abs(below).max() > bound:
        return False
    return bool(np.abs(np.diag(m).imag).max() <= bound)


def in_u(x, tol=MEMBERSHIP_TOL) -> bool:
    m = as_matrix(x)
    bound = tol * float(np.linalg.norm(m, 2))
    return bool(np.linalg.norm(m + m.conj().T, 2) <= bound)


def shift_u(w: BasisWindow) -> np.ndarray:
    """Partial isometry H- -> H+ sending label -n to label n-1."""
    u = np.zeros((w.dim, w.dim), dtype=np.complex128)
    for n in range(1, w.half_width + 1):
        u[w.index(n - 1), w.index(-n)] = 1.0
    return u


def embed_minus(k, w: BasisWindow) -> np.ndarray:
    """Extend an operator on H- by zero on H+."""
    k = as_matrix(k)
    if k.shape[0] != w.half_width:
        raise ValueError("block must be N x N")
    out = np.zeros((w.dim, w.dim), dtype=np.complex128)
    out[w.minus, w.minus] = k
    return out


def build_block_A(w: BasisWindow) -> SkewHermitian:
    """A = (0, u; -u*, 0) with respect to H = H+ (+) H-."""
    u = shift_u(w)
    return SkewHermitian.unchecked(u - u.conj().T)


def build_block_B(k, w: BasisWindow, tol=1e-10) -> np.ndarray:
    """B = (0, uK; 0, 0) with respect to H = H+ (+) H-, K Hermitian on H-."""
    k = as_matrix(k)
    if np.abs(k - k.conj().T).max() > tol * max(1.0, float(np.abs(k).max())):
        raise ValidationError("K must be Hermitian")
    return shift_u(w) @ embed_minus(k, w)
