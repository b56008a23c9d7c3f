"""Imaginary-trace duality, the quotient L1/u1 and coadjoint actions.

A class [x] modulo skew-Hermitian operators is stored through its Hermitian
representative (x + x*)/2. That representative is itself a member of the
coset (x minus it is skew), so every formula written for a coset member can
be applied to it verbatim. In particular the functional of [x] on u(n),
b -> Im Tr(x b), equals b -> Im Tr(rep b), because
Im Tr(x b) = Tr((x + x*) b) / 2i for skew b.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import in_b_plus, p_b2
from .matrix_core import ValidationError, _check_same_dim, as_matrix, commutator

HERMITIAN_TOL = 1e-12


def im_trace_pair(a, b) -> float:
    """Im Tr(a b)."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    _check_same_dim(a, b)
    # Tr(ab) = sum_ij a_ij b_ji without forming the product
    return float(np.einsum("ij,ji->", a, b).imag)


def _unit(n, i, j):
    e = np.zeros((n, n), dtype=np.complex128)
    e[i, j] = 1.0
    return e


def _strict_pairs(n):
    # (m, k) with m > k, lexicographic in (m, k)
    return [(m, k) for m in range(n) for k in range(m)]


def u_basis(n):
    """Real basis of u(n): iE_kk, then E_km - E_mk and i(E_km + E_mk), m > k."""
    out = [1j * _unit(n, k, k) for k in range(n)]
    for m, k in _strict_pairs(n):
        out.append(_unit(n, k, m) - _unit(n, m, k))
        out.append(1j * (_unit(n, k, m) + _unit(n, m, k)))
    return out


def b_plus_basis(n):
    """Real basis of b+(n): E_kk, then E_mk and iE_mk, m > k."""
    out = [_unit(n, k, k) for k in range(n)]
    for m, k in _strict_pairs(n):
        out.append(_unit(n, m, k))
        out.append(1j * _unit(n, m, k))
    return out


def pairing_gram(n):
    """Gram matrix of Im Tr between the bases of u(n) and b+(n).

    Returns ``(gram, smallest_singular_value)``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    us, bs = u_basis(n), b_plus_basis(n)
    gram = np.array([[im_trace_pair(a, b) for b in bs] for a in us])
    smin = float(np.linalg.svd(gram, compute_uv=False).min())
    return gram, smin


@dataclass(frozen=True, eq=False)
class QuotientClass:
    """Class of an operator modulo skew-Hermitian ones."""

    rep: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.rep)
        object.__setattr__(self, "rep", m)
        scale = max(float(np.abs(m).max()), 1e-300)
        if np.abs(m - m.conj().T).max() > HERMITIAN_TOL * scale:
            raise ValidationError("class representative must be Hermitian")

    @classmethod
    def unchecked(cls, rep) -> "QuotientClass":
        obj = object.__new__(cls)
        object.__setattr__(obj, "rep", np.asarray(rep, dtype=np.complex128))
        return obj

    @property
    def dim(self) -> int:
        return self.rep.shape[0]


def class_of(x) -> QuotientClass:
    x = as_matrix(x)
    return QuotientClass.unchecked(0.5 * (x + x.conj().T))


def eval_class(c: QuotientClass, b) -> float:
    """Value of the functional [x] on a skew-Hermitian b, i.e. Im Tr(x b)."""
    return im_trace_pair(c.rep, b)


def coadjoint_group(g, c: QuotientClass) -> QuotientClass:
    """Ad*_g [x] = [g^-1 x g]."""
    g = np.asarray(g, dtype=np.complex128)
    _check_same_dim(g, c.rep)
    y = g.conj().T @ c.rep @ g
    return QuotientClass.unchecked(0.5 * (y + y.conj().T))


def coadjoint_algebra_bplus(a, b) -> np.ndarray:
    """ad*_a b = -(T++ + 1/2 T0)([a, b] + [a, b]*) for b in b+."""
    b = as_matrix(b)
    if not in_b_plus(b):
        raise ValidationError("second argument must lie in b+")
    return -p_b2(commutator(a, b))
