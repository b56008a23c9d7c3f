"""The Poisson tensor on U(n) in the right trivialization, its sharp map and
derivatives, and residual checks for the cocycle and Jacobi identities.

Covectors are always quotient classes at the identity fiber; a point of the
cotangent bundle is a pair ``(g, QuotientClass)`` and is never materialized
otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .basis import p_b2, p_u2
from .matrix_core import (
    SkewHermitian,
    _check_same_dim,
    commutator,
    exp_skew,
    schatten_norm,
)
from .pairing import (
    QuotientClass,
    b_plus_basis,
    class_of,
    coadjoint_group,
    eval_class,
    im_trace_pair,
    pairing_gram,
    u_basis,
)

SCALE_FLOOR = 1e-30
FD_STEP = 1e-5


@dataclass
class ResidualRecord:
    identity: str
    dim: int
    residual: float
    scale: float
    seed: int | None = None
    details: dict = field(default_factory=dict)

    @property
    def relative(self) -> float:
        return self.residual / max(self.scale, SCALE_FLOOR)

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "dim": self.dim,
            "seed": self.seed,
            "residual": self.residual,
            "scale": self.scale,
            "relative": self.relative,
        }


def _mat(g):
    return np.asarray(g, dtype=np.complex128)


def _conj_by(g, x):
    """g^-1 x g for unitary g."""
    return g.conj().T @ x @ g


def _scale(*terms):
    return float(max(abs(t) for t in terms))


def _fro(x):
    return float(np.linalg.norm(x))


def trace_magnitude(p, q) -> float:
    """Cauchy-Schwarz size ||p||_2 ||q||_2 of the products summed in Tr(p q)."""
    return _fro(p) * _fro(q)


def b_plus_recovery(c: QuotientClass) -> np.ndarray:
    """The b+ representative of a class; equals p_b2(x) for every coset member x."""
    return p_b2(c.rep)


def pi_r(g, c1: QuotientClass, c2: QuotientClass) -> float:
    """Im Tr(g^-1 X1 g . p_u2(g^-1 X2 g)) with Xi the b+ representatives."""
    g = _mat(g)
    _check_same_dim(g, c1.rep, c2.rep)
    a = _conj_by(g, b_plus_recovery(c1))
    b = _conj_by(g, b_plus_recovery(c2))
    return im_trace_pair(a, p_u2(b))


def sharp(g, c: QuotientClass) -> SkewHermitian:
    """Contraction of the tensor at g with c in its first slot, as an element
    of u(n): -g p_u2(g^-1 X g) g^-1.

    ``pi_r(g, c, c2) == eval_class(c2, sharp(g, c))`` for every c2.
    """
    g = _mat(g)
    _check_same_dim(g, c.rep)
    inner = p_u2(_conj_by(g, b_plus_recovery(c)))
    return SkewHermitian.unchecked(-(g @ inner @ g.conj().T))


def d_pi_e(y, c1: QuotientClass, c2: QuotientClass) -> float:
    """Derivative of pi_r at the identity in direction y: Im Tr(y [X1, X2])."""
    return im_trace_pair(y, commutator(b_plus_recovery(c1), b_plus_recovery(c2)))


def d_pi_translated(g, x, c1: QuotientClass, c2: QuotientClass) -> float:
    """Derivative of pi_r at g along the right-translated direction x g."""
    g = _mat(g)
    x = _mat(x)
    p1 = p_b2(_conj_by(g, c1.rep))
    p2 = p_b2(_conj_by(g, c2.rep))
    return im_trace_pair(_conj_by(g, x), commutator(p1, p2))


def quotient_bracket(c1: QuotientClass, c2: QuotientClass) -> QuotientClass:
    """Lie bracket on the quotient: [[x1], [x2]] = [p_b2(x1), p_b2(x2)] mod u."""
    return class_of(commutator(b_plus_recovery(c1), b_plus_recovery(c2)))


# ---------------------------------------------------------------- residuals


def antisymmetry_residual(g, c1, c2, seed=None) -> ResidualRecord:
    a, b = pi_r(g, c1, c2), pi_r(g, c2, c1)
    size = trace_magnitude(b_plus_recovery(c1), b_plus_recovery(c2))
    return ResidualRecord("antisymmetry", c1.dim, abs(a + b), max(_scale(a, b), size), seed)


def cocycle_residual(g, u, c1, c2, seed=None) -> ResidualRecord:
    """|pi_r(gu) - pi_r(u) o (Ad*_g x Ad*_g) - pi_r(g)| on (c1, c2)."""
    g, u = _mat(g), _mat(u)
    t_gu = pi_r(g @ u, c1, c2)
    t_u = pi_r(u, coadjoint_group(g, c1), coadjoint_group(g, c2))
    t_g = pi_r(g, c1, c2)
    return ResidualRecord(
        "cocycle", c1.dim, abs(t_gu - t_u - t_g), _scale(t_gu, t_u, t_g), seed,
        {"terms": [t_gu, t_u, t_g]},
    )


def _jacobi_terms(g, ca, cb, cc):
    """Both evaluations of the derivative term and the sharp-bracket term for one ordering.

    ``ca``, ``cb``, ``cc`` play the roles of x1, x2, x3.
    """
    s_c = sharp(g, cc)
    s_b = sharp(g, cb)
    deriv_direct = d_pi_translated(g, s_c, ca, cb)
    brk_direct = eval_class(ca, commutator(s_c, s_b))

    a = _conj_by(g, b_plus_recovery(ca))
    b = _conj_by(g, b_plus_recovery(cb))
    c = _conj_by(g, b_plus_recovery(cc))
    pu_c = p_u2(c)
    pb_a = p_b2(a)
    deriv_closed = -im_trace_pair(pu_c, commutator(pb_a, p_b2(b)))
    brk_closed = -im_trace_pair(pu_c, commutator(pb_a, p_u2(b)))
    return (deriv_direct, brk_direct), (deriv_closed, brk_closed), (a, b, c)


def jacobi_cyclic_sum(g, c1, c2, c3, seed=None) -> ResidualRecord:
    """Cyclic sum of the terms whose vanishing is the Jacobi identity.

    ``residual`` is |S| for the directly evaluated sum. ``details`` carries
    the largest mismatch between the direct and closed-form evaluations of
    any summand (``closed_form_residual``) and the intermediate quantities of
    the cancellation argument.
    """
    g = _mat(g)
    _check_same_dim(g, c1.rep, c2.rep, c3.rep)
    direct, closed = [], []
    abc = None
    for ca, cb, cc in ((c1, c2, c3), (c2, c3, c1), (c3, c1, c2)):
        d, c, mats = _jacobi_terms(g, ca, cb, cc)
        direct.extend(d)
        closed.extend(c)
        if abc is None:
            abc = mats
    s_direct = float(sum(direct))
    s_closed = float(sum(closed))
    scale = _scale(*direct, *closed)
    mismatch = max(abs(x - y) for x, y in zip(direct, closed))

    a, b, c = abc
    full = -im_trace_pair(c, commutator(a, b))
    x1, x2, x3 = (b_plus_recovery(k) for k in (c1, c2, c3))
    untwisted = -im_trace_pair(x3, commutator(x1, x2))
    return ResidualRecord(
        "jacobi", c1.dim, abs(s_direct), scale, seed,
        {
            "closed_form_residual": mismatch,
            "direct_terms": direct,
            "closed_terms": closed,
            "sum_closed": s_closed,
            "minus_im_tr_C_AB": full,
            "minus_im_tr_x3_x1x2": untwisted,
        },
    )


def conj_identities_residual(g, x, seed=None):
    """Residuals of the two conjugation identities for the projections.

    Returns ``(record_b, record_u)`` measured in the Frobenius norm relative
    to ||x||_2.
    """
    g = _mat(g)
    x = _mat(x)
    _check_same_dim(g, x)
    gxg = _conj_by(g, x)
    pbx = p_b2(x)
    lhs_b = p_b2(gxg)
    rhs_b = p_b2(_conj_by(g, pbx))
    lhs_u = p_u2(gxg)
    rhs_u = _conj_by(g, p_u2(x)) + p_u2(_conj_by(g, pbx))
    scale = schatten_norm(x, 2)
    n = x.shape[0]
    return (
        ResidualRecord("conj-identity-b", n, schatten_norm(lhs_b - rhs_b, 2), scale, seed),
        ResidualRecord("conj-identity-u", n, schatten_norm(lhs_u - rhs_u, 2), scale, seed),
    )


def sharp_contraction_residual(g, c, c2, seed=None) -> ResidualRecord:
    t1 = pi_r(g, c, c2)
    s = sharp(g, c)
    t2 = eval_class(c2, s)
    x, x2 = b_plus_recovery(c), b_plus_recovery(c2)
    size = max(trace_magnitude(x2, s.matrix), trace_magnitude(x2, x))
    return ResidualRecord("sharp-contraction", c.dim, abs(t1 - t2),
                          max(_scale(t1, t2), size), seed)


# ----------------------------------------------------- finite differences


def central_difference(f, h=FD_STEP) -> float:
    return (f(h) - f(-h)) / (2.0 * h)


def _fd_record(name, dim, f, exact, size, h, tol, seed):
    fd = central_difference(f, h)
    rec = ResidualRecord(name, dim, abs(fd - exact), max(_scale(fd, exact), size), seed,
                         {"fd": fd, "exact": exact, "step": h})
    if rec.relative > tol:
        # Richardson extrapolation with a half step
        fd2 = central_difference(f, h / 2)
        rich = (4.0 * fd2 - fd) / 3.0
        rec = ResidualRecord(name, dim, abs(rich - exact), max(_scale(rich, exact), size), seed,
                             {"fd": rich, "exact": exact, "step": h, "richardson": True})
    return rec


def derivative_residual(y, c1, c2, h=FD_STEP, tol=1e-6, seed=None) -> ResidualRecord:
    """Central differences of t -> pi_r(exp(t y)) against d_pi_e."""
    y = _mat(y)
    exact = d_pi_e(y, c1, c2)
    size = trace_magnitude(y, commutator(b_plus_recovery(c1), b_plus_recovery(c2)))
    return _fd_record("derivative-b2", c1.dim,
                      lambda t: pi_r(exp_skew(t * y), c1, c2), exact, size, h, tol, seed)


def translated_derivative_residual(g, x, c1, c2, h=FD_STEP, tol=1e-6,
                                   seed=None) -> ResidualRecord:
    """Central differences of t -> pi_r(exp(t x) g) against d_pi_translated."""
    g, x = _mat(g), _mat(x)
    exact = d_pi_translated(g, x, c1, c2)
    p1 = p_b2(_conj_by(g, c1.rep))
    p2 = p_b2(_conj_by(g, c2.rep))
    size = trace_magnitude(x, commutator(p1, p2))
    return _fd_record("derivative-translated", c1.dim,
                      lambda t: pi_r(exp_skew(t * x).matrix @ g, c1, c2),
                      exact, size, h, tol, seed)


def differential_class(f, g, h=FD_STEP) -> QuotientClass:
    """Right-translated differential of a scalar function on U(n) at g.

    Returns the class [x] with Im Tr(x X) = d/dt f(exp(tX) g) at t = 0 for
    all X in u(n), recovered by central differences along a basis of u(n)
    and a solve against the pairing Gram matrix.
    """
    g = _mat(g)
    n = g.shape[0]
    ub = u_basis(n)
    derivs = np.array([
        central_difference(lambda t, e=e: f(exp_skew(t * e).matrix @ g), h) for e in ub
    ])
    gram, _ = pairing_gram(n)
    coeffs = np.linalg.solve(gram, derivs)
    b = sum(cf * e for cf, e in zip(coeffs, b_plus_basis(n)))
    return class_of(b)


def poisson_bracket(f, k, g, h=FD_STEP) -> float:
    """{f, k}(g) = pi_r(g)(df_g o R_g, dk_g o R_g) with numerical differentials."""
    return pi_r(g, differential_class(f, g, h), differential_class(k, g, h))

