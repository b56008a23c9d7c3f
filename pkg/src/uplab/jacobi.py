"""
One-sided (Hestenes) Jacobi singular value decomposition for complex
matrices.

Pairs of columns are orthogonalized by plane rotations until every pair is
numerically orthogonal. The rotations of one sweep are applied in a
round-robin ("tournament") order so that each round touches disjoint column
pairs and can be vectorized.
"""

from __future__ import annotations

import numpy as np

EPS = np.finfo(np.float64).eps
DEFAULT_MAX_SWEEPS = 60


class SVDConvergenceError(RuntimeError):
    """Raised when the sweep cap is reached before all columns are orthogonal."""


def _tournament(n):
    # n even; yields (p, q) index arrays, each round covering n/2 disjoint pairs
    players = list(range(n))
    half = n // 2
    for _ in range(n - 1):
        p = np.array(players[:half])
        q = np.array(players[half:][::-1])
        yield p, q
        players = [players[0], players[-1]] + players[1:-1]


def jacobi_svd(a, tol=None, max_sweeps=DEFAULT_MAX_SWEEPS, compute_uv=True):
    """
    Singular value decomposition ``a = u @ diag(s) @ vh``.

    Parameters
    ----------
    a : array_like
        Complex (or real) 2D array with at least as many rows as columns.
    tol : float, optional
        Orthogonality threshold ``|<a_p, a_q>| <= tol * |a_p| |a_q|``.
        Defaults to ``max(n, 8) * eps``.
    max_sweeps : int
        Iteration cap. Reaching it raises :class:`SVDConvergenceError`.
    compute_uv : bool
        If False only the singular values are returned and the right
        rotations are not accumulated.

    Returns
    -------
    u : ndarray
        Left singular vectors (columns). Columns paired with zero singular
        values are zero.
    s : ndarray
        Singular values, non-increasing.
    vh : ndarray
        Conjugate transpose of the right singular vectors.
    """
    a = np.array(a, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError("expected a 2D array")
    m, n = a.shape
    if m < n:
        out = jacobi_svd(a.conj().T, tol, max_sweeps, compute_uv)
        if not compute_uv:
            return out
        u, s, vh = out
        return vh.conj().T, s, u.conj().T
    if tol is None:
        tol = max(n, 8) * EPS

    n_pad = n + (n % 2)
    # columns stored as rows so the per-round gathers are contiguous
    g = np.zeros((n_pad, m), dtype=np.complex128)
    g[:n] = a.T
    v = np.eye(n_pad, dtype=np.complex128)
    # columns shorter than this are numerically zero and never rotated
    floor = np.linalg.norm(a) * EPS * EPS

    if n_pad >= 2:
        for _sweep in range(max_sweeps):
            worst = 0.0
            for p, q in _tournament(n_pad):
                gp = g[p]
                gq = g[q]
                alpha = np.einsum("ij,ij->i", gp.conj(), gp).real
                beta = np.einsum("ij,ij->i", gq.conj(), gq).real
                gamma = np.einsum("ij,ij->i", gp.conj(), gq)
                mag = np.abs(gamma)
                norm_p, norm_q = np.sqrt(alpha), np.sqrt(beta)
                scale = norm_p * norm_q
                active = (mag > tol * scale) & (np.minimum(norm_p, norm_q) > floor)
                if not active.any():
                    continue
                worst = max(worst, float(np.max(mag[active] / scale[active])))

                p, q = p[active], q[active]
                gp, gq = gp[active], gq[active]
                mag, alpha, beta = mag[active], alpha[active], beta[active]
                phase = (gamma[active] / mag)[:, None]
                zeta = (beta - alpha) / (2.0 * mag)
                sign = np.where(zeta >= 0.0, 1.0, -1.0)
                t = sign / (np.abs(zeta) + np.hypot(1.0, zeta))
                c = (1.0 / np.sqrt(1.0 + t * t))[:, None]
                s = c * t[:, None]
                # column op [p, q] <- [p, q] @ [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
                qs = gq * phase.conj()
                g[p] = c * gp - s * qs
                g[q] = s * gp + c * qs
                if compute_uv:
                    vp, vq = v[p], v[q] * phase.conj()
                    v[p] = c * vp - s * vq
                    v[q] = s * vp + c * vq
            if worst <= tol:
                break
        else:
            raise SVDConvergenceError(
                f"Jacobi SVD did not converge in {max_sweeps} sweeps"
            )

    g, v = g[:n].T, v[:n, :n].T
    s = np.linalg.norm(g, axis=0)
    if not compute_uv:
        return np.sort(s)[::-1]
    order = np.argsort(-s, kind="stable")
    s, g, v = s[order], g[:, order], v[:, order]
    u = np.zeros_like(g)
    nz = s > 0.0
    u[:, nz] = g[:, nz] / s[nz]
    return u, s, v.conj().T
