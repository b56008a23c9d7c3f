"""Norm growth of triangular truncation and of the coadjoint action on b+.

For each window half-width N a Hermitian witness K on H- with unit trace
norm is pushed through the block construction

    A = (0, u; -u*, 0),    B = (0, uK; 0, 0)

and the trace norms of T+(K) and ad*_A B are recorded. Because ||B||_1 =
||K||_1 = 1 the two ratios are just those norms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import BasisWindow, build_block_A, build_block_B, embed_minus, shift_u, t_plus
from .matrix_core import commutator, schatten_norm
from .pairing import coadjoint_algebra_bplus
from .poisson import ResidualRecord


def _normalized(k):
    return k / schatten_norm(k, 1)


def hilbert_witness(N: int) -> np.ndarray:
    """Entries i/(j - k) off the diagonal, normalized to unit trace norm.

    The triangular truncation of this family saturates: its Toeplitz symbol
    is a bounded sawtooth, so ||T+(K)||_1 converges to a constant.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    labels = np.arange(-N, 0)
    diff = labels[:, None] - labels[None, :]
    safe = np.where(diff == 0, 1, diff)
    k = np.where(diff != 0, 1j / safe, 0.0).astype(np.complex128)
    return _normalized(k)


def flat_witness(N: int) -> np.ndarray:
    """Rank-one projection onto the constant vector, J / N."""
    if N < 2:
        raise ValueError("N must be >= 2")
    return np.full((N, N), 1.0 / N, dtype=np.complex128)


def parity_witness(N: int) -> np.ndarray:
    """(P_flat - P_alt) / 2 for the constant and the alternating unit vectors.

    Entries are 1/N where j - k is odd and 0 elsewhere; eigenvalues +-1/2,
    so the trace norm is 1.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    j = np.arange(N)
    odd = (j[:, None] - j[None, :]) % 2 == 1
    return _normalized(np.where(odd, 1.0 / N, 0.0).astype(np.complex128))


WITNESSES = {
    "parity": parity_witness,
    "flat": flat_witness,
    "hilbert": hilbert_witness,
}
DEFAULT_WITNESS = "parity"


@dataclass(frozen=True)
class LogFit:
    """Least-squares fit ratio ~ slope * ln N + intercept."""

    slope: float
    intercept: float
    r2: float

    def to_json(self):
        return {"slope": self.slope, "intercept": self.intercept, "r2": self.r2}


def fit_log(ns, ratios) -> LogFit:
    x = np.log(np.asarray(ns, dtype=float))
    y = np.asarray(ratios, dtype=float)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    return LogFit(float(slope), float(intercept), r2)


@dataclass(frozen=True)
class GrowthRow:
    N: int
    witness_ratio: float
    coadjoint_ratio: float


@dataclass
class GrowthSeries:
    rows: list[GrowthRow]
    witness: str = DEFAULT_WITNESS
    witness_fit: LogFit | None = None
    coadjoint_fit: LogFit | None = None

    @property
    def ns(self):
        return [r.N for r in self.rows]

    @property
    def witness_ratios(self):
        return [r.witness_ratio for r in self.rows]

    @property
    def coadjoint_ratios(self):
        return [r.coadjoint_ratio for r in self.rows]

    def to_json(self) -> dict:
        return {
            "witness": self.witness,
            "rows": [
                {"N": r.N, "witness_ratio": r.witness_ratio,
                 "coadjoint_ratio": r.coadjoint_ratio}
                for r in self.rows
            ],
            "fit": None if self.witness_fit is None else {
                "witness_ratio": self.witness_fit.to_json(),
                "coadjoint_ratio": self.coadjoint_fit.to_json(),
            },
        }


def growth_row(N: int, witness=DEFAULT_WITNESS) -> GrowthRow:
    w = BasisWindow(N)
    k = WITNESSES[witness](N)
    a = build_block_A(w)
    b = build_block_B(k, w)
    k_norm = schatten_norm(k, 1)
    witness_ratio = schatten_norm(t_plus(k), 1) / k_norm
    coad = coadjoint_algebra_bplus(a, b)
    coadjoint_ratio = schatten_norm(coad, 1) / schatten_norm(b, 1)
    return GrowthRow(N, witness_ratio, coadjoint_ratio)


def witness_growth(n_list, witness=DEFAULT_WITNESS, threads=1) -> GrowthSeries:
    ns = [int(n) for n in n_list]
    if not ns:
        raise ValueError("need at least one N")
    if any(n < 2 for n in ns):
        raise ValueError("every N must be >= 2")
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise ValueError("N values must be strictly increasing")
    if witness not in WITNESSES:
        raise ValueError(f"unknown witness {witness!r}")
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(threads) as pool:
            rows = list(pool.map(lambda n: growth_row(n, witness), ns))
    else:
        rows = [growth_row(n, witness) for n in ns]
    series = GrowthSeries(rows, witness)
    if len(ns) >= 2:
        series.witness_fit = fit_log(ns, series.witness_ratios)
        series.coadjoint_fit = fit_log(ns, series.coadjoint_ratios)
    return series


def coadjoint_norm_identity_check(N: int, witness=DEFAULT_WITNESS) -> ResidualRecord:
    """Compare ad*_A B with its shortcut for Hermitian [A, B].

    Since [A, B] is Hermitian, [A, B] + [A, B]* = 2[A, B] and
    ad*_A B = -2 (T++ + 1/2 T0)([A, B]) = -(2 T++ + T0)([A, B]).
    ``details`` also holds the entrywise gap between [A, B] and the block
    diagonal diag(uKu*, -K), and | ||B||_1 - ||K||_1 |.
    """
    w = BasisWindow(N)
    k = WITNESSES[witness](N)
    a = build_block_A(w)
    b = build_block_B(k, w)
    ab = commutator(a, b)
    general = coadjoint_algebra_bplus(a, b)
    shortcut = -(2.0 * np.tril(ab, -1) + np.diag(np.diag(ab)))
    u = shift_u(w)
    kk = embed_minus(k, w)
    blocks = u @ kk @ u.conj().T - kk
    scale = float(np.abs(general).max())
    return ResidualRecord(
        "coadjoint-shortcut", w.dim, float(np.abs(general - shortcut).max()), scale,
        details={
            "commutator_block_residual": float(np.abs(ab - blocks).max()),
            "hermitian_defect": float(np.abs(ab - ab.conj().T).max()),
            "b_minus_k_trace_norm": abs(schatten_norm(b, 1) - schatten_norm(k, 1)),
        },
    )
