"""Randomized verification runs and their reports."""

from __future__ import annotations

import hashlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .basis import p_b2
from .matrix_core import (
    commutator,
    random_skew_hermitian,
    random_trace_class,
    random_unitary,
    schatten_norm,
)
from .pairing import class_of, coadjoint_algebra_bplus, im_trace_pair
from .poisson import (
    ResidualRecord,
    antisymmetry_residual,
    cocycle_residual,
    conj_identities_residual,
    derivative_residual,
    jacobi_cyclic_sum,
    quotient_bracket,
    sharp_contraction_residual,
    translated_derivative_residual,
)

MASK64 = (1 << 64) - 1
COMMANDS = ("verify", "witness", "bracket", "pairing", "info")
OUTPUTS = ("json", "csv", "pretty")

DEFAULT_TOLERANCES = {
    "antisymmetry": 1e-12,
    "bracket-antisymmetry": 1e-10,
    "bracket-coset": 1e-12,
    "bracket-jacobi": 1e-10,
    "bracket-restriction": 1e-12,
    "coadjoint-duality": 1e-12,
    "cocycle": 1e-10,
    "conj-identity-b": 1e-11,
    "conj-identity-u": 1e-11,
    "derivative-b2": 1e-6,
    "derivative-translated": 1e-6,
    "jacobi": 1e-9,
    "jacobi-closed-form": 1e-10,
    "sharp-contraction": 1e-12,
}


def trial_seed(seed: int, dim: int, trial: int, check: str) -> int:
    """seed XOR a 64-bit hash of (dim, trial, check)."""
    digest = hashlib.blake2b(f"{dim}:{trial}:{check}".encode(), digest_size=8).digest()
    return (seed & MASK64) ^ int.from_bytes(digest, "little")


def _classes(n, rng, k):
    return [class_of(random_trace_class(n, rng)) for _ in range(k)]


def _rel(x, y):
    return schatten_norm(x - y, 2), schatten_norm(y, 2)


# Each check draws its own inputs from ``rng`` and returns records.


def _check_antisymmetry(n, rng, seed):
    g = random_unitary(n, rng)
    c1, c2 = _classes(n, rng, 2)
    return [antisymmetry_residual(g, c1, c2, seed)]


def _check_cocycle(n, rng, seed):
    g, u = random_unitary(n, rng), random_unitary(n, rng)
    c1, c2 = _classes(n, rng, 2)
    return [cocycle_residual(g, u, c1, c2, seed)]


def _check_jacobi(n, rng, seed):
    g = random_unitary(n, rng)
    rec = jacobi_cyclic_sum(g, *_classes(n, rng, 3), seed=seed)
    closed = ResidualRecord("jacobi-closed-form", n, rec.details["closed_form_residual"],
                            rec.scale, seed)
    return [rec, closed]


def _check_conj(n, rng, seed):
    g = random_unitary(n, rng)
    return list(conj_identities_residual(g, random_trace_class(n, rng), seed))


def _check_derivative(n, rng, seed):
    y = random_skew_hermitian(n, rng)
    c1, c2 = _classes(n, rng, 2)
    return [derivative_residual(y, c1, c2, seed=seed)]


def _check_translated(n, rng, seed):
    g = random_unitary(n, rng)
    x = random_skew_hermitian(n, rng)
    c1, c2 = _classes(n, rng, 2)
    return [translated_derivative_residual(g, x, c1, c2, seed=seed)]


def _check_sharp(n, rng, seed):
    g = random_unitary(n, rng)
    c1, c2 = _classes(n, rng, 2)
    return [sharp_contraction_residual(g, c1, c2, seed)]


def coadjoint_duality_terms(a, b, c):
    """Im Tr([a, c] b), -Im Tr(c [a, b]) and Im Tr(c ad*_a b)."""
    return (
        im_trace_pair(commutator(a, c), b),
        -im_trace_pair(c, commutator(a, b)),
        im_trace_pair(c, coadjoint_algebra_bplus(a, b)),
    )


def _check_coadjoint(n, rng, seed):
    a = random_skew_hermitian(n, rng)
    b = p_b2(random_trace_class(n, rng))
    c = random_skew_hermitian(n, rng)
    t1, t2, t3 = coadjoint_duality_terms(a, b, c)
    residual = max(abs(t1 - t2), abs(t1 - t3))
    return [ResidualRecord("coadjoint-duality", n, residual, max(map(abs, (t1, t2, t3))), seed)]


def _check_bracket(n, rng, seed):
    x1, x2, x3 = (random_trace_class(n, rng) for _ in range(3))
    c1, c2, c3 = class_of(x1), class_of(x2), class_of(x3)
    out = []

    b12 = quotient_bracket(c1, c2).rep
    b21 = quotient_bracket(c2, c1).rep
    out.append(ResidualRecord("bracket-antisymmetry", n, schatten_norm(b12 + b21, 2),
                              schatten_norm(b12, 2), seed))

    terms = [
        quotient_bracket(quotient_bracket(c1, c2), c3).rep,
        quotient_bracket(quotient_bracket(c2, c3), c1).rep,
        quotient_bracket(quotient_bracket(c3, c1), c2).rep,
    ]
    out.append(ResidualRecord("bracket-jacobi", n, schatten_norm(sum(terms), 2),
                              max(schatten_norm(t, 2) for t in terms), seed))

    s = random_skew_hermitian(n, rng).matrix
    moved = quotient_bracket(class_of(x1 + s), c2).rep
    out.append(ResidualRecord("bracket-coset", n, *_rel(moved, b12), seed))

    y1, y2 = p_b2(x1), p_b2(x2)
    restricted = quotient_bracket(class_of(y1), class_of(y2)).rep
    out.append(ResidualRecord("bracket-restriction", n,
                              *_rel(restricted, class_of(commutator(y1, y2)).rep), seed))
    return out


CHECKS = {
    "antisymmetry": _check_antisymmetry,
    "bracket": _check_bracket,
    "coadjoint-duality": _check_coadjoint,
    "cocycle": _check_cocycle,
    "conj-identities": _check_conj,
    "derivative-b2": _check_derivative,
    "derivative-translated": _check_translated,
    "jacobi": _check_jacobi,
    "sharp-contraction": _check_sharp,
}


@dataclass(frozen=True)
class RunConfig:
    command: str = "verify"
    dims: tuple = (2, 4, 8, 16)
    trials: int = 100
    seed: int = 42
    tolerances: dict = field(default_factory=dict)
    output: str = "json"
    out_path: str | None = None
    threads: int = 1
    witness: str = "parity"
    checks: tuple = tuple(sorted(CHECKS))

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if not self.dims or any(int(d) < 1 for d in self.dims):
            raise ValueError("dims must be positive integers")
        if self.command == "verify" and any(int(d) % 2 for d in self.dims):
            raise ValueError("verify dims must be even (symmetric window)")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        if self.output not in OUTPUTS:
            raise ValueError(f"output must be one of {OUTPUTS}")
        unknown = set(self.tolerances) - set(DEFAULT_TOLERANCES)
        if unknown:
            raise ValueError(f"unknown identities in tolerance overrides: {sorted(unknown)}")
        bad = set(self.checks) - set(CHECKS)
        if bad:
            raise ValueError(f"unknown checks: {sorted(bad)}")

    def tolerance(self, identity: str) -> float:
        return self.tolerances.get(identity, DEFAULT_TOLERANCES[identity])

    def echo(self) -> dict:
        return {
            "command": self.command,
            "dims": [int(d) for d in self.dims],
            "trials": self.trials,
            "seed": self.seed,
            "tolerances": {k: self.tolerances[k] for k in sorted(self.tolerances)},
            "checks": list(self.checks),
        }


@dataclass
class IdentitySummary:
    identity: str
    tolerance: float
    count: int
    max_relative: float
    mean_relative: float

    @property
    def passed(self) -> bool:
        return self.max_relative <= self.tolerance

    def to_json(self):
        return {
            "tolerance": self.tolerance,
            "count": self.count,
            "max_relative": self.max_relative,
            "mean_relative": self.mean_relative,
            "pass": self.passed,
        }


@dataclass
class VerificationReport:
    config: RunConfig
    records: list
    summaries: dict

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.summaries.values())

    def to_json(self) -> dict:
        return {
            "config": self.config.echo(),
            "identities": {k: self.summaries[k].to_json() for k in sorted(self.summaries)},
            "pass": self.passed,
        }


def _run_task(task):
    check, dim, trial, seed = task
    s = trial_seed(seed, dim, trial, check)
    return CHECKS[check](dim, np.random.default_rng(s), s)


def run_verify(cfg: RunConfig) -> VerificationReport:
    tasks = [(check, int(dim), trial, cfg.seed)
             for check in sorted(cfg.checks)
             for dim in cfg.dims
             for trial in range(cfg.trials)]
    if cfg.threads > 1:
        with ThreadPoolExecutor(cfg.threads) as pool:
            results = list(pool.map(_run_task, tasks))
    else:
        results = [_run_task(t) for t in tasks]

    records = [r for batch in results for r in batch]
    by_identity = {}
    for r in records:
        by_identity.setdefault(r.identity, []).append(r.relative)
    summaries = {
        name: IdentitySummary(name, cfg.tolerance(name), len(rel),
                              float(np.max(rel)), float(np.mean(rel)))
        for name, rel in sorted(by_identity.items())
    }
    records.sort(key=lambda r: (r.identity, r.dim))
    return VerificationReport(cfg, records, summaries)
