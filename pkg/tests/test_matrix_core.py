import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import E
from uplab.matrix_core import (
    SkewHermitian,
    UnitaryElement,
    ValidationError,
    adjoint,
    commutator,
    exp_skew,
    op_norm,
    random_skew_hermitian,
    random_trace_class,
    random_unitary,
    schatten_norm,
    svd_values,
    trace,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)
dims = st.integers(min_value=1, max_value=12)


def test_adjoint_trivial():
    assert np.array_equal(adjoint(np.eye(3)), np.eye(3))
    assert np.array_equal(adjoint(np.diag([1j, -1j])), np.diag([-1j, 1j]))


def test_adjoint_matches_loop_oracle(rng):
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    expected = np.empty_like(a)
    for j in range(2):
        for k in range(2):
            expected[j, k] = complex(a[k, j].real, -a[k, j].imag)
    assert np.array_equal(adjoint(a), expected)


def test_commutator_examples(rng):
    b = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    assert np.allclose(commutator(np.eye(3), b), 0)
    assert np.array_equal(commutator(E(2, 0, 0), E(2, 1, 0)), -E(2, 1, 0))
    with pytest.raises(ValueError):
        commutator(np.eye(2), np.eye(3))


@given(seeds, dims)
def test_commutator_bilinear_antisymmetric_jacobi(seed, n):
    r = np.random.default_rng(seed)
    a, b, c = (random_trace_class(n, r, normalize=False) for _ in range(3))
    assert np.array_equal(commutator(a, b), -commutator(b, a))
    assert np.array_equal(commutator(a, a), np.zeros((n, n)))
    jac = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b))
    size = np.linalg.norm(a) * np.linalg.norm(b) * np.linalg.norm(c)
    assert np.abs(jac).max() <= 1e-12 * size
    lin = commutator(2.0 * a + 3j * c, b) - (2.0 * commutator(a, b) + 3j * commutator(c, b))
    assert np.abs(lin).max() <= 1e-12 * size ** (2 / 3)


def test_trace_examples(rng):
    assert trace(np.eye(5)) == 5
    assert trace(E(3, 0, 1)) == 0
    a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    b = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    ab, ba = trace(a @ b), trace(b @ a)
    assert abs(ab - ba) <= 1e-12 * abs(ab)


def test_svd_values_simple():
    assert np.allclose(svd_values(np.diag([3.0, -4.0])), [4.0, 3.0])
    u = random_unitary(6, 1)
    assert np.allclose(svd_values(u), np.ones(6), atol=1e-13)


def test_svd_values_against_hermitian_eigen_oracle(rng):
    a = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    oracle = np.sqrt(np.clip(np.linalg.eigvalsh(a.conj().T @ a), 0, None))[::-1]
    s = svd_values(a)
    assert np.all(np.diff(s) <= 0)
    assert np.allclose(s, oracle, rtol=0, atol=1e-12 * oracle[0])


def test_schatten_rank_one_and_k2():
    for p in (1, 2, np.inf):
        assert schatten_norm(E(3, 0, 1), p) == pytest.approx(1.0, abs=1e-14)
    k2 = np.array([[0, -1j], [1j, 0]])
    assert schatten_norm(k2, 1) == pytest.approx(2.0, abs=1e-14)
    assert schatten_norm(k2, 2) == pytest.approx(np.sqrt(2.0), abs=1e-14)
    assert schatten_norm(k2, np.inf) == pytest.approx(1.0, abs=1e-14)
    with pytest.raises(ValueError):
        schatten_norm(k2, 3)


@given(seeds, dims)
def test_schatten_properties(seed, n):
    r = np.random.default_rng(seed)
    a = random_trace_class(n, r, normalize=False)
    b = random_trace_class(n, r, normalize=False)
    s = svd_values(a)
    n1, n2, ninf = (schatten_norm(a, p) for p in (1, 2, np.inf))
    assert n2**2 == pytest.approx(np.sum(np.abs(a) ** 2), rel=1e-12)
    assert n2 == pytest.approx(np.sqrt(np.sum(s**2)), rel=1e-12)
    assert ninf <= n2 * (1 + 1e-12) and n2 <= n1 * (1 + 1e-12)
    g, h = random_unitary(n, r), random_unitary(n, r)
    for p in (1, 2, np.inf):
        assert schatten_norm(a + b, p) <= (schatten_norm(a, p) + schatten_norm(b, p)) * (1 + 1e-10)
        assert schatten_norm(g.matrix @ a @ h.matrix, p) == pytest.approx(schatten_norm(a, p), rel=1e-10)


def test_exp_skew_examples():
    assert np.allclose(exp_skew(np.zeros((3, 3))).matrix, np.eye(3), atol=0)
    out = exp_skew(np.diag([1j * np.pi, 0])).matrix
    assert np.allclose(out, np.diag([-1, 1]), atol=1e-15)


@given(seeds, st.integers(min_value=1, max_value=10))
def test_exp_skew_semigroup_and_unitarity(seed, n):
    x = random_skew_hermitian(n, seed).matrix
    x = x / max(op_norm(x), 1e-300)
    half = exp_skew(x / 2).matrix
    assert op_norm(half @ half - exp_skew(x).matrix) <= 1e-10
    big = exp_skew(10 * x).matrix
    assert op_norm(big.conj().T @ big - np.eye(n)) <= 1e-12


def test_random_generators_deterministic():
    assert np.array_equal(random_skew_hermitian(5, 3).matrix, random_skew_hermitian(5, 3).matrix)
    assert np.array_equal(random_unitary(5, 3).matrix, random_unitary(5, 3).matrix)
    assert np.array_equal(random_trace_class(5, 3), random_trace_class(5, 3))
    assert not np.array_equal(random_trace_class(5, 3), random_trace_class(5, 4))


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_random_generators_invariants(seed):
    x = random_skew_hermitian(8, seed).matrix
    assert np.array_equal(x + x.conj().T, np.zeros((8, 8)))
    u = random_unitary(8, seed).matrix
    assert np.linalg.norm(u.conj().T @ u - np.eye(8), 2) <= 1e-12
    t = random_trace_class(8, seed)
    assert schatten_norm(t, 1) == pytest.approx(1.0, rel=1e-12)
    with pytest.raises(ValueError):
        random_unitary(0, seed)


def test_validated_constructors():
    SkewHermitian(np.array([[1j, 2], [-2, 0]]))
    SkewHermitian(np.zeros((2, 2)))
    with pytest.raises(ValidationError):
        SkewHermitian(np.eye(2))
    with pytest.raises(ValidationError):
        UnitaryElement(2 * np.eye(2))
    with pytest.raises(ValidationError):
        UnitaryElement(np.array([[np.nan, 0], [0, 1]]))
    with pytest.raises(ValidationError):
        SkewHermitian(np.zeros((2, 3)))
    g = UnitaryElement(random_unitary(4, 9).matrix)
    assert isinstance(g @ g, UnitaryElement)
    assert np.allclose(np.asarray(g) @ g.inverse, np.eye(4))
