import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import E
from uplab.basis import in_b_plus, p_b2
from uplab.matrix_core import (
    ValidationError,
    exp_skew,
    random_skew_hermitian,
    random_trace_class,
    random_unitary,
)
from uplab.pairing import (
    QuotientClass,
    b_plus_basis,
    class_of,
    coadjoint_algebra_bplus,
    coadjoint_group,
    eval_class,
    im_trace_pair,
    pairing_gram,
    u_basis,
)

seeds = st.integers(0, 2**32 - 1)
dims = st.integers(1, 10)


def test_im_trace_pair_examples(rng):
    assert im_trace_pair(1j * E(2, 0, 0), E(2, 0, 0)) == 1.0
    assert im_trace_pair(E(2, 1, 0) - E(2, 0, 1), E(2, 1, 0)) == 0.0
    a = random_skew_hermitian(6, rng).matrix
    b = random_skew_hermitian(6, rng).matrix
    assert abs(im_trace_pair(a, b)) <= 1e-14 * np.linalg.norm(a) * np.linalg.norm(b)
    with pytest.raises(ValueError):
        im_trace_pair(np.eye(2), np.eye(3))


def test_gram_examples():
    gram, smin = pairing_gram(1)
    assert np.array_equal(gram, [[1.0]])
    gram, smin = pairing_gram(2)
    assert gram.shape == (4, 4) and smin > 0
    for n in range(1, 9):
        assert len(u_basis(n)) == len(b_plus_basis(n)) == n * n
        assert pairing_gram(n)[1] > 1e-8
    with pytest.raises(ValueError):
        pairing_gram(0)


def test_bases_live_where_they_should():
    for e in u_basis(4):
        assert np.array_equal(e, -e.conj().T)
    for e in b_plus_basis(4):
        assert in_b_plus(e)


def test_class_examples():
    n = 3
    s = random_skew_hermitian(n, 5).matrix
    assert np.array_equal(class_of(s).rep, np.zeros((n, n)))
    assert np.array_equal(class_of(E(2, 0, 1)).rep, 0.5 * (E(2, 0, 1) + E(2, 1, 0)))
    b = np.array([[1.0, 0], [2 - 1j, -3.0]])
    c = class_of(b)
    assert np.array_equal(c.rep, 0.5 * (b + b.conj().T))
    assert np.array_equal(p_b2(c.rep), b)
    assert np.array_equal(class_of(c.rep).rep, c.rep)
    with pytest.raises(ValidationError):
        QuotientClass(E(2, 0, 1))


def test_eval_class_examples():
    z = class_of(np.zeros((2, 2)))
    assert eval_class(z, 1j * E(2, 0, 0)) == 0.0
    assert eval_class(class_of(E(2, 0, 0)), 1j * E(2, 0, 0)) == 1.0


@given(seeds, dims)
def test_eval_class_is_representative_independent(seed, n):
    r = np.random.default_rng(seed)
    x = random_trace_class(n, r)
    s = random_skew_hermitian(n, r).matrix
    b = random_skew_hermitian(n, r).matrix
    size = np.linalg.norm(x) * np.linalg.norm(b) + np.linalg.norm(s) * np.linalg.norm(b)
    # the functional of [x] is Im Tr(x b)
    assert abs(eval_class(class_of(x), b) - im_trace_pair(b, x)) <= 1e-12 * size
    assert abs(eval_class(class_of(x), b) - eval_class(class_of(x + s), b)) <= 1e-12 * size


@given(seeds, st.integers(1, 6))
def test_kernel_characterization(seed, n):
    # solving for the functional on a u-basis recovers x + x* up to a factor
    r = np.random.default_rng(seed)
    x = random_trace_class(n, r)
    values = np.array([eval_class(class_of(x), e) for e in u_basis(n)])
    gram, _ = pairing_gram(n)
    coeffs = np.linalg.solve(gram, values)
    b = sum(c * e for c, e in zip(coeffs, b_plus_basis(n)))
    assert np.allclose(b, p_b2(x), atol=1e-12)
    skew = x - x.conj().T
    vals = np.array([eval_class(class_of(skew), e) for e in u_basis(n)])
    assert np.abs(vals).max() <= 1e-14


def test_coadjoint_group_examples():
    c = class_of(random_trace_class(3, 0))
    assert np.allclose(coadjoint_group(np.eye(3), c).rep, c.rep, atol=0)
    g = np.diag([1j, 1])
    out = coadjoint_group(g, class_of(E(2, 1, 0)))
    assert np.allclose(out.rep, 0.5 * np.array([[0, -1j], [1j, 0]]), atol=1e-16)


@given(seeds, st.integers(1, 10))
def test_coadjoint_group_action_and_covariance(seed, n):
    r = np.random.default_rng(seed)
    g, h = random_unitary(n, r).matrix, random_unitary(n, r).matrix
    c = class_of(random_trace_class(n, r))
    lhs = coadjoint_group(g @ h, c).rep
    rhs = coadjoint_group(h, coadjoint_group(g, c)).rep
    assert np.linalg.norm(lhs - rhs) <= 1e-12 * np.linalg.norm(c.rep)
    out = coadjoint_group(g, c).rep
    assert np.array_equal(out, out.conj().T)
    b = random_skew_hermitian(n, r).matrix
    left = eval_class(coadjoint_group(g, c), b)
    right = eval_class(c, g @ b @ g.conj().T)
    assert abs(left - right) <= 1e-12 * np.linalg.norm(c.rep) * np.linalg.norm(b)


def test_coadjoint_algebra_examples():
    b = E(2, 1, 0)
    assert np.array_equal(coadjoint_algebra_bplus(np.zeros((2, 2)), b), np.zeros((2, 2)))
    assert np.allclose(coadjoint_algebra_bplus(1j * E(2, 0, 0), b), 1j * E(2, 1, 0), atol=0)
    with pytest.raises(ValidationError):
        coadjoint_algebra_bplus(1j * E(2, 0, 0), E(2, 0, 1))


@given(seeds, st.integers(1, 10))
def test_coadjoint_algebra_duality(seed, n):
    r = np.random.default_rng(seed)
    a = random_skew_hermitian(n, r).matrix
    c = random_skew_hermitian(n, r).matrix
    b = p_b2(random_trace_class(n, r))
    out = coadjoint_algebra_bplus(a, b)
    assert in_b_plus(out)
    t1 = im_trace_pair(a @ c - c @ a, b)
    t2 = im_trace_pair(c, out)
    scale = max(abs(t1), abs(t2), np.linalg.norm(a) * np.linalg.norm(b) * np.linalg.norm(c))
    assert abs(t1 - t2) <= 1e-12 * scale


@pytest.mark.parametrize("n", [2, 3, 5])
def test_coadjoint_derivative_compatibility(n, rng):
    a = random_skew_hermitian(n, rng).matrix
    b = p_b2(random_trace_class(n, rng))
    c = class_of(b)
    h = 1e-5
    plus = coadjoint_group(exp_skew(h * a).matrix, c).rep
    minus = coadjoint_group(exp_skew(-h * a).matrix, c).rep
    fd = p_b2((plus - minus) / (2 * h))
    exact = coadjoint_algebra_bplus(a, b)
    assert np.linalg.norm(fd - exact) <= 1e-6 * np.linalg.norm(exact)
