import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mpwitness.tensor import I2, SX, SY, SZ, check_density, hermitian_eig, kron, singular_values

from conftest import haar_unitary, random_cmat


def kron_loop(a, b):
    ra, ca = a.shape
    rb, cb = b.shape
    out = np.zeros((ra * rb, ca * cb), dtype=complex)
    for i in range(ra):
        for j in range(ca):
            for k in range(rb):
                for l in range(cb):
                    out[i * rb + k, j * cb + l] = a[i, j] * b[k, l]
    return out


def test_kron_identity():
    assert np.array_equal(kron(I2, I2), np.eye(4))


def test_kron_zz_diagonal():
    assert np.array_equal(np.diag(kron(SZ, SZ)).real, [1, -1, -1, 1])


def test_kron_xy_matches_index_formula():
    assert np.array_equal(kron(SX, SY), kron_loop(SX, SY))


def test_kron_rectangular_matches_index_formula(rng):
    a, b = random_cmat(2, 3, rng), random_cmat(3, 2, rng)
    assert np.allclose(kron(a, b), kron_loop(a, b), atol=1e-14)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_kron_associative_and_bilinear(seed):
    rng = np.random.default_rng(seed)
    a, b, c, b2 = (random_cmat(2, 2, rng) for _ in range(4))
    s = complex(rng.standard_normal(), rng.standard_normal())
    assert np.allclose(kron(kron(a, b), c), kron(a, kron(b, c)), atol=1e-12)
    assert np.allclose(kron(a, s * b + b2), s * kron(a, b) + kron(a, b2), atol=1e-12)


def test_singular_values_identity():
    assert np.allclose(singular_values(np.eye(2)), [1, 1], atol=1e-12)


def test_singular_values_w_split():
    c = np.zeros((2, 4))
    c[0, 1] = c[0, 2] = c[1, 0] = 1 / np.sqrt(3)
    # characteristic polynomial of C C^dag: x^2 - tr x + det
    g = c @ c.T
    tr, det = np.trace(g), np.linalg.det(g)
    roots = sorted([(tr + np.sqrt(tr**2 - 4 * det)) / 2, (tr - np.sqrt(tr**2 - 4 * det)) / 2], reverse=True)
    sv = singular_values(c)
    assert np.allclose(sv, np.sqrt(roots), atol=1e-12)
    assert np.allclose(sv, [np.sqrt(2 / 3), np.sqrt(1 / 3)], atol=1e-12)


def test_singular_values_rank_one(rng):
    a = random_cmat(4, 1, rng)
    b = random_cmat(8, 1, rng)
    m = np.outer(a / np.linalg.norm(a), np.conj(b / np.linalg.norm(b)))
    sv = singular_values(m)
    assert len(sv) == 4
    assert sv[0] == pytest.approx(1, abs=1e-12)
    assert np.allclose(sv[1:] ** 2, 0, atol=1e-10)


def test_singular_values_rejects_nonfinite():
    with pytest.raises(ValueError):
        singular_values(np.array([[1, np.nan]]))


def test_singular_values_rejects_oversize():
    with pytest.raises(ValueError):
        singular_values(np.ones((64, 32)))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 16), st.integers(1, 64), st.integers(0, 2**32 - 1))
def test_singular_values_properties(rows, cols, seed):
    rng = np.random.default_rng(seed)
    m = random_cmat(rows, cols, rng)
    sv = singular_values(m)
    assert len(sv) == min(rows, cols)
    assert np.all(np.diff(sv) <= 1e-12)
    assert np.sum(sv**2) == pytest.approx(np.linalg.norm(m) ** 2, abs=1e-10 * max(1, np.linalg.norm(m) ** 2))
    u, v = haar_unitary(rows, rng), haar_unitary(cols, rng)
    assert np.allclose(singular_values(u @ m @ v), sv, atol=1e-8)
    assert np.allclose(sv, np.linalg.svd(m, compute_uv=False), atol=1e-8)


def test_eig_sigma_z():
    vals, vecs = hermitian_eig(SZ)
    assert np.allclose(vals, [1, -1])
    assert abs(abs(vecs[0, 0]) - 1) < 1e-12 and abs(abs(vecs[1, 1]) - 1) < 1e-12


def test_eig_sigma_x():
    vals, vecs = hermitian_eig(SX)
    assert np.allclose(vals, [1, -1])
    plus = np.array([1, 1]) / np.sqrt(2)
    assert abs(np.vdot(plus, vecs[:, 0])) == pytest.approx(1, abs=1e-12)


def test_eig_maximally_mixed():
    vals, _ = hermitian_eig(np.eye(8) / 8)
    assert np.allclose(vals, 1 / 8, atol=1e-14)


def test_eig_rejects_non_hermitian():
    with pytest.raises(ValueError):
        hermitian_eig(np.array([[0, 1], [0, 0]]))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 32), st.integers(0, 2**32 - 1))
def test_eig_reconstruction(dim, seed):
    rng = np.random.default_rng(seed)
    a = random_cmat(dim, dim, rng)
    h = a + a.conj().T
    vals, vecs = hermitian_eig(h)
    assert np.allclose(h @ vecs, vecs * vals, atol=1e-8)
    assert np.allclose(vecs.conj().T @ vecs, np.eye(dim), atol=1e-8)
    assert np.allclose((vecs * vals) @ vecs.conj().T, h, atol=1e-8)


def test_check_density_diagnostics():
    assert check_density(np.eye(4) / 4) == []
    assert "trace" in check_density(np.eye(4) / 2)[0]
    assert "positive" in check_density(np.diag([1.5, -0.5]))[0]
    assert "Hermitian" in check_density(np.array([[0.5, 1], [0, 0.5]]))[0]
