import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qubitizer import densemath as dm
from qubitizer.constants import JACOBI_TOL
from qubitizer.errors import DimMismatch, NoConvergence, NotHermitian, NotNormalized


def _hermitian(seed, dim, scale=1.0):
    rng = np.random.default_rng(seed)
    return dm.random_hermitian(dim, rng) * scale


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10_000), dim=st.integers(1, 12))
def test_eig_reconstructs(seed, dim):
    h = _hermitian(seed, dim)
    w, v = dm.hermitian_eig(h)
    assert np.all(np.diff(w) >= -1e-12)
    assert dm.max_abs_diff(v @ np.diag(w) @ dm.dagger(v), h) < 1e-10
    assert dm.is_unitary(v, 1e-10)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(h), atol=1e-10)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10_000), dim=st.integers(2, 16), exponent=st.integers(-170, -100))
def test_kernels_with_tiny_entries(kernels, seed, dim, exponent):
    # near-underflow couplings once broke the rotation's unit phase
    rng = np.random.default_rng(seed)
    h = np.diag(rng.integers(-1, 2, size=dim).astype(complex))
    i, j = rng.integers(0, dim, size=2)
    if i != j:
        h[i, j] = 10.0**exponent * (1 + 1j)
        h[j, i] = np.conj(h[i, j])
    h += dm.random_hermitian(dim, rng) * (rng.random() < 0.5)
    w, v, sweeps = kernels.jacobi_eigh(h, JACOBI_TOL, 100)
    assert sweeps >= 0
    assert np.abs(v @ np.diag(w) @ v.conj().T - h).max() < 1e-10


def test_kernels_agree_on_degenerate_spectrum(kernels):
    # exact degeneracies from a relabeled circulant
    from qubitizer.structured import build, dense_oracle, spec_from_dict

    table = [(5 * i + 3) % 32 for i in range(32)]
    spec = spec_from_dict({"kind": "circular_permutation", "m": 32, "n": 12, "table": table, "weight": 0.5})
    h = dense_oracle(spec)
    w, v, _ = kernels.jacobi_eigh(h.astype(complex), JACOBI_TOL, 100)
    assert np.abs(v @ np.diag(w) @ v.conj().T - h).max() < 1e-12
    assert dm.max_abs_diff(build(spec).matrix(), h) < 1e-12


def test_not_hermitian():
    with pytest.raises(NotHermitian):
        dm.hermitian_eig(np.array([[0, 1], [0, 0]]))


def test_no_convergence(monkeypatch):
    class Stalled:
        @staticmethod
        def jacobi_eigh(a, tol, sweeps):
            return np.zeros(len(a)), np.eye(len(a)), -1

    monkeypatch.setattr(dm, "kernels", Stalled)
    with pytest.raises(NoConvergence):
        dm.hermitian_eig(_hermitian(1, 4))


def test_expm_matches_series():
    h = _hermitian(3, 4)
    t = 0.3
    series = np.eye(4, dtype=complex)
    term = np.eye(4, dtype=complex)
    for k in range(1, 40):
        term = term @ (1j * t * h) / k
        series = series + term
    assert dm.max_abs_diff(dm.expm_hermitian(h, t), series) < 1e-12


def test_kron_order_and_dims():
    a = np.array([[0, 1], [1, 0]])
    b = np.diag([1, -1])
    assert dm.kron_all([a, b])[0, 2] == 1
    with pytest.raises(DimMismatch):
        dm.max_abs_diff(np.eye(2), np.eye(3))


def test_states():
    with pytest.raises(NotNormalized):
        dm.normalized_state([1, 1])
    psi = dm.random_state(8, np.random.default_rng(0))
    assert abs(np.linalg.norm(psi) - 1) < 1e-12
    assert dm.basis_state(2, 4)[2] == 1


def test_spectral_norm_and_commutator():
    x = np.array([[0, 1], [1, 0]])
    z = np.diag([1, -1])
    assert abs(dm.spectral_norm(dm.commutator(x, z)) - 2) < 1e-12
    assert dm.spectral_norm(np.zeros((0, 0))) == 0.0
