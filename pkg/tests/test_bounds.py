import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qubitizer import densemath as dm
from qubitizer.bounds import (
    ShotPlan,
    covariance,
    exact_expectation_variance,
    monte_carlo_check,
    predicted_defect,
    trotter_bound,
    trotter_defect,
    variance_bound,
)
from qubitizer.circuit import lower
from qubitizer.errors import (
    BadPartition,
    DimMismatch,
    NotHermitian,
    NotNormalized,
    TooFewTerms,
)
from qubitizer.opalg import Factor, LinearCombination, OperatorString
from qubitizer.synth import (
    TrotterPlan,
    measurement_program,
    reducer_from_string,
    trotter,
)

X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.diag([1.0, -1.0]).astype(complex)
PLUS = np.array([1, 1]) / math.sqrt(2)

LAM = np.array([0, 1, 1, 0]) / math.sqrt(2)
LAM_PERP = np.array([0, 1, -1, 0]) / math.sqrt(2)
HOP = np.outer(LAM, LAM) - np.outer(LAM_PERP, LAM_PERP)

QUBITIZED_POOL = [Factor.I, Factor.X, Factor.Y, Factor.Z, Factor.sigma, Factor.sigma_dagger]


def _lch(*texts, weights=None):
    weights = weights or [1.0] * len(texts)
    strings = []
    for t, w in zip(texts, weights):
        hc = "s" in t.split(".") or "sd" in t.split(".")
        strings.append(OperatorString.of(t, w, hc))
    return LinearCombination.of(strings)


@st.composite
def qubitized_lch(draw, n_terms=3, n_qubits=3):
    strings = []
    for _ in range(n_terms):
        fs = tuple(draw(st.lists(st.sampled_from(QUBITIZED_POOL), min_size=n_qubits, max_size=n_qubits)))
        if all(f == Factor.I for f in fs):
            fs = (Factor.Z,) + fs[1:]
        hc = any(f.is_ladder for f in fs)
        strings.append(OperatorString(fs, draw(st.floats(-2, 2).filter(lambda v: abs(v) > 0.05)), hc))
    return LinearCombination.of(strings)


def test_expectation_examples():
    assert exact_expectation_variance(HOP, LAM) == pytest.approx((1.0, 0.0), abs=1e-12)
    assert exact_expectation_variance(HOP, (LAM + LAM_PERP) / math.sqrt(2)) == pytest.approx((0, 1), abs=1e-12)
    assert exact_expectation_variance(HOP, [1, 0, 0, 0]) == pytest.approx((0, 0), abs=1e-12)
    with pytest.raises(NotHermitian):
        exact_expectation_variance(np.array([[0, 1], [0, 0]]), PLUS)
    with pytest.raises(NotNormalized):
        exact_expectation_variance(Z, [1, 1])


def test_covariance_examples(rng):
    psi = dm.random_state(4, rng)
    assert covariance(HOP, HOP, psi) == pytest.approx(exact_expectation_variance(HOP, psi)[1], abs=1e-12)
    zi, iz = np.kron(Z, np.eye(2)), np.kron(np.eye(2), Z)
    assert abs(covariance(zi, iz, np.array([0, 1, 0, 0]))) < 1e-12
    assert abs(covariance(X, Z, PLUS)) < 1e-12
    with pytest.raises(DimMismatch):
        covariance(X, zi, PLUS)


@settings(max_examples=200, deadline=None)
@given(lch=qubitized_lch(n_terms=2, n_qubits=2), seed=st.integers(0, 10**6))
def test_pairwise_inequalities(lch, seed):
    psi = dm.random_state(4, np.random.default_rng(seed))
    report = variance_bound(lch, ShotPlan(((0, 1),)), psi)
    h1, h2 = (t.materialize() / w for t, w in zip(lch.terms, report.weights))
    for h in (h1, h2):
        mean, _ = exact_expectation_variance(h, psi)
        second = np.vdot(psi, h @ h @ psi).real
        assert -1e-12 <= mean**2 <= second + 1e-12 and second <= 1 + 1e-12
    cov = covariance(h1, h2, psi)
    v1, v2 = report.variances
    assert abs(cov) <= 1 + 1e-12
    assert abs(cov) ** 2 <= v1 * v2 + 1e-10
    assert report.holds


def test_variance_bound_examples():
    rep = variance_bound(_lch("Z"))
    assert rep.abs_sum == 1 and rep.grouped_bound == 1
    rep = variance_bound(_lch("Z.I", "I.Z"), ShotPlan(((0, 1),)), [1, 0, 0, 0])
    assert rep.grouped_bound == 4 and abs(rep.grouped_exact) < 1e-12 and rep.holds
    with pytest.raises(BadPartition):
        variance_bound(_lch("Z.I", "I.Z"), ShotPlan(((0,), (0, 1))))
    with pytest.raises(BadPartition):
        variance_bound(_lch("Z.I", "I.Z"), ShotPlan(((0,),)))


@settings(max_examples=25, deadline=None)
@given(lch=qubitized_lch(), seed=st.integers(0, 10**6))
def test_grouped_exact_below_bound(lch, seed):
    rng = np.random.default_rng(seed)
    plans = [ShotPlan.singletons(3), ShotPlan(((0, 1, 2),)), ShotPlan(((0, 2), (1,)))]
    for _ in range(50):
        psi = dm.random_state(8, rng)
        for plan in plans:
            rep = variance_bound(lch, plan, psi)
            assert all(-1e-12 <= v <= 1 + 1e-12 for v in rep.variances)
            assert rep.literal_weighted <= rep.abs_sum + 1e-10
            assert rep.grouped_exact <= rep.grouped_bound + 1e-10


def test_trotter_bound_examples():
    rep = trotter_bound(_lch("Z.I", "I.Z"))
    assert rep.xi1_norm < 1e-15 and rep.bound == 1
    xi1, norm, bound = trotter_bound(_lch("X", "Z"))
    assert dm.max_abs_diff(xi1, (X @ Z - Z @ X) / 2) < 1e-12
    assert abs(norm - 1) < 1e-12 and abs(bound - 1) < 1e-12
    with pytest.raises(TooFewTerms):
        trotter_bound(_lch("Z"))


@settings(max_examples=30, deadline=None)
@given(lch=qubitized_lch())
def test_trotter_chain(lch):
    rep = trotter_bound(lch)
    assert rep.holds
    assert rep.xi1_norm <= rep.bound + 1e-10


def test_first_order_defect_tracks_xi1():
    lch = _lch("X.Z", "Z.Y", "s.sd", weights=[0.8, 0.5, 0.3])
    rep = trotter_bound(lch)
    exact = lch.materialize()
    residues = []
    for t in (0.05, 0.1, 0.2):
        defect = lower(trotter(lch, TrotterPlan(t, 1))) - dm.expm_hermitian(exact, t)
        residues.append(dm.spectral_norm(defect - t**2 * rep.xi1))
        assert abs(trotter_defect(lch, t, 1) - predicted_defect(rep, t, 1)) <= residues[-1] + 1e-12
    # what is left after the t^2 term shrinks like t^3
    assert 6 < residues[1] / residues[0] < 10
    assert 6 < residues[2] / residues[1] < 10


def test_monte_carlo_examples():
    r = reducer_from_string(OperatorString.of("s.sd", 1.0, True))
    prog = measurement_program(r)
    eig = monte_carlo_check(prog, LAM, 500, seed=3)
    assert eig.variance == 0 and eig.mean == 1
    sat = monte_carlo_check(prog, (LAM + LAM_PERP) / math.sqrt(2), 100_000, seed=11)
    assert 0.9 <= sat.variance <= 1.1 and sat.mean_ok and sat.variance_ok
    again = monte_carlo_check(prog, (LAM + LAM_PERP) / math.sqrt(2), 100_000, seed=11)
    assert np.array_equal(sat.counts, again.counts)
    with pytest.raises(ValueError):
        monte_carlo_check(prog, LAM, 10)


def test_monte_carlo_rate(rng):
    r = reducer_from_string(OperatorString.of("X.Z"))
    prog = measurement_program(r)
    psi = dm.random_state(4, rng)
    for seed in range(5):
        for shots in (1_000, 10_000, 100_000):
            res = monte_carlo_check(prog, psi, shots, seed=seed)
            scaled = abs(res.mean - res.exact_mean) * math.sqrt(shots)
            assert scaled <= 6 * math.sqrt(max(res.exact_variance, 1e-12))
