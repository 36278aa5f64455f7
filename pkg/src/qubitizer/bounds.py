"""Sampling-variance and first-order Trotter bounds, with Monte-Carlo cross-checks."""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from . import densemath as dm
from .constants import DEFAULT_SEED, TOL_HERMITIAN
from .errors import BadPartition, DimMismatch, NotHermitian, TooFewTerms
from .opalg import LinearCombination
from .synth.measure import MeasurementProgram
from .synth.reducer import term_weight

SLACK = 1e-10


def _check_state(psi, dim: int) -> np.ndarray:
    psi = dm.normalized_state(psi, tol=1e-10)
    if psi.size != dim:
        raise DimMismatch(f"state of length {psi.size} for a {dim}-dimensional operator")
    return psi


def exact_expectation_variance(h, psi) -> tuple[float, float]:
    h = dm.as_matrix(h)
    if not dm.is_hermitian(h, TOL_HERMITIAN):
        raise NotHermitian(f"hermiticity defect {dm.hermiticity_defect(h):.3e}")
    psi = _check_state(psi, h.shape[0])
    hp = h @ psi
    mean = np.vdot(psi, hp).real
    second = np.vdot(hp, hp).real
    return float(mean), float(second - mean * mean)


def covariance(hi, hj, psi) -> complex:
    """``<h_i h_j> - <h_i><h_j>``; complex whenever the pair does not commute on ``psi``."""
    hi = dm.as_matrix(hi)
    hj = dm.as_matrix(hj)
    if hi.shape != hj.shape:
        raise DimMismatch(f"{hi.shape} vs {hj.shape}")
    for h in (hi, hj):
        if not dm.is_hermitian(h, TOL_HERMITIAN):
            raise NotHermitian(f"hermiticity defect {dm.hermiticity_defect(h):.3e}")
    psi = _check_state(psi, hi.shape[0])
    a = hi @ psi
    b = hj @ psi
    return complex(np.vdot(a, b) - np.vdot(psi, a) * np.vdot(psi, b))


# --------------------------------------------------------------------------- variance bounds


@dataclass(frozen=True)
class ShotPlan:
    groups: tuple[tuple[int, ...], ...]
    shots: int = 10_000

    @classmethod
    def singletons(cls, n_terms: int, shots: int = 10_000) -> ShotPlan:
        return cls(tuple((i,) for i in range(n_terms)), shots)

    def validate(self, n_terms: int) -> None:
        seen = [i for g in self.groups for i in g]
        if any(not g for g in self.groups):
            raise BadPartition("empty group")
        if sorted(seen) != list(range(n_terms)):
            raise BadPartition(f"groups {self.groups} do not partition range({n_terms})")


@dataclass
class BoundsReport:
    weights: list[float]
    abs_sum: float
    grouped_bound: float
    group_bounds: list[float]
    groups: list[list[int]]
    variances: list[float] | None = None
    covariances: list[list[list[float]]] | None = None
    literal_weighted: float | None = None
    squared_weighted: float | None = None
    grouped_exact: float | None = None
    group_exact: list[float] | None = None
    trotter: TrotterReport | None = None
    monte_carlo: list[dict] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        ok = True
        if self.variances is not None:
            ok &= all(-SLACK <= v <= 1 + SLACK for v in self.variances)
            ok &= self.literal_weighted <= self.abs_sum + SLACK
            ok &= self.grouped_exact <= self.grouped_bound + SLACK
        if self.trotter is not None:
            ok &= self.trotter.holds
        return bool(ok)

    def to_dict(self) -> dict:
        out = {
            "holds": self.holds,
            "terms": [
                {
                    "index": i,
                    "alpha": a,
                    **({"variance": self.variances[i]} if self.variances is not None else {}),
                }
                for i, a in enumerate(self.weights)
            ],
            "state_free": {"sum_abs_alpha": self.abs_sum, "grouped": self.grouped_bound},
            "groups": [
                {
                    "members": g,
                    "bound": b,
                    **({"exact": self.group_exact[k]} if self.group_exact is not None else {}),
                    **(
                        {"covariance": self.covariances[k]} if self.covariances is not None else {}
                    ),
                }
                for k, (g, b) in enumerate(zip(self.groups, self.group_bounds))
            ],
        }
        if self.variances is not None:
            out["state"] = {
                "sum_alpha_var": self.literal_weighted,
                "sum_alpha2_var": self.squared_weighted,
                "grouped_exact": self.grouped_exact,
            }
        if self.trotter is not None:
            out["trotter"] = self.trotter.to_dict()
        if self.monte_carlo:
            out["monte_carlo"] = self.monte_carlo
        return out


def unit_terms(lch: LinearCombination) -> tuple[list[float], list[np.ndarray]]:
    """Weights ``alpha_i`` and unit-weight matrices ``H_i`` with ``term_i = alpha_i H_i``."""
    weights, mats = [], []
    for t in lch.terms:
        a = term_weight(t.string)
        if abs(complex(a).imag) > 1e-12:
            raise NotHermitian(f"term {t.to_text()} has a complex weight")
        a = float(complex(a).real)
        weights.append(a)
        mats.append(t.materialize() / a if a else t.materialize())
    return weights, mats


def variance_bound(lch: LinearCombination, plan: ShotPlan | None = None, psi=None) -> BoundsReport:
    weights, mats = unit_terms(lch)
    plan = plan or ShotPlan.singletons(len(weights))
    plan.validate(len(weights))
    groups = [list(g) for g in plan.groups]
    group_bounds = [sum(abs(weights[i]) for i in g) ** 2 for g in groups]
    report = BoundsReport(
        weights=weights,
        abs_sum=float(sum(abs(a) for a in weights)),
        grouped_bound=float(sum(group_bounds)),
        group_bounds=group_bounds,
        groups=groups,
    )
    if psi is None:
        return report
    variances = [exact_expectation_variance(h, psi)[1] for h in mats]
    covs, exact = [], []
    for g in groups:
        c = [[covariance(mats[i], mats[j], psi) for j in g] for i in g]
        # the grouped estimator's variance is real: imaginary parts cancel pairwise
        val = sum(weights[i] * weights[j] * c[a][b] for a, i in enumerate(g) for b, j in enumerate(g))
        covs.append([[v.real for v in row] for row in c])
        exact.append(float(complex(val).real))
    report.variances = variances
    report.covariances = covs
    report.literal_weighted = float(sum(a * v for a, v in zip(weights, variances)))
    report.squared_weighted = float(sum(a * a * v for a, v in zip(weights, variances)))
    report.group_exact = exact
    report.grouped_exact = float(sum(exact))
    return report


# --------------------------------------------------------------------------- sampling


@dataclass(frozen=True)
class MonteCarloResult:
    mean: float
    variance: float
    exact_mean: float
    exact_variance: float
    shots: int
    counts: np.ndarray

    def __iter__(self):
        yield self.mean
        yield self.variance

    @property
    def sigma(self) -> float:
        return float(np.sqrt(max(self.exact_variance, 0.0) / self.shots))

    @property
    def mean_ok(self) -> bool:
        return abs(self.mean - self.exact_mean) <= 6 * self.sigma + 1e-12

    @property
    def variance_ok(self) -> bool:
        if self.exact_variance <= 1e-12:
            return abs(self.variance) <= 1e-12
        return abs(self.variance - self.exact_variance) <= 0.1 * self.exact_variance

    def to_dict(self) -> dict:
        return {
            "shots": self.shots,
            "mean": self.mean,
            "variance": self.variance,
            "exact_mean": self.exact_mean,
            "exact_variance": self.exact_variance,
            "mean_within_6_sigma": self.mean_ok,
            "variance_within_10pct": self.variance_ok,
        }


def monte_carlo_check(
    program: MeasurementProgram, psi, shots: int, seed: int | None = None, rng=None
) -> MonteCarloResult:
    if shots < 100:
        raise ValueError("at least 100 shots are required")
    if rng is None:
        rng = np.random.default_rng(DEFAULT_SEED if seed is None else seed)
    psi = _check_state(psi, 2**program.n_qubits)
    exact_mean, exact_var = program.expectation(psi)
    counts = program.sample(psi, shots, rng)
    vals = program.contributions()
    mean = float(counts @ vals) / shots
    var = float(counts @ vals**2) / shots - mean * mean
    return MonteCarloResult(mean, max(var, 0.0), exact_mean, exact_var, shots, counts)


# --------------------------------------------------------------------------- Trotter


@dataclass(frozen=True)
class TrotterReport:
    xi1: np.ndarray = field(repr=False)
    xi1_norm: float
    bound: float
    pairwise: tuple[tuple[int, int, float, float], ...]
    nested_worst: float

    def __iter__(self):
        yield self.xi1
        yield self.xi1_norm
        yield self.bound

    @property
    def holds(self) -> bool:
        return (
            self.xi1_norm <= self.bound + SLACK
            and all(norm <= cap + SLACK for _, _, norm, cap in self.pairwise)
            and self.nested_worst <= SLACK
        )

    def to_dict(self) -> dict:
        return {
            "xi1_norm": self.xi1_norm,
            "bound": self.bound,
            "holds": self.holds,
            "pairwise": [
                {"j": j, "k": k, "commutator_norm": nv, "cap": cap} for j, k, nv, cap in self.pairwise
            ],
            "nested_worst_excess": self.nested_worst,
        }


def trotter_bound(lch: LinearCombination, nested: bool = True) -> TrotterReport:
    """First-order error operator ``(1/2) sum_{j<k} [a_j H_j, a_k H_k]`` and its bounds.

    ``nested_worst`` is the largest ``||[T_i,[T_j,T_k]]|| - 4|a_i a_j a_k|`` seen (<= 0 when it holds).
    """
    if len(lch) < 2:
        raise TooFewTerms("need at least two terms")
    weights, _ = unit_terms(lch)
    mats = [t.materialize() for t in lch.terms]
    n = len(mats)
    xi1 = np.zeros_like(mats[0])
    pairwise = []
    bound = 0.0
    comms = {}
    for j, k in itertools.combinations(range(n), 2):
        c = dm.commutator(mats[j], mats[k])
        comms[j, k] = c
        xi1 += 0.5 * c
        cap = abs(weights[j] * weights[k])
        bound += cap
        pairwise.append((j, k, dm.spectral_norm(c), 2 * cap))
    worst = -np.inf
    if nested and n >= 3:
        for i in range(n):
            for (j, k), c in comms.items():
                excess = dm.spectral_norm(dm.commutator(mats[i], c))
                worst = max(worst, excess - 4 * abs(weights[i] * weights[j] * weights[k]))
    worst = float(worst) if np.isfinite(worst) else 0.0
    return TrotterReport(xi1, dm.spectral_norm(xi1), bound, tuple(pairwise), worst)


def trotter_defect(lch: LinearCombination, t: float, steps: int) -> float:
    """``||(prod_k exp(i t H_k / n))^n - exp(i t H)||`` computed densely."""
    mats = [t_.materialize() for t_ in lch.terms]
    step = np.eye(mats[0].shape[0], dtype=complex)
    for m in mats:
        step = dm.expm_hermitian(m, t / steps) @ step
    prod = np.linalg.matrix_power(step, steps)
    return dm.spectral_norm(prod - dm.expm_hermitian(sum(mats), t))


def predicted_defect(report: TrotterReport, t: float, steps: int) -> float:
    return t * t / steps * report.xi1_norm


def grouped_plan(groups: Sequence[Sequence[int]], shots: int = 10_000) -> ShotPlan:
    return ShotPlan(tuple(tuple(int(i) for i in g) for g in groups), shots)
