"""Separability criteria and entropic bounds on two-qubit entanglement.

Criteria return flags that are true when the state is certified entangled.
Bounds come as :class:`BoundCheck` records so that sweeps can track the
smallest slack seen for each inequality.
"""
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.optimize import minimize_scalar

from .linalg import TOL, hermitian_eigenvalues, partial_trace, partial_transpose_first
from .measures import (
    LINEAR,
    VON_NEUMANN,
    _profile,
    _purity,
    _scalar,
    eof_from_concurrence,
)
from .states import InvalidParameters, ansatz_states, validate_density_matrix

Real = Union[float, np.ndarray]

# extremal entangled LPTPS: x1 = x2 = (3 - sqrt 5)/4
LPTPS_OPTIMAL_X = (3.0 - np.sqrt(5.0)) / 4.0
DELTA_MU_MAX = (5.0 * np.sqrt(5.0) - 11.0) / 8.0

# above these planes only separable states occur
VON_NEUMANN_PLANE = np.log(12.0) / np.log(16.0)
LINEAR_PLANE = 8.0 / 9.0

EQ_TRIANGLE_LEFT = "triangle_left"
EQ_TRIANGLE_RIGHT = "triangle_right"
EQ_EOF_LOOSE = "eof_loose"
EQ_TANGLE_LOOSE = "tangle_loose"
EQ_TANGLE_MEMMS = "tangle_memms"
EQ_EOF_MEMMS = "eof_memms"
EQ_LPTPS_EXCLUSION = "lptps_exclusion"

BOUND_NAMES = (
    EQ_TRIANGLE_LEFT,
    EQ_TRIANGLE_RIGHT,
    EQ_EOF_LOOSE,
    EQ_TANGLE_LOOSE,
    EQ_TANGLE_MEMMS,
    EQ_EOF_MEMMS,
    EQ_LPTPS_EXCLUSION,
)


@dataclass(frozen=True)
class BoundCheck:
    """One inequality lhs <= rhs; ``slack = rhs - lhs``."""

    bound_name: str
    lhs: Real
    rhs: Real

    @property
    def slack(self):
        return _scalar(np.asarray(self.rhs) - np.asarray(self.lhs))

    @property
    def satisfied(self):
        ok = np.asarray(self.slack) >= -TOL.bound_slack
        return bool(ok) if ok.ndim == 0 else ok


@dataclass(frozen=True)
class CriteriaVerdict:
    ppt_entangled: Union[bool, np.ndarray]
    entropic_vn_flag: Union[bool, np.ndarray]
    entropic_lin_flag: Union[bool, np.ndarray]
    majorization_flag: Union[bool, np.ndarray]
    min_pt_eigenvalue: Real


def _flag(x):
    x = np.asarray(x, dtype=bool)
    return bool(x) if x.ndim == 0 else x


def _require_kind(profile, kind):
    if profile.kind != kind:
        raise ValueError(f"expected a {kind} profile, got {profile.kind}")


def ppt_from_spectrum(pt_eigenvalues):
    lo = np.min(pt_eigenvalues, axis=-1)
    return _flag(lo < -TOL.psd_clamp), _scalar(lo)


def ppt_test(rho):
    """Peres-Horodecki test; exact for two qubits.

    Returns ``(entangled, min_eigenvalue_of_partial_transpose)``.
    """
    rho = np.asarray(rho)
    validate_density_matrix(rho, dim=4)
    return ppt_from_spectrum(hermitian_eigenvalues(partial_transpose_first(rho)))


def entropic_criterion_vn(profile):
    """Separable states obey 2 S >= max(S_1, S_2); flag a violation."""
    _require_kind(profile, VON_NEUMANN)
    s = np.asarray(profile.s_global)
    return _flag(2.0 * s < np.maximum(profile.s_1, profile.s_2) - TOL.flag_guard)


def entropic_criterion_lin(profile):
    """Separable states obey mu <= min(mu_1, mu_2), i.e. S_L >= 2/3 max(S_L1, S_L2)."""
    _require_kind(profile, LINEAR)
    mu = np.asarray(profile.mu)
    margin = mu - np.minimum(profile.mu_1, profile.mu_2)
    by_purity = margin > TOL.flag_guard
    entropy_margin = 2.0 / 3.0 * np.maximum(profile.s_1, profile.s_2) - np.asarray(profile.s_global)
    by_entropy = entropy_margin > 4.0 / 3.0 * TOL.flag_guard
    disagree = (by_purity != by_entropy) & (np.abs(margin - TOL.flag_guard) > 1e-13)
    if np.any(disagree):
        raise ArithmeticError("purity and linear-entropy forms of the criterion disagree")
    return _flag(by_purity)


def majorization_from_spectra(w, w1, w2):
    top = np.asarray(w)[..., 0]
    return _flag(
        (top > np.asarray(w1)[..., 0] + TOL.flag_guard) | (top > np.asarray(w2)[..., 0] + TOL.flag_guard)
    )


def majorization_test(rho):
    """Flag states whose global spectrum is not majorised by both marginal spectra.

    With two-level marginals padded by zeros only the first partial sum can
    fail, so the test compares largest eigenvalues.
    """
    rho = np.asarray(rho)
    w = validate_density_matrix(rho, dim=4)
    w1 = hermitian_eigenvalues(partial_trace(rho, 1))
    w2 = hermitian_eigenvalues(partial_trace(rho, 2))
    return majorization_from_spectra(w, w1, w2)


def triangle_inequality_check(profile):
    """Araki-Lieb and subadditivity: |S_1 - S_2| <= 2 S <= S_1 + S_2."""
    _require_kind(profile, VON_NEUMANN)
    s2 = 2.0 * np.asarray(profile.s_global)
    left = BoundCheck(EQ_TRIANGLE_LEFT, _scalar(np.abs(np.asarray(profile.s_1) - profile.s_2)), _scalar(s2))
    right = BoundCheck(EQ_TRIANGLE_RIGHT, _scalar(s2), _scalar(np.asarray(profile.s_1) + profile.s_2))
    return left, right


def product_surface(kind, s1, s2):
    """Global entropy of the product of two marginals with entropies s1, s2."""
    s1 = np.asarray(s1, dtype=float)
    s2 = np.asarray(s2, dtype=float)
    if kind == VON_NEUMANN:
        return _scalar((s1 + s2) / 2.0)
    if kind == LINEAR:
        return _scalar(2.0 * (s1 + s2) / 3.0 - s1 * s2 / 3.0)
    raise ValueError(f"unknown entropy kind {kind!r}")


def loose_bounds(vn_profile, lin_profile, report):
    """E_F <= min(S_V1, S_V2) and C^2 <= min(S_L1, S_L2)."""
    _require_kind(vn_profile, VON_NEUMANN)
    _require_kind(lin_profile, LINEAR)
    eof_check = BoundCheck(EQ_EOF_LOOSE, report.eof, _scalar(np.minimum(vn_profile.s_1, vn_profile.s_2)))
    tangle_check = BoundCheck(EQ_TANGLE_LOOSE, report.tangle, _scalar(np.minimum(lin_profile.s_1, lin_profile.s_2)))
    return eof_check, tangle_check


def _entropy_pair(s_l1, s_l2):
    a = np.asarray(s_l1, dtype=float)
    b = np.asarray(s_l2, dtype=float)
    eps = TOL.psd_clamp
    if np.any((a < -eps) | (a > 1 + eps) | (b < -eps) | (b > 1 + eps)) or np.any(np.isnan(a + b)):
        raise InvalidParameters("marginal linear entropies must lie in [0, 1]")
    return np.clip(a, 0.0, 1.0), np.clip(b, 0.0, 1.0)


def memms_tangle_bound(s_l1, s_l2):
    """Largest tangle compatible with marginal linear entropies s_l1, s_l2.

    (1 - sqrt(1 - a)) (1 + sqrt(1 - b)) with a the smaller entropy and b the
    larger; equal marginals give the entropy itself.
    """
    s1, s2 = _entropy_pair(s_l1, s_l2)
    a = np.minimum(s1, s2)
    b = np.maximum(s1, s2)
    return _scalar((1.0 - np.sqrt(1.0 - a)) * (1.0 + np.sqrt(1.0 - b)))


def eof_marginal_bound(s_l1, s_l2):
    return eof_from_concurrence(np.sqrt(np.clip(memms_tangle_bound(s_l1, s_l2), 0.0, 1.0)))


def marginal_bounds(lin_profile, report):
    """Tangle and E_F against the maximally entangled values for the same marginals."""
    _require_kind(lin_profile, LINEAR)
    return (
        BoundCheck(EQ_TANGLE_MEMMS, report.tangle, memms_tangle_bound(lin_profile.s_1, lin_profile.s_2)),
        BoundCheck(EQ_EOF_MEMMS, report.eof, eof_marginal_bound(lin_profile.s_1, lin_profile.s_2)),
    )


def delta_mu_from_purities(mu, mu_1, mu_2):
    return _scalar(np.asarray(mu_1) * mu_2 - mu)


def delta_mu(rho):
    """Purity deficit mu_1 mu_2 - mu relative to the product of the marginals."""
    rho = np.asarray(rho)
    validate_density_matrix(rho, dim=4)
    return delta_mu_from_purities(_purity(rho), _purity(partial_trace(rho, 1)), _purity(partial_trace(rho, 2)))


def lptps_entropy_limit(s):
    r = np.sqrt(1.0 - np.asarray(s, dtype=float))
    return _scalar(4.0 * r / (1.0 + r) ** 2)


def lptps_entropy_exclusion(s_l1, s_l2):
    """Marginal-entropy region allowed for entangled LPTPS.

    Each marginal entropy must not exceed 4 sqrt(1 - s) / (1 + sqrt(1 - s))^2
    evaluated at the other one; the tighter of the two is reported.
    """
    s1, s2 = _entropy_pair(s_l1, s_l2)
    rhs1 = np.asarray(lptps_entropy_limit(s2))
    rhs2 = np.asarray(lptps_entropy_limit(s1))
    first = (rhs1 - s1) <= (rhs2 - s2)
    return BoundCheck(EQ_LPTPS_EXCLUSION, _scalar(np.where(first, s1, s2)), _scalar(np.where(first, rhs1, rhs2)))


def lptps_max_tangle(delta_mu_value):
    """Tangle of the maximally entangled LPTPS at purity deficit ``delta_mu_value``."""
    d = np.asarray(delta_mu_value, dtype=float)
    if np.any((d < -TOL.bound_slack) | (d > DELTA_MU_MAX + TOL.bound_slack)) or np.any(np.isnan(d)):
        raise InvalidParameters(f"purity deficit must lie in [0, {DELTA_MU_MAX}], got {delta_mu_value}")
    return _scalar(np.clip(2.0 * (DELTA_MU_MAX - d), 0.0, None))


def coexistence_planes(kind):
    """Global entropy above which every state is separable."""
    if kind == VON_NEUMANN:
        return float(VON_NEUMANN_PLANE)
    if kind == LINEAR:
        return LINEAR_PLANE
    raise ValueError(f"unknown entropy kind {kind!r}")


def criteria_verdict(rho, vn_profile=None, lin_profile=None):
    """Evaluate all three criteria plus PPT on one state or a stack."""
    rho = np.asarray(rho)
    w = validate_density_matrix(rho, dim=4)
    if vn_profile is None:
        vn_profile = _profile(rho, w, VON_NEUMANN)
    if lin_profile is None:
        lin_profile = _profile(rho, w, LINEAR)
    ppt, lo = ppt_from_spectrum(hermitian_eigenvalues(partial_transpose_first(rho)))
    w1 = hermitian_eigenvalues(partial_trace(rho, 1))
    w2 = hermitian_eigenvalues(partial_trace(rho, 2))
    return CriteriaVerdict(
        ppt,
        entropic_criterion_vn(vn_profile),
        entropic_criterion_lin(lin_profile),
        majorization_from_spectra(w, w1, w2),
        lo,
    )


# numerical search for the extremal entangled LPTPS


def _ansatz_gap(x1, x2, c=0.0):
    """mu_1 mu_2 - mu of the ansatz state, from explicit matrices."""
    rho = ansatz_states(x1, x2, c)
    return _purity(partial_trace(rho, 1)) * _purity(partial_trace(rho, 2)) - _purity(rho)


@dataclass(frozen=True)
class LptpsExtremum:
    x1: float
    x2: float
    delta_mu_max: float
    tangle_per_gap: float

    def max_tangle(self, delta_mu_value):
        return max(0.0, (self.delta_mu_max - delta_mu_value) * self.tangle_per_gap)


def search_lptps_extremum(resolution=1e-3, cycles=200):
    """Maximise the purity deficit of the ansatz family over (x1, x2).

    At fixed deficit the tangle is largest where the c = 0 deficit is
    largest, since the deficit decreases by a constant times c^2. The search
    scans the triangle x1, x2 >= 0, x1 + x2 <= 1 on a grid and then refines
    by alternating golden-section line searches.
    """
    grid = np.arange(0.0, 1.0 + resolution / 2, resolution)
    best = (-np.inf, 0.0, 0.0)
    for x1 in grid:
        x2 = grid[grid <= 1.0 - x1 + 1e-12]
        gap = _ansatz_gap(np.full_like(x2, x1), x2)
        k = int(np.argmax(gap))
        if gap[k] > best[0]:
            best = (float(gap[k]), float(x1), float(x2[k]))
    _, x1, x2 = best

    def gap_at(a, b):
        return float(_ansatz_gap(np.array([a]), np.array([b]))[0])

    for _ in range(cycles):
        old = (x1, x2)
        x1 = minimize_scalar(lambda t: -gap_at(t, x2), bracket=(x1 - resolution, x1 + resolution),
                             method="golden", options={"xtol": 1e-12}).x
        x2 = minimize_scalar(lambda t: -gap_at(x1, t), bracket=(x2 - resolution, x2 + resolution),
                             method="golden", options={"xtol": 1e-12}).x
        if max(abs(x1 - old[0]), abs(x2 - old[1])) < 1e-12:
            break
    gap0 = gap_at(x1, x2)
    # deficit is quadratic in c; its coefficient from a unit-c probe
    per_c2 = gap0 - float(_ansatz_gap(np.array([x1]), np.array([x2]), 1.0)[0])
    return LptpsExtremum(float(x1), float(x2), gap0, 1.0 / per_c2)
