"""Mixedness and entanglement measures for qubits and qubit pairs.

Entropies are normalised by the dimension (logarithm base D) so that every
measure ranges over [0, 1]. All functions accept a single matrix or a
stack and return floats or arrays accordingly.
"""
from dataclasses import dataclass
from typing import Union

import numpy as np

from .linalg import (
    SIGMA_YY,
    jacobi_eigh,
    partial_trace,
    singular_values,
    sqrt_from_eigh,
)
from .states import InvalidParameters, density_eigh, validate_density_matrix

Real = Union[float, np.ndarray]

VON_NEUMANN = "von_neumann"
LINEAR = "linear"


def _scalar(x):
    x = np.asarray(x)
    return float(x) if x.ndim == 0 else x


def spectrum_entropy(eigenvalues, base):
    """-sum l log_base l over a spectrum, with 0 log 0 = 0."""
    lam = np.clip(np.asarray(eigenvalues, dtype=float), 0.0, 1.0)
    safe = np.where(lam > 0.0, lam, 1.0)
    s = -np.sum(lam * np.log(safe), axis=-1) / np.log(base)
    return _scalar(np.clip(s, 0.0, 1.0) + 0.0)


def von_neumann_entropy(rho):
    """Von Neumann entropy in base D, where D is the matrix dimension."""
    rho = np.asarray(rho)
    w = validate_density_matrix(rho)
    return spectrum_entropy(w, rho.shape[-1])


def purity(rho):
    """tr rho^2, computed as the squared Frobenius norm of a Hermitian matrix."""
    rho = np.asarray(rho)
    validate_density_matrix(rho)
    return _purity(rho)


def _purity(rho):
    return _scalar(np.sum(np.abs(rho) ** 2, axis=(-2, -1)))


def linear_from_purity(mu, dim):
    return _scalar(np.clip(dim / (dim - 1.0) * (1.0 - np.asarray(mu)), 0.0, 1.0))


def linear_entropy(rho):
    """D/(D-1) (1 - tr rho^2)."""
    rho = np.asarray(rho)
    return linear_from_purity(purity(rho), rho.shape[-1])


@dataclass(frozen=True)
class EntropyProfile:
    """Global and marginal mixedness of a two-qubit state.

    ``s_global``, ``s_1``, ``s_2`` are entropies of the chosen ``kind``;
    purities are carried along for both kinds.
    """

    s_global: Real
    s_1: Real
    s_2: Real
    mu: Real
    mu_1: Real
    mu_2: Real
    kind: str


@dataclass(frozen=True)
class EntanglementReport:
    concurrence: Real
    tangle: Real
    eof: Real
    wootters_lambdas: np.ndarray


def _marginal_spectra(rho):
    r1 = partial_trace(rho, 1)
    r2 = partial_trace(rho, 2)
    return r1, r2, jacobi_eigh(r1, vectors=False), jacobi_eigh(r2, vectors=False)


def _profile(rho, w, kind, marginals=None):
    r1, r2, w1, w2 = marginals if marginals is not None else _marginal_spectra(rho)
    mu, mu1, mu2 = _purity(rho), _purity(r1), _purity(r2)
    if kind == VON_NEUMANN:
        s, s1, s2 = spectrum_entropy(w, 4), spectrum_entropy(w1, 2), spectrum_entropy(w2, 2)
    elif kind == LINEAR:
        s, s1, s2 = linear_from_purity(mu, 4), linear_from_purity(mu1, 2), linear_from_purity(mu2, 2)
    else:
        raise ValueError(f"unknown entropy kind {kind!r}")
    return EntropyProfile(s, s1, s2, mu, mu1, mu2, kind)


def entropy_profile(rho, kind=VON_NEUMANN):
    """Global entropy (base 4) and both marginal entropies (base 2) of ``rho``."""
    rho = np.asarray(rho)
    w = validate_density_matrix(rho, dim=4)
    return _profile(rho, w, kind)


def binary_entropy(p):
    """Shannon entropy in bits of the distribution (p, 1-p); H(0) = H(1) = 0."""
    p = np.clip(np.asarray(p, dtype=float), 0.0, 1.0)
    q = np.minimum(p, 1.0 - p)
    tiny = q <= 1e-15
    q = np.where(tiny, 0.5, q)
    h = -(q * np.log(q) + (1.0 - q) * np.log1p(-q)) / np.log(2.0)
    return _scalar(np.where(tiny, 0.0, np.clip(h, 0.0, 1.0)))


def eof_from_concurrence(c):
    """Entanglement of formation H((1 + sqrt(1 - c^2)) / 2) without range checks."""
    c = np.clip(np.asarray(c, dtype=float), 0.0, 1.0)
    root = np.sqrt(1.0 - c * c)
    # smaller branch (1 - root)/2 written without cancellation
    q = c * c / (2.0 * (1.0 + root))
    return binary_entropy(q)


def entanglement_of_formation(c):
    c_arr = np.asarray(c, dtype=float)
    if np.any((c_arr < 0.0) | (c_arr > 1.0)) or np.any(np.isnan(c_arr)):
        raise InvalidParameters(f"concurrence must lie in [0, 1], got {c}")
    return eof_from_concurrence(c_arr)


def _wootters(rho, w, v):
    """Concurrence data from an eigendecomposition of rho.

    The square roots of the eigenvalues of rho S rho* S (S = sigma_y x
    sigma_y) are the singular values of sqrt(rho) S sqrt(rho)*, because
    sqrt(rho) S rho* S sqrt(rho) = B B^dagger for that B.
    """
    root = sqrt_from_eigh(w, v)
    b = root @ SIGMA_YY @ np.conj(root)
    sv = singular_values(b)
    c = np.clip(sv[..., 0] - sv[..., 1] - sv[..., 2] - sv[..., 3], 0.0, 1.0)
    c = _scalar(c)
    return EntanglementReport(c, _scalar(np.asarray(c) ** 2), eof_from_concurrence(c), sv**2)


def concurrence(rho):
    """Wootters concurrence, tangle and entanglement of formation."""
    rho = np.asarray(rho, dtype=complex)
    w, v = density_eigh(rho)
    return _wootters(rho, w, v)


def entropy_of_entanglement(pure_rho):
    """Marginal Von Neumann entropy (bits) of a pure two-qubit state."""
    pure_rho = np.asarray(pure_rho)
    validate_density_matrix(pure_rho, dim=4)
    mu = _purity(pure_rho)
    if np.any(np.abs(np.asarray(mu) - 1.0) > 1e-8):
        raise InvalidParameters("not a pure state")
    _, _, w1, w2 = _marginal_spectra(pure_rho)
    e1, e2 = spectrum_entropy(w1, 2), spectrum_entropy(w2, 2)
    if np.any(np.abs(np.asarray(e1) - e2) > 1e-8):
        raise ArithmeticError("marginal entropies of a pure state disagree")
    return e1
