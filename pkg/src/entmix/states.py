"""Two-qubit density matrices: canonical states, random ensembles and the
extremal families parametrised by marginal eigenvalues and concurrence.

States are plain complex ``numpy`` arrays of shape ``(4, 4)``; samplers
return stacks of shape ``(n, 4, 4)``.
"""
from dataclasses import dataclass

import numpy as np

from .linalg import TOL, dagger, hermitian_eigenvalues, jacobi_eigh, kron

RNG_ALGORITHM = "numpy.random.PCG64"

SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)


class InvalidStateError(ValueError):
    """A matrix failed a density-matrix invariant.

    ``reason`` is one of ``"parse"``, ``"shape"``, ``"hermiticity"``,
    ``"trace"``, ``"psd"``.
    """

    def __init__(self, reason, detail=""):
        self.reason = reason
        super().__init__(f"invalid density matrix ({reason}){': ' + detail if detail else ''}")


class InvalidParameters(ValueError):
    pass


def make_rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


def _check_structure(rho, dim):
    if rho.ndim < 2 or rho.shape[-1] != rho.shape[-2] or (dim and rho.shape[-1] != dim):
        raise InvalidStateError("shape", f"got {rho.shape}")
    herm_err = np.max(np.abs(rho - dagger(rho)), initial=0.0)
    if herm_err > TOL.hermiticity:
        raise InvalidStateError("hermiticity", f"max |rho - rho^dagger| = {herm_err:.3e}")
    tr = np.real(np.trace(rho, axis1=-2, axis2=-1))
    tr_err = np.max(np.abs(tr - 1.0), initial=0.0)
    if tr_err > TOL.trace:
        raise InvalidStateError("trace", f"max |tr rho - 1| = {tr_err:.3e}")


def _check_psd(eigenvalues):
    lo = np.min(eigenvalues, initial=np.inf)
    if lo < -TOL.psd_clamp:
        raise InvalidStateError("psd", f"min eigenvalue {lo:.3e}")


def validate_density_matrix(rho, dim=None, eigenvalues=None):
    """Check the density-matrix invariants on a matrix or stack.

    Returns the eigenvalues (descending) so callers can reuse them.
    """
    rho = np.asarray(rho)
    _check_structure(rho, dim)
    if eigenvalues is None:
        eigenvalues = hermitian_eigenvalues(rho)
    _check_psd(eigenvalues)
    return eigenvalues


def density_eigh(rho, dim=4):
    """Validate ``rho`` and return its eigenvalues (descending) and eigenvectors."""
    rho = np.asarray(rho)
    _check_structure(rho, dim)
    w, v = jacobi_eigh(rho)
    _check_psd(w)
    return w, v


def _hermitize(m):
    return 0.5 * (m + dagger(m))


def pure(psi):
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.linalg.norm(psi, axis=-1, keepdims=True)
    return psi[..., :, None] * np.conj(psi[..., None, :])


def bell_state():
    """|Phi+><Phi+| with |Phi+> = (|00> + |11>)/sqrt(2)."""
    return pure([1, 0, 0, 1])


def maximally_mixed(dim=4):
    return np.eye(dim, dtype=complex) / dim


def werner_state(p):
    if not 0.0 <= p <= 1.0:
        raise InvalidParameters(f"Werner weight must lie in [0, 1], got {p}")
    return p * bell_state() + (1.0 - p) * maximally_mixed()


def product_state(a, b):
    """rho_1 (x) rho_2 for two single-qubit density matrices (or stacks)."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    try:
        validate_density_matrix(a, dim=2)
        validate_density_matrix(b, dim=2)
    except InvalidStateError as exc:
        raise InvalidParameters(f"invalid marginal: {exc}") from exc
    return kron(a, b)


def _ginibre(rng, shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def random_state(rng, rank_cap=None, size=None, dim=4):
    """Draw from the Hilbert-Schmidt-induced ensemble G G^dagger / tr(G G^dagger).

    G is a ``dim x k`` matrix of independent standard complex Gaussians with
    ``k = rank_cap`` (default ``dim``), so the result has rank at most k.
    """
    k = dim if rank_cap is None else int(rank_cap)
    if not 1 <= k <= dim:
        raise InvalidParameters(f"rank_cap must be in 1..{dim}, got {rank_cap}")
    batch = () if size is None else (size,)
    g = _ginibre(rng, batch + (dim, k))
    rho = g @ dagger(g)
    rho = rho / np.real(np.trace(rho, axis1=-2, axis2=-1))[..., None, None]
    return _hermitize(rho)


def random_unitary(rng, dim=2, size=None):
    """Haar-random unitary via QR of a Ginibre matrix with phase fix."""
    batch = () if size is None else (size,)
    z = _ginibre(rng, batch + (dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    return q * (d / np.abs(d))[..., None, :]


def random_local_unitary(rng, size=None):
    return kron(random_unitary(rng, 2, size), random_unitary(rng, 2, size))


def apply_unitary(u, rho):
    return _hermitize(u @ rho @ dagger(u))


@dataclass(frozen=True)
class MemmsParams:
    """Marginal eigenvalues of a maximally entangled state with fixed marginals.

    x1 is the greatest eigenvalue of the less pure marginal and x2 the lowest
    eigenvalue of the purer one (the mirrored assignment is also accepted).
    """

    x1: float
    x2: float

    def __post_init__(self):
        x1, x2 = self.x1, self.x2
        eps = TOL.psd_clamp
        if not (-eps <= x1 <= 1 + eps and -eps <= x2 <= 1 + eps):
            raise InvalidParameters(f"x1, x2 must lie in [0, 1], got ({x1}, {x2})")
        if x1 + x2 > 1 + eps:
            raise InvalidParameters(f"x1 + x2 must not exceed 1, got {x1 + x2}")
        if (x1 - 0.5) * (x2 - 0.5) > eps:
            raise InvalidParameters(
                "one parameter must be >= 1/2 and the other <= 1/2 "
                f"(greatest eigenvalue of the less pure marginal), got ({x1}, {x2})"
            )

    @classmethod
    def from_marginals(cls, p1, p2):
        """Parameters for marginal spectra {p1, 1-p1} and {p2, 1-p2}.

        Only the smaller eigenvalue of each marginal matters; the less pure
        marginal is the one whose smaller eigenvalue is closer to 1/2.
        """
        low1 = min(p1, 1.0 - p1)
        low2 = min(p2, 1.0 - p2)
        return cls(1.0 - max(low1, low2), min(low1, low2))


@dataclass(frozen=True)
class LptpsParams:
    """Parameters (x1, x2, c) of the X-shaped family with concurrence c."""

    x1: float
    x2: float
    c: float

    @property
    def lptps_factor(self):
        x1, x2 = self.x1, self.x2
        return 1.0 - 2.0 * x1 - 2.0 * x2 + 2.0 * x1 * x2

    def is_lptps(self, tol=TOL.psd_clamp):
        g = self.lptps_factor
        return g >= -tol and self.c**2 <= 4.0 * self.x1 * self.x2 * g + tol

    def validate(self, require_lptps=False):
        x1, x2, c = self.x1, self.x2, self.c
        eps = TOL.psd_clamp
        if min(x1, x2) < -eps or x1 + x2 > 1 + eps:
            raise InvalidParameters(f"need x1, x2 >= 0 and x1 + x2 <= 1, got ({x1}, {x2})")
        if c < 0 or c > 2.0 * np.sqrt(max(x1 * x2, 0.0)) + eps:
            raise InvalidParameters(f"need 0 <= c <= 2 sqrt(x1 x2), got c = {c}")
        if require_lptps and not self.is_lptps():
            raise InvalidParameters(f"({x1}, {x2}, {c}) violates the LPTPS constraints")


def ansatz_state(params, require_lptps=False):
    """X-shaped state with diagonal (x1, 0, 1-x1-x2, x2) and coherence c/2.

    Its marginals are diag(x1, 1-x1) and diag(1-x2, x2) and its concurrence
    is c.
    """
    params.validate(require_lptps)
    x1, x2, c = params.x1, params.x2, params.c
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = x1
    rho[2, 2] = 1.0 - x1 - x2
    rho[3, 3] = x2
    rho[0, 3] = rho[3, 0] = c / 2.0
    return rho


def ansatz_states(x1, x2, c):
    """Vectorised ansatz construction without validation."""
    x1, x2, c = np.broadcast_arrays(*(np.asarray(t, dtype=float) for t in (x1, x2, c)))
    rho = np.zeros(x1.shape + (4, 4), dtype=complex)
    rho[..., 0, 0] = x1
    rho[..., 2, 2] = 1.0 - x1 - x2
    rho[..., 3, 3] = x2
    rho[..., 0, 3] = rho[..., 3, 0] = c / 2.0
    return rho


def memms(params):
    """Maximally entangled state for the marginal eigenvalues in ``params``.

    Rank at most two, with concurrence 2 sqrt(x1 x2).
    """
    return ansatz_state(LptpsParams(params.x1, params.x2, 2.0 * np.sqrt(params.x1 * params.x2)))


def memms_for_marginals(p1, p2):
    """MEMMS whose first and second marginals have spectra {p1, 1-p1}, {p2, 1-p2}.

    The canonical form puts the less pure marginal on qubit 1; the qubits
    are exchanged when the requested order is the other way round.
    """
    params = MemmsParams.from_marginals(p1, p2)
    rho = memms(params)
    low1 = min(p1, 1.0 - p1)
    low2 = min(p2, 1.0 - p2)
    if low2 > low1:
        rho = SWAP @ rho @ SWAP
    return rho


def x_state(x, y, w, z, e, f):
    """X-shaped state with diagonal (x, y, w, z), corner coherence e and inner f."""
    if abs(x + y + w + z - 1.0) > TOL.trace:
        raise InvalidParameters(f"diagonal must sum to 1, got {x + y + w + z}")
    if min(x, y, w, z) < 0 or e < 0 or f < 0:
        raise InvalidParameters("diagonal entries and coherences must be non-negative")
    if e > np.sqrt(x * z) + TOL.psd_clamp or f > np.sqrt(y * w) + TOL.psd_clamp:
        raise InvalidParameters("coherences exceed the positivity limits e <= sqrt(xz), f <= sqrt(yw)")
    rho = np.diag([x, y, w, z]).astype(complex)
    rho[0, 3] = rho[3, 0] = e
    rho[1, 2] = rho[2, 1] = f
    return rho


def x_state_concurrence(x, y, w, z, e, f):
    """Closed-form concurrence 2 max{f - sqrt(xz), e - sqrt(wy), 0} of an X state."""
    x_state(x, y, w, z, e, f)
    return 2.0 * max(f - np.sqrt(x * z), e - np.sqrt(w * y), 0.0)


def sample_lptps_params(rng, n):
    """Rejection-sample (x1, x2, c) for entangled states less pure than product states.

    x1, x2 are uniform on [0, 1/2] conditioned on 1 - 2x1 - 2x2 + 2x1x2 >= 0;
    c^2 is uniform on (0, 4 x1 x2 (1 - 2x1 - 2x2 + 2x1x2)].
    """
    out = np.empty((0, 3))
    while out.shape[0] < n:
        m = max(2 * (n - out.shape[0]), 64)
        x1 = 0.5 * rng.random(m)
        x2 = 0.5 * rng.random(m)
        u = 1.0 - rng.random(m)  # (0, 1]
        g = 1.0 - 2.0 * x1 - 2.0 * x2 + 2.0 * x1 * x2
        c = np.sqrt(u * 4.0 * x1 * x2 * np.clip(g, 0.0, None))
        keep = (g >= 0.0) & (c > 0.0)
        out = np.concatenate([out, np.column_stack([x1, x2, c])[keep]])
    return out[:n]


def sample_entangled_lptps(rng, n):
    """Stack of ``n`` entangled LPTPS drawn by :func:`sample_lptps_params`."""
    p = sample_lptps_params(rng, n)
    return ansatz_states(p[:, 0], p[:, 1], p[:, 2])
