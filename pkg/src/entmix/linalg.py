"""Small fixed-size complex matrix kernel.

Every routine accepts a single matrix of shape ``(n, n)`` or a stack of
matrices of shape ``(..., n, n)`` and works along the trailing two axes.
Eigendecompositions use cyclic complex Jacobi rotations, vectorised over
the stack, so results do not depend on an external LAPACK build.
"""
from dataclasses import dataclass

import numba
import numpy as np


@dataclass(frozen=True)
class Tolerances:
    hermiticity: float = 1e-12
    psd_clamp: float = 1e-10
    trace: float = 1e-10
    residual: float = 1e-9
    jacobi_offdiag: float = 1e-14
    jacobi_max_sweeps: int = 100
    flag_guard: float = 1e-12
    bound_slack: float = 1e-9


TOL = Tolerances()

SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_YY = np.kron(SIGMA_Y, SIGMA_Y)


class ContractError(ValueError):
    """Raised when a matrix does not satisfy a routine's precondition."""


def dagger(m):
    return np.conj(np.swapaxes(m, -1, -2))


def is_hermitian(m, tol=TOL.hermiticity):
    m = np.asarray(m)
    return bool(np.all(np.abs(m - dagger(m)) <= tol))


def _check_square(m, sizes=None):
    if m.ndim < 2 or m.shape[-1] != m.shape[-2]:
        raise ContractError(f"expected square matrices, got shape {m.shape}")
    if sizes is not None and m.shape[-1] not in sizes:
        raise ContractError(f"expected dimension in {sizes}, got {m.shape[-1]}")


@numba.njit(cache=True)
def _jacobi_batch(a, v, want_vectors, tol, max_sweeps):
    """In-place cyclic Jacobi on a stack of Hermitian matrices.

    On return the diagonal of each a[k] holds its eigenvalues and, when
    requested, the columns of v[k] the eigenvectors.
    """
    nb, n, _ = a.shape
    for k in range(nb):
        scale = 0.0
        for i in range(n):
            for j in range(n):
                scale += a[k, i, j].real ** 2 + a[k, i, j].imag ** 2
        scale = max(1.0, np.sqrt(scale))
        for _ in range(max_sweeps):
            off = 0.0
            for i in range(n):
                for j in range(n):
                    if i != j:
                        off += a[k, i, j].real ** 2 + a[k, i, j].imag ** 2
            if np.sqrt(off) <= tol * scale:
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[k, p, q]
                    r = abs(apq)
                    # already zero at working precision
                    if r <= 1e-30 * scale:
                        continue
                    phase = apq / r
                    zeta = (a[k, q, q].real - a[k, p, p].real) / (2.0 * r)
                    sign = 1.0 if zeta >= 0.0 else -1.0
                    t = -sign / (abs(zeta) + np.sqrt(1.0 + zeta * zeta))
                    c = 1.0 / np.sqrt(1.0 + t * t)
                    s = t * c
                    # rotation on (p, q): [[c, -s], [conj(phase) s, conj(phase) c]]
                    u_qp = np.conj(phase) * s
                    u_qq = np.conj(phase) * c
                    for i in range(n):
                        aip = a[k, i, p]
                        aiq = a[k, i, q]
                        a[k, i, p] = aip * c + aiq * u_qp
                        a[k, i, q] = -aip * s + aiq * u_qq
                    for j in range(n):
                        apj = a[k, p, j]
                        aqj = a[k, q, j]
                        a[k, p, j] = apj * c + aqj * np.conj(u_qp)
                        a[k, q, j] = -apj * s + aqj * np.conj(u_qq)
                    a[k, p, q] = 0.0
                    a[k, q, p] = 0.0
                    a[k, p, p] = a[k, p, p].real
                    a[k, q, q] = a[k, q, q].real
                    if want_vectors:
                        for i in range(n):
                            vip = v[k, i, p]
                            viq = v[k, i, q]
                            v[k, i, p] = vip * c + viq * u_qp
                            v[k, i, q] = -vip * s + viq * u_qq


def jacobi_eigh(m, vectors=True, check=True):
    """Eigen-decompose Hermitian matrices by cyclic complex Jacobi rotations.

    Returns eigenvalues sorted in decreasing order and, when ``vectors`` is
    true, the matching eigenvectors as columns.
    """
    m = np.asarray(m, dtype=complex)
    _check_square(m)
    if check and not is_hermitian(m):
        raise ContractError("matrix is not Hermitian within tolerance")
    batch_shape = m.shape[:-2]
    n = m.shape[-1]
    a = np.ascontiguousarray((0.5 * (m + dagger(m))).reshape(-1, n, n))
    v = np.broadcast_to(np.eye(n, dtype=complex), a.shape).copy()
    _jacobi_batch(a, v, vectors, TOL.jacobi_offdiag, TOL.jacobi_max_sweeps)

    w = np.real(np.diagonal(a, axis1=-2, axis2=-1))
    order = np.argsort(-w, axis=-1, kind="stable")
    w = np.take_along_axis(w, order, axis=-1).reshape(batch_shape + (n,))
    if not vectors:
        return w
    v = np.take_along_axis(v, order[:, None, :], axis=-1).reshape(batch_shape + (n, n))
    return w, v


def hermitian_eigenvalues(m):
    """Real eigenvalues of a Hermitian matrix (or stack), largest first."""
    return jacobi_eigh(m, vectors=False)


def kron(a, b):
    """Kronecker product over the trailing two axes, broadcasting the rest."""
    a = np.asarray(a)
    b = np.asarray(b)
    ra, ca = a.shape[-2:]
    rb, cb = b.shape[-2:]
    out = a[..., :, None, :, None] * b[..., None, :, None, :]
    return out.reshape(out.shape[:-4] + (ra * rb, ca * cb))


def partial_trace(m, keep):
    """Reduced state of one qubit of a two-qubit matrix.

    ``keep=1`` returns tr_2(m), the first-qubit marginal; ``keep=2`` returns
    tr_1(m).
    """
    m = np.asarray(m)
    _check_square(m, (4,))
    t = m.reshape(m.shape[:-2] + (2, 2, 2, 2))
    if keep == 1:
        return np.einsum("...ijkj->...ik", t)
    if keep == 2:
        return np.einsum("...ijik->...jk", t)
    raise ContractError(f"subsystem must be 1 or 2, got {keep!r}")


def partial_transpose_first(m):
    """Transpose with respect to the first qubit: (m^T1)[a b, c d] = m[c b, a d]."""
    m = np.asarray(m)
    _check_square(m, (4,))
    t = m.reshape(m.shape[:-2] + (2, 2, 2, 2))
    return np.swapaxes(t, -4, -2).reshape(m.shape)


def sqrt_from_eigh(w, v):
    """Rebuild sqrt(m) from an eigendecomposition, clamping tiny negatives."""
    if np.any(w < -TOL.psd_clamp):
        raise ContractError(f"matrix is not PSD (min eigenvalue {np.min(w):.3e})")
    root = np.sqrt(np.clip(w, 0.0, None))
    return (v * root[..., None, :]) @ dagger(v)


def hermitian_sqrt(m):
    """Principal square root of a Hermitian positive semidefinite matrix."""
    w, v = jacobi_eigh(m)
    return sqrt_from_eigh(w, v)


def singular_values(m):
    """Singular values, largest first, from the Hermitian dilation [[0, m], [m^dagger, 0]].

    The dilation's spectrum is {+s_i, -s_i}; taking the top half avoids the
    square roots of a Gram matrix, so small singular values keep absolute
    accuracy.
    """
    m = np.asarray(m, dtype=complex)
    _check_square(m)
    n = m.shape[-1]
    big = np.zeros(m.shape[:-2] + (2 * n, 2 * n), dtype=complex)
    big[..., :n, n:] = m
    big[..., n:, :n] = dagger(m)
    w = jacobi_eigh(big, vectors=False, check=False)
    return np.clip(w[..., :n], 0.0, None)
