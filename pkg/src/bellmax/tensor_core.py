"""Dense complex linear algebra for one to three qubits.

Qubit 1 is always the most significant bit: ``|q1 q2 q3>`` has index
``4*q1 + 2*q2 + q3``.
"""
from functools import reduce

import numpy as np

HERMITIAN_TOL = 1e-10
JACOBI_TOL = 1e-13

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])

SQRT2 = np.sqrt(2.0)


def kron(a, b):
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def kron_all(*factors):
    return reduce(kron, factors)


def _check_hermitian(m):
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    if np.linalg.norm(m - m.conj().T, 2) > HERMITIAN_TOL:
        raise ValueError("matrix is not Hermitian")
    return m


def _eig_2x2(m):
    scale = np.max(np.abs(m))
    if scale == 0.0:
        return np.zeros(2), np.eye(2, dtype=complex)
    # work at unit scale so tiny or huge entries cannot under/overflow
    vals, vecs = _eig_2x2_unit(m / scale)
    return scale * vals, vecs


def _eig_2x2_unit(m):
    a, d = m[0, 0].real, m[1, 1].real
    h = m[0, 1]
    mean = 0.5 * (a + d)
    r = np.hypot(0.5 * (a - d), abs(h))
    if r == 0.0:
        return np.array([mean, mean]), np.eye(2, dtype=complex)
    top = mean + r
    # two candidate (unnormalized) top eigenvectors; take the better conditioned one
    v1 = np.array([h, top - a], dtype=complex)
    v2 = np.array([top - d, np.conj(h)], dtype=complex)
    v = v1 if np.linalg.norm(v1) >= np.linalg.norm(v2) else v2
    v = v / np.linalg.norm(v)
    w = np.array([-np.conj(v[1]), np.conj(v[0])])
    return np.array([mean - r, top]), np.column_stack([w, v])


def jacobi_eigh(m, tol=JACOBI_TOL, max_sweeps=100):
    """Cyclic complex Jacobi diagonalization of a Hermitian matrix.

    Each pivot ``(p, q)`` is made real by a diagonal phase and then zeroed
    by a plane rotation. Sweeps stop once the off-diagonal Frobenius norm
    drops below ``tol * max(1, ||m||_F)``.
    """
    a = _check_hermitian(m).copy()
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(1.0, np.linalg.norm(a))
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                h = a[p, q]
                if abs(h) < 1e-300:
                    continue
                phase = h / abs(h)
                theta = 0.5 * np.arctan2(2.0 * abs(h), a[p, p].real - a[q, q].real)
                c, s = np.cos(theta), np.sin(theta)
                w = np.eye(n, dtype=complex)
                w[p, p] = c
                w[q, p] = s * np.conj(phase)
                w[p, q] = -s
                w[q, q] = c * np.conj(phase)
                a = w.conj().T @ a @ w
                v = v @ w
    else:
        raise np.linalg.LinAlgError("Jacobi iteration did not converge")
    vals = np.diag(a).real
    order = np.argsort(vals, kind="stable")
    return vals[order], v[:, order]


def eig_hermitian(m, method="lapack"):
    """Eigen-decomposition of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues ascending and
    eigenvectors as orthonormal columns. 2x2 inputs use the closed form;
    larger ones go to LAPACK (``method="lapack"``) or to :func:`jacobi_eigh`.
    Eigenvectors of degenerate eigenvalues are any orthonormal basis of the
    eigenspace.
    """
    m = _check_hermitian(m)
    if m.shape == (2, 2):
        return _eig_2x2(m)
    if method == "jacobi":
        return jacobi_eigh(m)
    if method != "lapack":
        raise ValueError(f"unknown method {method!r}")
    vals, vecs = np.linalg.eigh(m)
    return vals, vecs


def svd(m):
    """Return ``(U, s, V)`` with ``m = U @ diag(s) @ V^dagger``, s descending."""
    u, s, vh = np.linalg.svd(np.asarray(m, dtype=complex))
    return u, s, vh.conj().T


def operator_norm(m):
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return float(np.linalg.norm(m, 2))


def n_qubits_of(psi):
    n = {4: 2, 8: 3}.get(len(psi))
    if n is None:
        raise ValueError(f"state must have 4 or 8 amplitudes, got {len(psi)}")
    return n


def as_state(amplitudes, tol=1e-12):
    """Validate a two- or three-qubit pure state and return it as a complex array."""
    psi = np.asarray(amplitudes, dtype=complex).reshape(-1)
    n_qubits_of(psi)
    if not np.all(np.isfinite(psi)):
        raise ValueError("state has non-finite amplitudes")
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > tol:
        raise ValueError(f"state is not normalized (norm {norm!r})")
    return psi


def expectation(psi, op):
    return float(np.vdot(psi, op @ psi).real)


def bell_state():
    psi = np.zeros(4, dtype=complex)
    psi[0] = psi[3] = 1 / SQRT2
    return psi


def ghz_state():
    psi = np.zeros(8, dtype=complex)
    psi[0] = psi[7] = 1 / SQRT2
    return psi


def w_state():
    # normalized with 1/sqrt(3) on each of |001>, |010>, |100>
    psi = np.zeros(8, dtype=complex)
    psi[[1, 2, 4]] = 1 / np.sqrt(3.0)
    return psi


def product_state(*bits):
    psi = np.zeros(2 ** len(bits), dtype=complex)
    psi[int("".join(str(b) for b in bits), 2)] = 1.0
    return psi


def random_unitary(rng, dim=2):
    """Haar-random unitary from the QR decomposition of a complex Ginibre matrix."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))
