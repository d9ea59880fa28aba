"""Qubit spin observables ``a . sigma`` and the Pauli-triad algebra."""
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .tensor_core import I2, PAULIS, operator_norm

UNIT_TOL = 1e-12


def pauli_matrix(vector):
    """``x*sigma_x + y*sigma_y + z*sigma_z`` for any real 3-vector."""
    return np.tensordot(np.asarray(vector, dtype=float), PAULIS, axes=1)


def vector_of(matrix):
    """Bloch direction of a traceless Hermitian 2x2 matrix, ``tr(M sigma_i) / 2``."""
    m = np.asarray(matrix, dtype=complex)
    return 0.5 * np.einsum("ij,kji->k", m, PAULIS).real


@dataclass(frozen=True, eq=False)
class SpinObservable:
    """A +/-1 valued qubit observable with unit direction vector."""

    direction: np.ndarray
    matrix: np.ndarray

    def __neg__(self):
        return observable_from_vector(-self.direction)


def observable_from_vector(vector, tol=UNIT_TOL):
    v = np.asarray(vector, dtype=float).reshape(-1)
    if v.shape != (3,) or not np.all(np.isfinite(v)):
        raise ValueError(f"direction must be a finite 3-vector, got {vector!r}")
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > tol:
        raise ValueError(f"direction is not a unit vector (norm {norm!r})")
    v = v.copy()
    v.setflags(write=False)
    m = pauli_matrix(v)
    m.setflags(write=False)
    return SpinObservable(v, m)


def observable_from_matrix(matrix, tol=UNIT_TOL):
    return observable_from_vector(vector_of(matrix), tol=tol)


SX = observable_from_vector([1.0, 0.0, 0.0])
SY = observable_from_vector([0.0, 1.0, 0.0])
SZ = observable_from_vector([0.0, 0.0, 1.0])


def inner(a, a_prime):
    return float(np.dot(a.direction, a_prime.direction))


class CrossObservable(NamedTuple):
    matrix: np.ndarray
    direction: np.ndarray


def cross_observable(a, a_prime):
    """``(a x a') . sigma``; its direction has norm ``sqrt(1 - (a, a')^2)``."""
    d = np.cross(a.direction, a_prime.direction)
    return CrossObservable(pauli_matrix(d), d)


class TriadResiduals(NamedTuple):
    """Operator-norm residuals of the four Pauli-triad product rules."""

    products_first: float  # A A' = -A' A = i A''
    products_second: float  # A' A'' = -A'' A' = i A
    products_third: float  # A'' A = -A A'' = i A'
    squares: float  # A^2 = A'^2 = A''^2 = 1

    def max(self):
        return max(self)


def verify_triad(a, a_prime, a_dprime):
    """Check that ``(A, A', A'')`` multiply like ``(sigma_x, sigma_y, sigma_z)``.

    ``a`` and ``a_prime`` may be :class:`SpinObservable` or plain 2x2
    matrices; ``a_dprime`` is any 2x2 Hermitian matrix, so a wrong third
    member shows up as nonzero residuals instead of an exception.
    """
    x, y, z = (np.asarray(getattr(o, "matrix", o), dtype=complex) for o in (a, a_prime, a_dprime))

    def cyclic(p, q, r):
        return max(operator_norm(p @ q - 1j * r), operator_norm(q @ p + 1j * r))

    return TriadResiduals(
        cyclic(x, y, z),
        cyclic(y, z, x),
        cyclic(z, x, y),
        max(operator_norm(m @ m - I2) for m in (x, y, z)),
    )


def random_unit_vector(rng):
    v = rng.standard_normal(3)
    return v / np.linalg.norm(v)


def random_orthogonal_pair(rng, min_cross=1e-8):
    """Two orthonormal directions via Gram-Schmidt, resampling near-parallel draws."""
    while True:
        a = random_unit_vector(rng)
        b = random_unit_vector(rng)
        if np.linalg.norm(np.cross(a, b)) < min_cross:
            continue
        b = b - np.dot(a, b) * a
        return a, b / np.linalg.norm(b)
