"""Local-unitary invariants: Schmidt form, entanglement entropy, 3-tangle."""
import enum
from typing import NamedTuple

import numpy as np

from .tensor_core import as_state, n_qubits_of, svd

CLASS_TOL = 1e-6


class SchmidtForm(NamedTuple):
    coefficients: np.ndarray
    left: np.ndarray
    right: np.ndarray

    def reconstruct(self):
        return np.einsum("k,ik,jk->ij", self.coefficients, self.left, self.right).reshape(-1)


class TargetClass(enum.Enum):
    BELL = "BellClass"
    GHZ = "GhzClass"
    OTHER = "Other"


def _state_with(psi, n):
    psi = as_state(psi, tol=1e-9)
    if n_qubits_of(psi) != n:
        raise ValueError(f"expected a {n}-qubit state, got {n_qubits_of(psi)} qubits")
    return psi


def schmidt(psi):
    """Schmidt decomposition ``psi = sum_k s_k |u_k> (x) |v_k>`` of a two-qubit state.

    ``left`` holds the ``u_k`` as columns and ``right`` the ``v_k``.
    """
    psi = _state_with(psi, 2)
    u, s, v = svd(psi.reshape(2, 2))
    # psi_ij = sum_k s_k u_ik conj(v_jk)
    return SchmidtForm(s, u, v.conj())


def entanglement_entropy(psi):
    """Von Neumann entropy of either qubit, in bits."""
    p = schmidt(psi).coefficients ** 2
    p = p[p > 0]
    return float(max(0.0, -np.sum(p * np.log2(p))))


def three_tangle(psi):
    """Coffman-Kundu-Wootters 3-tangle, ``4 |Det|`` of Cayley's hyperdeterminant."""
    t = _state_with(psi, 3).reshape(2, 2, 2)
    d1 = (
        t[0, 0, 0] ** 2 * t[1, 1, 1] ** 2
        + t[0, 0, 1] ** 2 * t[1, 1, 0] ** 2
        + t[0, 1, 0] ** 2 * t[1, 0, 1] ** 2
        + t[1, 0, 0] ** 2 * t[0, 1, 1] ** 2
    )
    d2 = (
        t[0, 0, 0] * t[1, 1, 1] * t[0, 1, 1] * t[1, 0, 0]
        + t[0, 0, 0] * t[1, 1, 1] * t[1, 0, 1] * t[0, 1, 0]
        + t[0, 0, 0] * t[1, 1, 1] * t[1, 1, 0] * t[0, 0, 1]
        + t[0, 1, 1] * t[1, 0, 0] * t[1, 0, 1] * t[0, 1, 0]
        + t[0, 1, 1] * t[1, 0, 0] * t[1, 1, 0] * t[0, 0, 1]
        + t[1, 0, 1] * t[0, 1, 0] * t[1, 1, 0] * t[0, 0, 1]
    )
    d3 = t[0, 0, 0] * t[1, 1, 0] * t[1, 0, 1] * t[0, 1, 1] + t[1, 1, 1] * t[0, 0, 1] * t[0, 1, 0] * t[1, 0, 0]
    return float(4 * abs(d1 - 2 * d2 + 4 * d3))


def single_site_marginals(psi):
    psi = np.asarray(psi, dtype=complex)
    n = n_qubits_of(psi)
    t = psi.reshape((2,) * n)
    out = []
    for k in range(n):
        m = np.moveaxis(t, k, 0).reshape(2, -1)
        out.append(m @ m.conj().T)
    return out


def certify_target_class(psi):
    psi = as_state(psi, tol=1e-9)
    if n_qubits_of(psi) == 2:
        return TargetClass.BELL if entanglement_entropy(psi) >= 1 - CLASS_TOL else TargetClass.OTHER
    mixed = all(np.linalg.norm(rho - np.eye(2) / 2, 2) <= CLASS_TOL for rho in single_site_marginals(psi))
    if mixed and three_tangle(psi) >= 1 - CLASS_TOL:
        return TargetClass.GHZ
    return TargetClass.OTHER
