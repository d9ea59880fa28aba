"""See-saw maximization of the CHSH and Klyshko expressions.

The expectation of a Bell operator is linear in every direction vector once
the state and the other vectors are fixed, so each vector has a closed-form
best response: the normalized gradient, contracted from the correlation
tensor. The state has one too: the top eigenvector of the operator.
Alternating the two never decreases the objective.
"""
import logging
import string
from dataclasses import dataclass, field

import numpy as np

from .bell_ops import operator_for, orthogonality_residual, settings_class
from .spin import random_unit_vector
from .tensor_core import PAULIS, as_state, eig_hermitian, expectation, n_qubits_of, w_state

log = logging.getLogger(__name__)

DEGENERATE_GRADIENT = 1e-12


def correlation_tensor(psi):
    """``T[i, j(, k)] = <psi| sigma_i (x) sigma_j (x) sigma_k |psi>`` over x, y, z."""
    psi = np.asarray(psi, dtype=complex)
    n = n_qubits_of(psi)
    tensor = psi.reshape((2,) * n)
    ket_idx = string.ascii_lowercase[:n]
    bra_idx = string.ascii_lowercase[n:2 * n]
    out_idx = string.ascii_lowercase[2 * n:3 * n]
    ops = [f"{o}{b}{k}" for o, b, k in zip(out_idx, bra_idx, ket_idx)]
    subscripts = ",".join([bra_idx, *ops, ket_idx]) + "->" + out_idx
    return np.einsum(subscripts, tensor.conj(), *([PAULIS] * n), tensor, optimize=True).real


def best_state(bell_op):
    """Largest eigenvalue of a Bell operator and a unit eigenvector for it."""
    bell_op = np.asarray(bell_op, dtype=complex)
    if bell_op.shape not in ((4, 4), (8, 8)):
        raise ValueError(f"Bell operator must be 4x4 or 8x8, got {bell_op.shape}")
    vals, vecs = eig_hermitian(bell_op)
    return float(vals[-1]), vecs[:, -1]


def _contract_except(tensor, vectors, site):
    out = tensor
    for k in reversed(range(site + 1, len(vectors))):
        out = out @ vectors[k]
    for k in range(site):
        out = (vectors[k] @ out.reshape(3, -1)).reshape(out.shape[1:])
    return out


def _contract_all(tensor, vectors):
    out = tensor
    for v in reversed(vectors):
        out = out @ v
    return float(out)


def _correlator_value(tensor, terms, vecs):
    return sum(sign * _contract_all(tensor, [vecs[k][c] for k, c in enumerate(choice)]) for sign, choice in terms)


def _sweep(tensor, terms, vecs):
    # in-place best responses; vecs[site][variant] is a unit 3-vector
    for site in range(len(vecs)):
        for variant in (0, 1):
            grad = np.zeros(3)
            for sign, choice in terms:
                if choice[site] == variant:
                    grad += sign * _contract_except(tensor, [vecs[k][c] for k, c in enumerate(choice)], site)
            norm = np.linalg.norm(grad)
            if norm >= DEGENERATE_GRADIENT:
                vecs[site][variant] = grad / norm


def _raw_vectors(settings):
    return [[x.direction.copy(), xp.direction.copy()] for x, xp in settings.sites]


def _from_raw(cls, vecs):
    # renormalize so the 1e-12 unit check cannot trip on accumulated rounding
    return cls.from_vectors(*(v / np.linalg.norm(v) for pair in vecs for v in pair))


def best_settings_step(psi, settings, tensor=None):
    """One sweep of best responses over every direction vector, in site order.

    Each vector is replaced by the normalized gradient of the expectation
    with respect to it, using the vectors already updated in this sweep. A
    gradient shorter than 1e-12 leaves that vector unchanged.
    """
    if tensor is None:
        tensor = correlation_tensor(psi)
    vecs = _raw_vectors(settings)
    _sweep(tensor, settings.terms, vecs)
    return _from_raw(type(settings), vecs)


def random_settings(n_qubits, rng):
    return settings_class(n_qubits).from_vectors(*(random_unit_vector(rng) for _ in range(2 * n_qubits)))


@dataclass
class MaximizerResult:
    value: float
    state: np.ndarray
    settings: object
    iterations: int
    restarts_used: int
    orthogonality_residual: float
    converged: bool = True
    restart_index: int = 0
    history: list = field(default_factory=list, repr=False)


def _seesaw_once(n_qubits, rng, tol, max_iters, frozen_state=None):
    settings = random_settings(n_qubits, rng)
    cls, terms = type(settings), settings.terms
    vecs = _raw_vectors(settings)
    if frozen_state is None:
        value, psi = best_state(operator_for(settings))
    else:
        psi = frozen_state
        tensor = correlation_tensor(psi)
        value = _correlator_value(tensor, terms, vecs)
    history = [value]
    converged = False
    iterations = max_iters
    for it in range(1, max_iters + 1):
        if frozen_state is None:
            tensor = correlation_tensor(psi)
        _sweep(tensor, terms, vecs)
        new_value = _correlator_value(tensor, terms, vecs)
        history.append(new_value)
        if frozen_state is None:
            new_value, psi = best_state(operator_for(_from_raw(cls, vecs)))
            history.append(new_value)
        improvement = new_value - value
        value = new_value
        if improvement < tol:
            converged = True
            iterations = it
            break
    settings = _from_raw(cls, vecs)
    # report the exact expectation of the returned pair
    value = expectation(psi, operator_for(settings))
    return value, psi, settings, iterations, converged, history


def seesaw_maximize(n_qubits=2, restarts=50, tol=1e-12, max_iters=500, seed=0, state=None):
    """Best see-saw value over independent random restarts.

    Restart ``k`` draws its initial directions from the ``k``-th child of
    ``numpy.random.SeedSequence(seed)``, so results depend only on the
    arguments. Passing ``state`` freezes the state and optimizes settings
    only. Ties between restarts go to the lower restart index.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if n_qubits not in (2, 3):
        raise ValueError(f"n_qubits must be 2 or 3, got {n_qubits!r}")
    if state is not None:
        state = as_state(state, tol=1e-9)
        if n_qubits_of(state) != n_qubits:
            raise ValueError("frozen state has the wrong number of qubits")
        state = state / np.linalg.norm(state)

    best = None
    for k, child in enumerate(np.random.SeedSequence(seed).spawn(restarts)):
        rng = np.random.default_rng(child)
        value, psi, settings, iterations, converged, history = _seesaw_once(
            n_qubits, rng, tol, max_iters, state
        )
        if best is None or value > best.value:
            best = MaximizerResult(
                value=value,
                state=psi,
                settings=settings,
                iterations=iterations,
                restarts_used=restarts,
                orthogonality_residual=orthogonality_residual(settings),
                converged=converged,
                restart_index=k,
                history=history,
            )
    log.info("best value %.15f from restart %d after %d iterations", best.value, best.restart_index, best.iterations)
    return best


def w_max_klyshko(restarts=200, seed=0, tol=1e-12, max_iters=500):
    """Largest Klyshko value the see-saw finds for the W state (settings only)."""
    return seesaw_maximize(3, restarts=restarts, tol=tol, max_iters=max_iters, seed=seed, state=w_state()).value
