"""CHSH and Klyshko Bell operators and the algebraic identities they obey.

Each Bell expression is stored as a list of ``(sign, choice)`` terms where
``choice[k]`` picks the unprimed (0) or primed (1) observable on site ``k``.
The see-saw in :mod:`bellmax.maximizer` reuses these term lists.
"""
from dataclasses import dataclass

import numpy as np

from .spin import SpinObservable, cross_observable, inner, observable_from_vector
from .tensor_core import I2, SQRT2, kron, kron_all, operator_norm

# AB + AB' + A'B - A'B'
CHSH_TERMS = ((1, (0, 0)), (1, (0, 1)), (1, (1, 0)), (-1, (1, 1)))
# A'B' + A'B + AB' - AB
CHSH_PRIME_TERMS = ((1, (1, 1)), (1, (1, 0)), (1, (0, 1)), (-1, (0, 0)))
# A'B'C + A'BC' + AB'C' - ABC
KLYSHKO_TERMS = ((1, (1, 1, 0)), (1, (1, 0, 1)), (1, (0, 1, 1)), (-1, (0, 0, 0)))

CHSH_CLASSICAL_BOUND = 2.0
CHSH_QUANTUM_BOUND = 2 * SQRT2
KLYSHKO_CLASSICAL_BOUND = 2.0
KLYSHKO_QUANTUM_BOUND = 4.0


@dataclass(frozen=True, eq=False)
class ChshSettings:
    a: SpinObservable
    a_prime: SpinObservable
    b: SpinObservable
    b_prime: SpinObservable

    n_qubits = 2
    terms = CHSH_TERMS
    quantum_bound = CHSH_QUANTUM_BOUND

    @property
    def sites(self):
        return ((self.a, self.a_prime), (self.b, self.b_prime))

    def vectors(self):
        return [o.direction for pair in self.sites for o in pair]

    @classmethod
    def from_vectors(cls, *vectors, tol=1e-12):
        return cls(*(observable_from_vector(v, tol=tol) for v in vectors))


@dataclass(frozen=True, eq=False)
class KlyshkoSettings:
    a: SpinObservable
    a_prime: SpinObservable
    b: SpinObservable
    b_prime: SpinObservable
    c: SpinObservable
    c_prime: SpinObservable

    n_qubits = 3
    terms = KLYSHKO_TERMS
    quantum_bound = KLYSHKO_QUANTUM_BOUND

    @property
    def sites(self):
        return ((self.a, self.a_prime), (self.b, self.b_prime), (self.c, self.c_prime))

    def vectors(self):
        return [o.direction for pair in self.sites for o in pair]

    @classmethod
    def from_vectors(cls, *vectors, tol=1e-12):
        return cls(*(observable_from_vector(v, tol=tol) for v in vectors))

    @property
    def chsh_part(self):
        return ChshSettings(self.a, self.a_prime, self.b, self.b_prime)


def settings_class(n_qubits):
    try:
        return {2: ChshSettings, 3: KlyshkoSettings}[n_qubits]
    except KeyError:
        raise ValueError(f"n_qubits must be 2 or 3, got {n_qubits!r}") from None


def standard_chsh_settings():
    """``A = sigma_z, A' = sigma_x, B = (sigma_z +/- sigma_x)/sqrt2``: norm 2*sqrt2."""
    r = 1 / SQRT2
    return ChshSettings.from_vectors([0, 0, 1], [1, 0, 0], [r, 0, r], [-r, 0, r])


def ghz_klyshko_settings():
    """``A = sz sx sz, A' = sz sy sz, B = C = sigma_x, B' = C' = sigma_y``.

    These are maximal for the GHZ state ``(|000> + |111>)/sqrt2``.
    """
    return KlyshkoSettings.from_vectors([-1, 0, 0], [0, -1, 0], [1, 0, 0], [0, 1, 0], [1, 0, 0], [0, 1, 0])


def bell_operator(terms, sites):
    dim = 2 ** len(sites)
    op = np.zeros((dim, dim), dtype=complex)
    for sign, choice in terms:
        op += sign * kron_all(*(pair[c].matrix for pair, c in zip(sites, choice)))
    return op


def chsh_operator(s):
    return bell_operator(CHSH_TERMS, s.sites)


def chsh_prime_operator(s):
    return bell_operator(CHSH_PRIME_TERMS, s.sites)


def klyshko_operator(s):
    return bell_operator(KLYSHKO_TERMS, s.sites)


def operator_for(s):
    """The Bell operator matching the settings type."""
    return bell_operator(s.terms, s.sites)


def _cross_matrices(s):
    return [cross_observable(x, xp).matrix for x, xp in s.sites]


def chsh_square_residual(s):
    """``|| B2^2 - 4 - 4 (A x A')(B x B') ||``, zero for every setting."""
    ca, cb = _cross_matrices(s)
    b2 = chsh_operator(s)
    return operator_norm(b2 @ b2 - 4 * np.eye(4) - 4 * kron(ca, cb))


def klyshko_square_residual(s):
    """``|| B3^2 - 4 - 4 [A''B'' + A''C'' + B''C''] ||`` with ``X'' = X x X'``."""
    ca, cb, cc = _cross_matrices(s)
    expected = 4 * np.eye(8) + 4 * (kron_all(ca, cb, I2) + kron_all(ca, I2, cc) + kron_all(I2, cb, cc))
    b3 = klyshko_operator(s)
    return operator_norm(b3 @ b3 - expected)


def klyshko_split(s):
    """``B3`` rebuilt from the two-qubit operators on sites A, B.

    Collecting the C and C' terms of ``A'B'C + A'BC' + AB'C' - ABC`` gives
    ``B2' (x) (C + C')/2 - B2 (x) (C - C')/2``. The arrangement
    ``B2 (x) (C + C')/2 + B2' (x) (C - C')/2`` is instead the Klyshko
    operator with every primed/unprimed pair swapped.
    """
    ab = s.chsh_part
    c, cp = s.c.matrix, s.c_prime.matrix
    return kron(chsh_prime_operator(ab), 0.5 * (c + cp)) - kron(chsh_operator(ab), 0.5 * (c - cp))


def klyshko_decomposition_residual(s):
    return operator_norm(klyshko_operator(s) - klyshko_split(s))


def cross_norm_residual(s):
    """Largest ``| ||A x A'||^2 - (1 - (A, A')^2) |`` over sites, in operator norm."""
    return max(
        abs(operator_norm(cross_observable(x, xp).matrix) ** 2 - (1.0 - inner(x, xp) ** 2))
        for x, xp in s.sites
    )


def orthogonality_residual(s):
    return max(abs(inner(x, xp)) for x, xp in s.sites)
