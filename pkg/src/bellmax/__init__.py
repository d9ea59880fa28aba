"""Maximal violation of the CHSH and three-qubit Klyshko inequalities.

Bell operators and their identities, see-saw maximization, and the
factorization of maximizers into local unitaries on the Bell/GHZ state.
"""
from .bell_ops import (
    ChshSettings,
    KlyshkoSettings,
    chsh_operator,
    chsh_prime_operator,
    ghz_klyshko_settings,
    klyshko_operator,
    standard_chsh_settings,
)
from .canonical import (
    CanonicalDecomposition,
    PreconditionError,
    amplitude_balance_residual,
    canonicalize,
    canonicalize_three_qubit,
    canonicalize_two_qubit,
    pauli_frame,
)
from .lu_invariants import TargetClass, certify_target_class, entanglement_entropy, schmidt, three_tangle
from .maximizer import MaximizerResult, best_settings_step, best_state, correlation_tensor, seesaw_maximize, w_max_klyshko
from .spin import SpinObservable, cross_observable, inner, observable_from_vector, verify_triad
from .tensor_core import bell_state, eig_hermitian, ghz_state, kron, operator_norm, svd, w_state

__version__ = "0.1.0"
