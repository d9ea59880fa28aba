"""``bellmax`` command line.

Every subcommand writes one JSON document to stdout; logs go to stderr.
Exit codes: 0 success, 1 identity check failed, 2 malformed input,
3 input rejected as not maximally violating.
"""
import argparse
import logging
import sys

import numpy as np

from . import bell_ops
from .canonical import PreconditionError, canonicalize
from .documents import (
    DocumentError,
    complex_pairs,
    dumps,
    load_json,
    parse_settings,
    parse_state,
    settings_document,
    state_document,
)
from .lu_invariants import certify_target_class, entanglement_entropy, schmidt, three_tangle
from .maximizer import random_settings, seesaw_maximize
from .tensor_core import operator_norm

log = logging.getLogger("bellmax")

IDENTITY_TOL = 1e-10
FIDELITY_TOL = 1e-8

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_PRECONDITION = 3


def _identity_checks(n_qubits):
    if n_qubits == 2:
        return {
            "chsh_square": bell_ops.chsh_square_residual,
            "cross_norm": bell_ops.cross_norm_residual,
        }
    return {
        "klyshko_square": bell_ops.klyshko_square_residual,
        "cross_norm": bell_ops.cross_norm_residual,
        "klyshko_decomposition": bell_ops.klyshko_decomposition_residual,
    }


def identities_report(settings_list, n_qubits):
    checks = _identity_checks(n_qubits)
    worst = dict.fromkeys(checks, 0.0)
    norms, orth = [], []
    for s in settings_list:
        for name, fn in checks.items():
            worst[name] = max(worst[name], fn(s))
        norms.append(operator_norm(bell_ops.operator_for(s)))
        orth.append(bell_ops.orthogonality_residual(s))
    bound = bell_ops.CHSH_QUANTUM_BOUND if n_qubits == 2 else bell_ops.KLYSHKO_QUANTUM_BOUND
    report = {
        "qubits": n_qubits,
        "samples": len(settings_list),
        "tolerance": IDENTITY_TOL,
        "identities": {k: {"max_residual": v, "pass": v <= IDENTITY_TOL} for k, v in worst.items()},
        "operator_norm": {"max": max(norms), "quantum_bound": bound, "max_exceeds_bound": max(norms) > bound + 1e-9},
        "orthogonality_residual": {"min": min(orth), "max": max(orth)},
    }
    report["all_pass"] = all(v["pass"] for v in report["identities"].values()) and not report["operator_norm"]["max_exceeds_bound"]
    return report


def cmd_identities(args):
    if args.settings:
        s = parse_settings(load_json(args.settings))
        if args.qubits is not None and args.qubits != s.n_qubits:
            raise DocumentError(f"--qubits {args.qubits} does not match the settings file ({s.n_qubits})")
        n, settings_list = s.n_qubits, [s]
    else:
        n = args.qubits or 2
        rng = np.random.default_rng(args.seed)
        settings_list = [random_settings(n, rng) for _ in range(args.random)]
    report = identities_report(settings_list, n)
    return report, EXIT_OK if report["all_pass"] else EXIT_FAILED


def cmd_maximize(args):
    state = None
    if args.state:
        state = parse_state(load_json(args.state))
        if len(state) != 2 ** args.qubits:
            raise DocumentError(f"state file has {len(state)} amplitudes, --qubits {args.qubits} needs {2 ** args.qubits}")
    r = seesaw_maximize(args.qubits, restarts=args.restarts, tol=args.tol, max_iters=args.max_iters, seed=args.seed, state=state)
    doc = {
        "qubits": args.qubits,
        "value": r.value,
        "frozen_state": state is not None,
        "seed": args.seed,
        "restarts_used": r.restarts_used,
        "best_restart": r.restart_index,
        "iterations": r.iterations,
        "converged": r.converged,
        "orthogonality_residual": r.orthogonality_residual,
        "settings": settings_document(r.settings),
        "state": state_document(r.state),
    }
    return doc, EXIT_OK


def cmd_canonicalize(args):
    psi = parse_state(load_json(args.state))
    s = parse_settings(load_json(args.settings))
    if len(psi) != 2 ** s.n_qubits:
        raise DocumentError("state and settings disagree on the number of qubits")
    try:
        dec = canonicalize(psi, s)
    except PreconditionError as exc:
        log.error("rejected: %s", exc)
        return {"qubits": s.n_qubits, "rejected": str(exc)}, EXIT_PRECONDITION
    doc = {
        "qubits": s.n_qubits,
        "target": dec.target,
        "fidelity": dec.fidelity,
        "phases": dec.phases,
        "unitaries": [complex_pairs(u) for u in dec.local_unitaries],
        "checks": dec.checks,
    }
    if dec.fidelity < 1 - FIDELITY_TOL:
        log.error("fidelity %.3e below 1 - %g", dec.fidelity, FIDELITY_TOL)
        return doc, EXIT_PRECONDITION
    return doc, EXIT_OK


def cmd_invariants(args):
    psi = parse_state(load_json(args.state))
    doc = {"qubits": 2 if len(psi) == 4 else 3}
    if len(psi) == 4:
        doc["schmidt"] = list(map(float, schmidt(psi).coefficients))
        doc["entropy"] = entanglement_entropy(psi)
    else:
        doc["three_tangle"] = three_tangle(psi)
    doc["class"] = certify_target_class(psi).value
    return doc, EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="bellmax", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    ids = sub.add_parser("identities", help="check the Bell-operator identities")
    src = ids.add_mutually_exclusive_group(required=True)
    src.add_argument("--settings", metavar="FILE")
    src.add_argument("--random", type=int, metavar="N")
    ids.add_argument("--qubits", type=int, choices=(2, 3))
    ids.add_argument("--seed", type=int, default=0)
    ids.set_defaults(func=cmd_identities)

    mx = sub.add_parser("maximize", help="see-saw maximization of <B>")
    mx.add_argument("--qubits", type=int, choices=(2, 3), default=2)
    mx.add_argument("--restarts", type=int, default=50)
    mx.add_argument("--tol", type=float, default=1e-12)
    mx.add_argument("--max-iters", type=int, default=500)
    mx.add_argument("--seed", type=int, default=0)
    mx.add_argument("--state", metavar="FILE", help="freeze the state and optimize settings only")
    mx.set_defaults(func=cmd_maximize)

    cn = sub.add_parser("canonicalize", help="factor a maximizer into local unitaries")
    cn.add_argument("--state", metavar="FILE", required=True)
    cn.add_argument("--settings", metavar="FILE", required=True)
    cn.set_defaults(func=cmd_canonicalize)

    inv = sub.add_parser("invariants", help="local-unitary invariants of a state")
    inv.add_argument("--state", metavar="FILE", required=True)
    inv.set_defaults(func=cmd_invariants)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    if getattr(args, "random", None) is not None and args.random < 1:
        log.error("--random must be positive")
        return EXIT_INPUT
    if getattr(args, "restarts", 1) < 1 or getattr(args, "tol", 1.0) <= 0:
        log.error("--restarts must be >= 1 and --tol > 0")
        return EXIT_INPUT
    try:
        doc, code = args.func(args)
    except DocumentError as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    sys.stdout.write(dumps(doc) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
