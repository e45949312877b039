"""Synthesis of explicit time-optimal control protocols, simulation of
arbitrary protocols, verification against targets, and the majorization-flow
necessity check on protocol prefixes.

A protocol alternates instantaneous local unitary pairs with periods of free
evolution under a fixed canonical drift: opening locals, then for each segment
a local pair followed by a drift of the stated duration, then closing locals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .canonical import (
    _lambda_perm_for_move,
    _local_gate_of_lambda_perm,
    _shift_factor,
    alpha_to_lambda,
    interaction_content,
    is_s_ordered,
    kak_decompose,
    s_order,
)
from .cost import feasible, interaction_cost
from .errors import InfeasibleError, SynthesisResidualError
from .linalg import LocalUnitaryPair, drift_exponential, kron_factor
from .majorization import birkhoff_express


@dataclass(frozen=True)
class Segment:
    """One protocol step: apply ``local``, then drift for ``duration``."""

    local: LocalUnitaryPair
    duration: float


@dataclass(frozen=True)
class Protocol:
    """An explicit control sequence realizing a gate from a fixed drift.

    ``hamiltonian_alpha`` is the s-ordered generator of every drift segment;
    synthesized time-optimal protocols carry at most three segments.
    """

    opening: LocalUnitaryPair
    segments: tuple[Segment, ...]
    closing: LocalUnitaryPair
    hamiltonian_alpha: np.ndarray
    global_phase: complex = 1.0 + 0j

    @property
    def total_time(self) -> float:
        return float(sum(seg.duration for seg in self.segments))


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking a protocol against a target gate."""

    max_abs_error_up_to_phase: float
    content_error: float
    total_time: float
    passed: bool


def simulate(p: Protocol) -> np.ndarray:
    """Exact matrix of the gate a protocol performs."""
    lam = alpha_to_lambda(p.hamiltonian_alpha)
    u = p.opening.matrix()
    for seg in p.segments:
        u = drift_exponential(lam, seg.duration) @ seg.local.matrix() @ u
    return p.global_phase * (p.closing.matrix() @ u)


def synthesize(target: np.ndarray, alpha: np.ndarray) -> Protocol:
    """Time-optimal protocol realizing ``target`` from the drift ``alpha``.

    Pipeline: canonical decomposition of the target picks out its content
    ``beta``; the two-branch cost optimization fixes the total time and the
    shifted content actually simulated; a Birkhoff certificate splits the
    content's eigenvalue vector into at most three permuted copies of
    ``alpha``'s, each permutation realized by a local conjugation; adjacent
    locals are merged and the decomposition's locals wrap the whole sequence.

    Raises:
        NonUnitaryError: if ``target`` is not unitary.
        ValueError: if ``alpha`` is not s-ordered.
        InfeasibleError: if ``alpha`` is local-only and the target is not.
        SynthesisResidualError: if the result fails its own verification at
            1e-7, which indicates an internal inconsistency.
    """
    alpha = np.asarray(alpha, dtype=float)
    if not is_s_ordered(alpha):
        raise ValueError("drift coefficient vector must be s-ordered")
    kak = kak_decompose(target)
    report = interaction_cost(kak.alpha, alpha)
    if report.infeasible:
        raise InfeasibleError("local-only drift cannot realize a non-local target")

    t_total = report.cost
    pre = kak.pre_local.matrix()
    post = kak.post_local.matrix()

    if t_total <= tol.DURATION_FLOOR:
        protocol = Protocol(
            opening=kak.pre_local,
            segments=(),
            closing=kak.post_local,
            hamiltonian_alpha=alpha,
            global_phase=kak.global_phase,
        )
        return _verified(protocol, target)

    # Shift branch: E(beta) = E(beta + (pi/2) n) @ shift_factor(-n).
    branch = np.asarray(report.branch, dtype=int)
    shifted = kak.alpha + (np.pi / 2) * branch
    shift_local = _shift_factor(-branch)

    # Reorder the shifted content to its s-ordered form by a local conjugation.
    ordered, move = s_order(shifted)
    conj = _local_gate_of_lambda_perm(_lambda_perm_for_move(move))

    lam = alpha_to_lambda(alpha)
    mu = alpha_to_lambda(ordered)
    weighting = birkhoff_express(mu, lam, t_total)
    terms = [(perm, w * t_total) for perm, w in weighting.terms if w * t_total >= tol.DURATION_FLOOR]
    if not terms:
        perm, w = max(weighting.terms, key=lambda item: item[1])
        terms = [(perm, w * t_total)]
    conjugators = [_local_gate_of_lambda_perm(perm) for perm, _ in terms]
    durations = [t for _, t in terms]

    # target = post conj^dag [prod_i L_i E(t_i) L_i^dag] conj shift pre phase;
    # regroup so each drift is preceded by one merged local.
    opening = kron_factor(conjugators[0].conj().T @ conj @ shift_local @ pre)
    segments = [Segment(LocalUnitaryPair.identity(), durations[0])]
    for i in range(1, len(terms)):
        merged = kron_factor(conjugators[i].conj().T @ conjugators[i - 1])
        segments.append(Segment(merged, durations[i]))
    closing = kron_factor(post @ conj.conj().T @ conjugators[-1])

    protocol = Protocol(
        opening=opening,
        segments=tuple(segments),
        closing=closing,
        hamiltonian_alpha=alpha,
        global_phase=kak.global_phase,
    )
    return _verified(protocol, target)


def _verified(protocol: Protocol, target: np.ndarray) -> Protocol:
    report = verify(protocol, target, 1e-7)
    if not report.passed:
        raise SynthesisResidualError(
            f"synthesized protocol misses target by {report.max_abs_error_up_to_phase:.3g}"
        )
    return protocol


def phase_free_distance(u: np.ndarray, v: np.ndarray) -> float:
    """max-abs distance between two operators minimized over a global phase.

    The minimizing phase is the unit-normalized trace overlap.
    """
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    overlap = np.trace(v.conj().T @ u)
    phase = overlap / abs(overlap) if abs(overlap) > 1e-300 else 1.0
    return float(np.max(np.abs(u - phase * v)))


def verify(p: Protocol, target: np.ndarray, tolerance: float = 1e-7) -> VerificationReport:
    """Checks a protocol against a target up to global phase.

    Also compares the interaction contents of the simulated and target gates;
    a protocol can only be correct if these agree.
    """
    sim = simulate(p)
    error = phase_free_distance(sim, target)
    content_error = float(
        np.linalg.norm(interaction_content(sim) - interaction_content(target))
    )
    return VerificationReport(
        max_abs_error_up_to_phase=error,
        content_error=content_error,
        total_time=p.total_time,
        passed=bool(error <= tolerance),
    )


def trajectory_check(
    p: Protocol, samples_per_segment: int = 4, atol: float = 1e-7
) -> bool:
    """Necessity check: along the whole protocol, the accumulated content must
    stay reachable by the drift in the elapsed time.

    Every prefix (after each segment, plus ``samples_per_segment`` interior
    times inside each drift) has its interaction content tested for
    feasibility at the elapsed time.  Early prefixes sit exactly on the
    feasibility boundary, so the comparison carries a small slack ``atol``.
    """
    lam = alpha_to_lambda(p.hamiltonian_alpha)
    u = p.opening.matrix()
    elapsed = 0.0
    fractions = [(k + 1) / (samples_per_segment + 1) for k in range(samples_per_segment)]
    for seg in p.segments:
        u = seg.local.matrix() @ u
        for f in fractions + [1.0]:
            partial = drift_exponential(lam, f * seg.duration) @ u
            gamma = interaction_content(partial)
            ok, _ = feasible(gamma, p.hamiltonian_alpha, elapsed + f * seg.duration, atol=atol)
            if not ok:
                return False
        u = drift_exponential(lam, seg.duration) @ u
        elapsed += seg.duration
    return True
