"""Interaction cost of gates, feasibility of simulation at a given time,
closed-form costs for the named landmark gates, and the interaction-based
partial order on gates.

The cost of realizing a gate with content ``beta`` from a drift ``alpha``
under instantaneous local control is the smallest ``t`` such that a pi/2
shift of ``beta`` is s-majorized by ``alpha * t``; only the shifts
``(0,0,0)`` and ``(-1,0,0)`` can ever win, which the feasibility scan here
deliberately re-verifies over a much larger shift set.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .canonical import HALF_PI, QUARTER_PI, s_order
from .errors import BetaOutOfRangeError, UnknownGateError
from .majorization import min_time, s_majorizes

#: Fixed lexicographic scan order over integer shift vectors; a superset of
#: the two shifts the optimizer needs, acting as an independent oracle.
_SHIFT_SCAN = tuple(itertools.product(range(-2, 3), repeat=3))

_BRANCHES = ((0, 0, 0), (-1, 0, 0))


@dataclass(frozen=True)
class CostReport:
    """Outcome of the two-branch cost optimization.

    ``cost`` is ``math.inf`` when the drift cannot reach the target at any
    time; ``infeasible`` makes that case explicit.  ``beta_used`` is the
    s-ordered shifted content the winning branch actually simulates.
    """

    cost: float
    branch: tuple[int, int, int]
    beta_used: np.ndarray

    @property
    def infeasible(self) -> bool:
        return math.isinf(self.cost)


class OrderVerdict(enum.Enum):
    """Result of comparing two gates under the interaction-cost partial order."""

    MORE_NONLOCAL = "MoreNonlocal"
    LESS_NONLOCAL = "LessNonlocal"
    EQUIVALENT = "Equivalent"
    INCOMPARABLE = "Incomparable"
    OUTSIDE_REGION = "OutsideRegion"


def feasible(
    beta: np.ndarray,
    alpha: np.ndarray,
    t: float,
    atol: float = tol.STRUCTURAL,
) -> tuple[bool, tuple[int, int, int] | None]:
    """Whether some integer shift of ``beta`` is s-majorized by ``alpha * t``.

    Scans shift vectors ``n`` over {-2..2}^3 in a fixed lexicographic order
    and returns the first hit, or ``(False, None)``.
    """
    beta = np.asarray(beta, dtype=float)
    alpha_t = np.asarray(alpha, dtype=float) * t
    for n in _SHIFT_SCAN:
        shifted = beta + HALF_PI * np.asarray(n)
        if s_majorizes(alpha_t, shifted, atol=atol):
            return True, n
    return False, None


def interaction_cost(beta: np.ndarray, alpha: np.ndarray) -> CostReport:
    """Minimal total drift time realizing content ``beta`` from drift ``alpha``.

    Takes the better of the two candidate shifts; ties are reported as branch
    ``(0,0,0)`` for determinism.  ``beta`` should be canonical (as produced by
    :func:`gateforge.canonical.interaction_content`) and ``alpha`` s-ordered.
    """
    beta = np.asarray(beta, dtype=float)
    best: CostReport | None = None
    for branch in _BRANCHES:
        shifted = beta + HALF_PI * np.asarray(branch)
        t = min_time(shifted, alpha)
        if best is None or t < best.cost:
            ordered, _ = s_order(shifted)
            best = CostReport(cost=float(t), branch=branch, beta_used=ordered)
    return best


def named_gate_cost(gate: str, alpha: np.ndarray, beta: float | None = None) -> float:
    """Closed-form interaction cost of a landmark gate under drift ``alpha``.

    ``gate`` is one of ``"CNOT"``, ``"DCNOT"``, ``"SWAP"`` or
    ``"CONTROLLED_U"`` (the latter takes the content parameter ``beta`` in
    ``[0, pi/4]``).  Consistent with :func:`interaction_cost` of the gate's
    content to machine precision.

    Raises:
        UnknownGateError: for an unrecognized name.
        BetaOutOfRangeError: if ``beta`` is missing or outside ``[0, pi/4]``.
    """
    a, _ = s_order(alpha)
    a1, a2, a3 = a
    name = gate.upper()

    def over(num: float, den: float) -> float:
        if den <= 0.0:
            return 0.0 if num <= 0.0 else math.inf
        return num / den

    if name == "CNOT":
        return over(QUARTER_PI, a1)
    if name == "CONTROLLED_U":
        if beta is None or not 0.0 <= beta <= QUARTER_PI:
            raise BetaOutOfRangeError("controlled-U parameter must lie in [0, pi/4]")
        if beta == 0.0:
            return 0.0
        return over(beta, a1)
    if name == "DCNOT":
        return over(HALF_PI, a1 + a2 - abs(a3))
    if name == "SWAP":
        return over(3 * QUARTER_PI, a1 + a2 + abs(a3))
    raise UnknownGateError(f"no closed-form cost for gate {gate!r}")


def partial_order(beta_u: np.ndarray, beta_v: np.ndarray) -> OrderVerdict:
    """Absolute (Hamiltonian-independent) comparison of two gate contents.

    Valid only in the region ``beta_1 + |beta_3| <= pi/4`` where the shift
    optimization never activates; outside it no absolute order exists and
    ``OUTSIDE_REGION`` is returned rather than extrapolating.
    """
    beta_u = np.asarray(beta_u, dtype=float)
    beta_v = np.asarray(beta_v, dtype=float)
    for b in (beta_u, beta_v):
        if b[0] + abs(b[2]) > QUARTER_PI + tol.BOUNDARY:
            return OrderVerdict.OUTSIDE_REGION
    u_dominates = s_majorizes(beta_u, beta_v)
    v_dominates = s_majorizes(beta_v, beta_u)
    if u_dominates and v_dominates:
        return OrderVerdict.EQUIVALENT
    if u_dominates:
        return OrderVerdict.MORE_NONLOCAL
    if v_dominates:
        return OrderVerdict.LESS_NONLOCAL
    return OrderVerdict.INCOMPARABLE
