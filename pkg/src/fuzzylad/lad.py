"""Least-absolute-deviation derivation of fuzzy utilities from relations.

A utility vector assigns one trapezoid per alternative so that the relation
rebuilt from utilities sits as close as possible, in total normalized L1
distance, to the observed relation.  That fitting problem is an LP after
the usual split of absolute values into non-negative deviation variables:
for ``n`` alternatives it has ``4n`` utility components, ``4n^2`` deviation
variables, two inequalities per matrix cell and component, and a three-step
ordering chain per alternative.

Model variants differ only in side constraints on the utility components:

* ``P0``: components free apart from the ordering chain.
* ``P``: additionally ``u_k.a >= 0`` (non-negative utilities).
* ``PUnit``: additionally ``u_k.d <= 1`` (utilities inside the unit
  interval); the default when deriving from an additive relation.
* ``PSigma``: model P plus a fixed componentwise total, which pins the
  otherwise shift-invariant optimum and yields normalized fuzzy weights.
* ``QSigma``: model PSigma applied to a multiplicative relation via its
  additive image; the label records the ratio-scale origin.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import InfeasibleError, NotConsistentError, ValidationError
from .relations import (
    DEFAULT_CONSISTENCY_TOL,
    TrFPR,
    TrMPR,
    check_consistency,
    to_additive,
)
from .simplex import LinearProgram, LpStatus, solve
from .trfn import TrFN, add, crisp, distance, negate

__all__ = [
    "Model",
    "UtilityVector",
    "build_lp",
    "derive_utility",
    "derive_utility_mult",
    "derive_weights",
    "shift_normalize",
    "fast_path_consistent",
    "evaluate_objective",
]

# Agreement required between the LP optimum and the objective recomputed
# directly from the returned utilities.
OBJECTIVE_AGREEMENT_TOL = 1e-7

_SNAP_TOL = 1e-12


class Model(str, Enum):
    P0 = "p0"
    P = "p"
    PUNIT = "punit"
    PSIGMA = "psigma"
    QSIGMA = "qsigma"


@dataclass(frozen=True)
class UtilityVector:
    """Per-alternative fuzzy utilities plus the deviation they achieve."""

    utilities: tuple[TrFN, ...]
    objective: float
    model: Model

    def __post_init__(self) -> None:
        object.__setattr__(self, "utilities", tuple(self.utilities))
        if not self.utilities:
            raise ValidationError("a utility vector needs at least one entry")
        for k, u in enumerate(self.utilities):
            if not isinstance(u, TrFN):
                raise ValidationError(f"utility {k + 1} is not a trapezoidal number")
        if self.objective < 0.0:
            raise ValidationError(f"objective must be non-negative, got {self.objective}")
        if self.model in (Model.P, Model.PSIGMA, Model.QSIGMA, Model.PUNIT):
            for k, u in enumerate(self.utilities):
                if u.a < 0.0:
                    raise ValidationError(
                        f"model {self.model.value} requires non-negative utilities, "
                        f"utility {k + 1} = {u}"
                    )
        if self.model is Model.PUNIT:
            for k, u in enumerate(self.utilities):
                if u.d > 1.0:
                    raise ValidationError(
                        f"model punit keeps utilities inside [0, 1], utility {k + 1} = {u}"
                    )

    @property
    def n(self) -> int:
        return len(self.utilities)


def evaluate_objective(x: TrFPR, utilities: Sequence[TrFN]) -> float:
    """Total deviation between ``x`` and the relation the utilities rebuild.

    This is a direct evaluation, independent of any LP machinery: for every
    cell (diagonal included) it compares ``x_ij + t0`` against
    ``u_i + (u_j negated)`` in normalized L1 distance and sums up.
    """
    utilities = tuple(utilities)
    if len(utilities) != x.n:
        raise ValidationError(f"expected {x.n} utilities, got {len(utilities)}")
    t0 = x.neutral.value
    mirrored = tuple(negate(u) for u in utilities)
    total = 0.0
    for i in range(x.n):
        for j in range(x.n):
            total += distance(add(x.entries[i][j], t0), add(utilities[i], mirrored[j]))
    return total


def _validate_sigma(sigma: TrFN) -> None:
    if not isinstance(sigma, TrFN):
        raise ValidationError("the total-utility target must be a trapezoidal number")
    if sigma.a <= 0.0:
        raise ValidationError(
            f"the total-utility target must be strictly positive, got {sigma}"
        )


def build_lp(x: TrFPR, model: Model, sigma: TrFN | None = None) -> LinearProgram:
    """Assemble the deviation-minimization LP for relation ``x``.

    Variable layout: utility components first (``4k + component``), then one
    deviation variable per cell and component.  Only the side constraints
    the chosen model actually states become variable bounds; everything
    implied (for example non-negativity of the b component under model P)
    is left to the ordering chain.
    """
    if model is Model.QSIGMA:
        model = Model.PSIGMA
    if model is Model.PSIGMA:
        if sigma is None:
            raise ValidationError("model psigma needs a total-utility target")
        _validate_sigma(sigma)
    elif sigma is not None:
        raise ValidationError(f"model {model.value} takes no total-utility target")

    n = x.n
    nu = 4 * n
    nv = 4 * n * n
    t0 = x.neutral.value

    def u_var(k: int, comp: int) -> int:
        return 4 * k + comp

    def v_var(i: int, j: int, comp: int) -> int:
        return nu + 4 * (i * n + j) + comp

    c = np.zeros(nu + nv)
    c[nu:] = 0.25

    rows = []
    rhs = []
    for i in range(n):
        for j in range(n):
            cell = x.entries[i][j].components
            for comp in range(4):
                # Deviation between cell + t0 and u_i + negate(u_j); the
                # negation mirrors components a <-> d and b <-> c.
                constant = cell[comp] + t0.components[comp] - 1.0
                mirror = 3 - comp
                for sign in (1.0, -1.0):
                    row = np.zeros(nu + nv)
                    row[u_var(i, comp)] = -sign
                    row[u_var(j, mirror)] = sign
                    row[v_var(i, j, comp)] = -1.0
                    rows.append(row)
                    rhs.append(-sign * constant)
    for k in range(n):
        for comp in range(3):
            row = np.zeros(nu + nv)
            row[u_var(k, comp)] = 1.0
            row[u_var(k, comp + 1)] = -1.0
            rows.append(row)
            rhs.append(0.0)
    a_ub = np.vstack(rows)
    b_ub = np.asarray(rhs)

    if model is Model.PSIGMA:
        eq_rows = np.zeros((4, nu + nv))
        eq_rhs = np.empty(4)
        for comp in range(4):
            for k in range(n):
                eq_rows[comp, u_var(k, comp)] = 1.0
            eq_rhs[comp] = sigma.components[comp]
        a_eq, b_eq = eq_rows, eq_rhs
    else:
        a_eq, b_eq = np.zeros((0, nu + nv)), np.zeros(0)

    bounds: list[tuple[float, float]] = []
    for _ in range(n):
        lower_a = 0.0 if model in (Model.P, Model.PUNIT, Model.PSIGMA) else -np.inf
        upper_d = 1.0 if model is Model.PUNIT else np.inf
        bounds.append((lower_a, np.inf))      # component a
        bounds.append((-np.inf, np.inf))      # component b
        bounds.append((-np.inf, np.inf))      # component c
        bounds.append((-np.inf, upper_d))     # component d
    bounds.extend((0.0, np.inf) for _ in range(nv))
    return LinearProgram(c, a_ub, b_ub, a_eq, b_eq, tuple(bounds))


def _extract_utilities(x_arr: np.ndarray, n: int, model: Model) -> tuple[TrFN, ...]:
    comps = x_arr[: 4 * n].reshape(n, 4).copy()
    if np.max(comps[:, :-1] - comps[:, 1:]) > 1e-8:
        raise ArithmeticError("solver returned strongly unordered utility components")
    comps[np.abs(comps) < _SNAP_TOL] = 0.0
    comps[np.abs(comps - 1.0) < _SNAP_TOL] = 1.0
    comps = np.maximum.accumulate(comps, axis=1)
    if model in (Model.P, Model.PSIGMA, Model.QSIGMA, Model.PUNIT):
        comps = np.maximum(comps, 0.0)
    if model is Model.PUNIT:
        comps = np.minimum(comps, 1.0)
    return tuple(TrFN(*row) for row in comps)


def derive_utility(
    x: TrFPR, model: Model = Model.PUNIT, sigma: TrFN | None = None
) -> UtilityVector:
    """Solve the deviation LP for ``x`` and return optimal utilities.

    The reported objective is recomputed directly from the returned
    utilities; a mismatch with the LP optimum beyond 1e-7 would mean the
    linearization and the evaluation disagree and raises instead of
    returning silently wrong numbers.
    """
    if model is Model.QSIGMA:
        raise ValidationError("use derive_weights for ratio-scale relations")
    lp = build_lp(x, model, sigma)
    solution = solve(lp)
    if solution.status is LpStatus.INFEASIBLE:
        raise InfeasibleError(
            f"model {model.value} admits no utilities for the given total-utility target"
        )
    if solution.status is not LpStatus.OPTIMAL:
        raise ArithmeticError("the deviation objective is bounded below; solver defect")
    utilities = _extract_utilities(solution.x, x.n, model)
    recomputed = evaluate_objective(x, utilities)
    if abs(recomputed - solution.objective_value) > OBJECTIVE_AGREEMENT_TOL:
        raise ArithmeticError(
            f"LP optimum {solution.objective_value} and recomputed deviation "
            f"{recomputed} disagree beyond {OBJECTIVE_AGREEMENT_TOL}"
        )
    return UtilityVector(utilities, recomputed, model)


def shift_normalize(u: UtilityVector) -> UtilityVector:
    """Shift a free-model solution into the non-negative model.

    Adding one crisp constant to every utility leaves all rebuilt pairwise
    comparisons, hence the objective, unchanged; the smallest shift that
    clears negativity is the negated minimum support start.
    """
    if u.model is not Model.P0:
        raise ValidationError(f"shift normalization applies to model p0, got {u.model.value}")
    delta = max(0.0, -min(t.a for t in u.utilities))
    if delta == 0.0:
        return replace(u, model=Model.P)
    offset = crisp(delta)
    shifted = tuple(add(t, offset) for t in u.utilities)
    return UtilityVector(shifted, u.objective, Model.P)


def derive_utility_mult(y: TrMPR) -> UtilityVector:
    """Derive non-negative utilities for a multiplicative relation."""
    return derive_utility(to_additive(y), Model.P)


def derive_weights(y: TrMPR, sigma: TrFN) -> UtilityVector:
    """Derive normalized fuzzy weights for a multiplicative relation.

    Solves the total-pinned model on the additive image of ``y``; the
    result is labelled QSigma to record its ratio-scale origin.
    """
    _validate_sigma(sigma)
    derived = derive_utility(to_additive(y), Model.PSIGMA, sigma)
    return replace(derived, model=Model.QSIGMA)


def fast_path_consistent(
    x: TrFPR, k: int = 0, tol: float = DEFAULT_CONSISTENCY_TOL
) -> UtilityVector:
    """Read utilities straight out of column ``k`` of a consistent relation.

    For a consistent relation, any single column is already an optimal
    utility vector with zero deviation, so no LP is needed.  ``k`` is
    0-based.  Raises NotConsistentError when the relation fails the
    transitivity scan at ``tol``.
    """
    if not 0 <= k < x.n:
        raise ValidationError(f"column index {k} outside 0..{x.n - 1}")
    report = check_consistency(x, tol)
    if not report.consistent:
        raise NotConsistentError(
            f"fast path needs a consistent relation; {report.describe()}"
        )

    def snap(t: TrFN) -> TrFN:
        # Entries may carry ±1e-12 dust around 0 from earlier float work;
        # model P utilities must be exactly non-negative.
        comps = tuple(
            0.0 if abs(v) < _SNAP_TOL else 1.0 if abs(v - 1.0) < _SNAP_TOL else v
            for v in t
        )
        return t if comps == t.components else TrFN(*comps)

    utilities = tuple(snap(x.entries[i][k]) for i in range(x.n))
    objective = evaluate_objective(x, utilities)
    return UtilityVector(utilities, objective, Model.P)
