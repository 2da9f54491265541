"""Dense two-phase simplex for small linear programs.

Minimizes ``c @ x`` subject to ``a_ub @ x <= b_ub``, ``a_eq @ x == b_eq``
and per-variable ``(lower, upper)`` bounds, any of which may be infinite.
Free and upper-bounded-only variables are handled by substitution, so the
caller can state models naturally.

The solver is sized for the deviation-minimization instances this package
generates (tens of variables, a few hundred rows): everything stays in one
dense tableau and is strictly deterministic, so repeated solves of the same
program give bit-identical answers.  The entering rule is steepest
coefficient (Dantzig) and switches permanently to Bland's smallest-index
rule once the objective has stalled, which breaks degenerate cycles; the
leaving rule always resolves ratio ties toward the smallest basis index.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import IterationLimitError, ValidationError

__all__ = ["LinearProgram", "LpSolution", "LpStatus", "solve"]


class LpStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class LinearProgram:
    """An immutable LP in the form min c@x, a_ub@x <= b_ub, a_eq@x == b_eq."""

    c: np.ndarray
    a_ub: np.ndarray
    b_ub: np.ndarray
    a_eq: np.ndarray
    b_eq: np.ndarray
    bounds: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        c = _readonly(self.c)
        if c.ndim != 1 or c.size == 0:
            raise ValidationError("objective must be a non-empty vector")
        n = c.size
        try:
            a_ub = _readonly(np.asarray(self.a_ub, dtype=float).reshape(-1, n))
            a_eq = _readonly(np.asarray(self.a_eq, dtype=float).reshape(-1, n))
        except ValueError as exc:
            raise ValidationError(f"constraint matrix width must match {n} variables") from exc
        b_ub = _readonly(self.b_ub)
        b_eq = _readonly(self.b_eq)
        if b_ub.ndim != 1 or b_ub.size != a_ub.shape[0]:
            raise ValidationError("b_ub length must match a_ub row count")
        if b_eq.ndim != 1 or b_eq.size != a_eq.shape[0]:
            raise ValidationError("b_eq length must match a_eq row count")
        for block in (c, a_ub, b_ub, a_eq, b_eq):
            if block.size and not np.isfinite(block).all():
                raise ValidationError("constraint data must be finite")
        bounds = tuple((float(lo), float(hi)) for lo, hi in self.bounds)
        if len(bounds) != n:
            raise ValidationError(f"expected {n} bound pairs, got {len(bounds)}")
        for j, (lo, hi) in enumerate(bounds):
            if np.isnan(lo) or np.isnan(hi) or lo > hi:
                raise ValidationError(f"invalid bounds ({lo}, {hi}) for variable {j}")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "a_ub", a_ub)
        object.__setattr__(self, "b_ub", b_ub)
        object.__setattr__(self, "a_eq", a_eq)
        object.__setattr__(self, "b_eq", b_eq)
        object.__setattr__(self, "bounds", bounds)

    @classmethod
    def build(cls, c, a_ub=None, b_ub=None, a_eq=None, b_eq=None, bounds=None) -> "LinearProgram":
        """Convenience constructor: lists allowed, omitted blocks empty,
        omitted bounds default to ``(0, +inf)`` for every variable."""
        c = np.asarray(c, dtype=float)
        n = c.size
        if a_ub is None:
            a_ub, b_ub = np.zeros((0, n)), np.zeros(0)
        if a_eq is None:
            a_eq, b_eq = np.zeros((0, n)), np.zeros(0)
        if bounds is None:
            bounds = tuple((0.0, np.inf) for _ in range(n))
        return cls(c, a_ub, b_ub, a_eq, b_eq, tuple(bounds))

    @property
    def num_vars(self) -> int:
        return self.c.size


@dataclass(frozen=True)
class LpSolution:
    status: LpStatus
    x: np.ndarray | None
    objective_value: float | None
    iterations: int

    def __post_init__(self) -> None:
        if self.x is not None:
            object.__setattr__(self, "x", _readonly(self.x))


def _pivot(T: np.ndarray, row: int, col: int) -> None:
    T[row] /= T[row, col]
    column = T[:, col].copy()
    column[row] = 0.0
    T -= np.outer(column, T[row])
    T[:, col] = 0.0
    T[row, col] = 1.0


def _iterate(T, basis, pivot_tol, iters_left, bland_after, cost_tol=1e-9):
    """Run simplex pivots on tableau ``T`` until optimal or unbounded.

    The bottom row holds reduced costs with ``T[-1, -1] == -objective``.
    Returns ``(status, pivots)`` where status is "optimal" or "unbounded".
    """
    m = len(basis)
    pivots = 0
    bland = False
    stalled = 0
    best_seen = T[-1, -1]
    while True:
        reduced = T[-1, :-1]
        if bland:
            negatives = np.nonzero(reduced < -cost_tol)[0]
            if negatives.size == 0:
                return "optimal", pivots
            col = int(negatives[0])
        else:
            col = int(np.argmin(reduced))
            if reduced[col] >= -cost_tol:
                return "optimal", pivots
        column = T[:m, col]
        eligible = column > pivot_tol
        if not eligible.any():
            return "unbounded", pivots
        rhs = np.maximum(T[:m, -1], 0.0)
        ratios = np.full(m, np.inf)
        ratios[eligible] = rhs[eligible] / column[eligible]
        best = ratios.min()
        tied = np.nonzero(ratios == best)[0]
        row = int(tied[0]) if tied.size == 1 else int(tied[np.argmin(basis[tied])])
        if pivots >= iters_left:
            raise IterationLimitError(
                f"simplex pivot budget exhausted after {pivots} pivots in this phase"
            )
        _pivot(T, row, col)
        basis[row] = col
        pivots += 1
        if not bland:
            if T[-1, -1] > best_seen + 1e-12:
                best_seen = T[-1, -1]
                stalled = 0
            else:
                stalled += 1
                if stalled > bland_after:
                    bland = True


def _check_feasible(lp: LinearProgram, x: np.ndarray, feas_tol: float) -> None:
    worst = 0.0
    if lp.a_eq.shape[0]:
        worst = max(worst, float(np.max(np.abs(lp.a_eq @ x - lp.b_eq))))
    if lp.a_ub.shape[0]:
        worst = max(worst, float(np.max(lp.a_ub @ x - lp.b_ub)))
    for j, (lo, hi) in enumerate(lp.bounds):
        if np.isfinite(lo):
            worst = max(worst, lo - x[j])
        if np.isfinite(hi):
            worst = max(worst, x[j] - hi)
    scale = 1.0 + max(
        float(np.max(np.abs(lp.b_ub))) if lp.b_ub.size else 0.0,
        float(np.max(np.abs(lp.b_eq))) if lp.b_eq.size else 0.0,
    )
    if worst > feas_tol * scale * 10.0:
        raise ArithmeticError(
            f"simplex returned a point violating constraints by {worst:.3g}"
        )


def solve(
    lp: LinearProgram,
    *,
    feas_tol: float = 1e-9,
    pivot_tol: float = 1e-10,
    max_iters: int = 20000,
    bland_after: int = 50,
) -> LpSolution:
    """Solve ``lp`` to optimality, or classify it infeasible or unbounded.

    Args:
        lp: the program to solve.
        feas_tol: residual level below which phase 1 counts as feasible and
            the final point counts as satisfying every constraint.
        pivot_tol: smallest tableau entry accepted as a pivot element.
        max_iters: total pivot budget across both phases; exceeding it
            raises IterationLimitError rather than returning a bad answer.
        bland_after: number of consecutive non-improving pivots tolerated
            before switching to Bland's anti-cycling rule.

    Returns:
        LpSolution with status OPTIMAL (and a primal-feasible ``x``),
        INFEASIBLE, or UNBOUNDED.
    """
    # Substitute every variable by a non-negative one.
    n_orig = lp.num_vars
    columns: list[tuple[int, float]] = []
    base = np.zeros(n_orig)
    bound_rows: list[tuple[int, float]] = []
    for j, (lo, hi) in enumerate(lp.bounds):
        if np.isneginf(lo) and np.isposinf(hi):
            columns.append((j, 1.0))
            columns.append((j, -1.0))
        elif not np.isneginf(lo):
            base[j] = lo
            columns.append((j, 1.0))
            if np.isfinite(hi):
                bound_rows.append((len(columns) - 1, hi - lo))
        else:
            base[j] = hi
            columns.append((j, -1.0))
    n_std = len(columns)

    def substitute(a: np.ndarray) -> np.ndarray:
        out = np.zeros((a.shape[0], n_std))
        for k, (j, sign) in enumerate(columns):
            out[:, k] = sign * a[:, j]
        return out

    a_ub = substitute(lp.a_ub)
    b_ub = lp.b_ub - lp.a_ub @ base
    a_eq = substitute(lp.a_eq)
    b_eq = lp.b_eq - lp.a_eq @ base
    if bound_rows:
        extra = np.zeros((len(bound_rows), n_std))
        extra_rhs = np.empty(len(bound_rows))
        for r, (k, width) in enumerate(bound_rows):
            extra[r, k] = 1.0
            extra_rhs[r] = width
        a_ub = np.vstack([a_ub, extra])
        b_ub = np.concatenate([b_ub, extra_rhs])
    c_std = np.array([sign * lp.c[j] for j, sign in columns])

    m_ub, m_eq = a_ub.shape[0], a_eq.shape[0]
    m = m_ub + m_eq
    A = np.zeros((m, n_std + m_ub))
    b = np.empty(m)
    A[:m_ub, :n_std] = a_ub
    if m_ub:
        A[:m_ub, n_std : n_std + m_ub] = np.eye(m_ub)
    A[m_ub:, :n_std] = a_eq
    b[:m_ub] = b_ub
    b[m_ub:] = b_eq
    negated = b < 0
    A[negated] *= -1.0
    b[negated] = -b[negated]

    basis = np.full(m, -1, dtype=int)
    needs_artificial = []
    for i in range(m):
        if i < m_ub and not negated[i]:
            basis[i] = n_std + i
        else:
            needs_artificial.append(i)
    art_start = n_std + m_ub
    total_pivots = 0

    if needs_artificial:
        n_art = len(needs_artificial)
        art = np.zeros((m, n_art))
        for k, i in enumerate(needs_artificial):
            art[i, k] = 1.0
            basis[i] = art_start + k
        T = np.zeros((m + 1, art_start + n_art + 1))
        T[:m, : art_start] = A
        T[:m, art_start : art_start + n_art] = art
        T[:m, -1] = b
        T[-1, art_start : art_start + n_art] = 1.0
        for i in range(m):
            if basis[i] >= art_start:
                T[-1] -= T[i]
        status, pivots = _iterate(T, basis, pivot_tol, max_iters, bland_after)
        total_pivots += pivots
        if status != "optimal":
            raise ArithmeticError("phase 1 objective is bounded below; solver defect")
        if -T[-1, -1] > feas_tol:
            return LpSolution(LpStatus.INFEASIBLE, None, None, total_pivots)
        # Remove leftover artificials: pivot them onto a real column when
        # possible, otherwise the row is redundant and gets dropped.
        keep = np.ones(m, dtype=bool)
        for i in range(m):
            if basis[i] >= art_start:
                row = np.abs(T[i, :art_start])
                candidates = np.nonzero(row > pivot_tol)[0]
                if candidates.size:
                    _pivot(T, i, int(candidates[0]))
                    basis[i] = int(candidates[0])
                    total_pivots += 1
                else:
                    keep[i] = False
        if not keep.all():
            T = np.vstack([T[:m][keep], T[-1:]])
            basis = basis[keep]
            m = len(basis)
        T = np.hstack([T[:, :art_start], T[:, -1:]])
    else:
        T = np.zeros((m + 1, art_start + 1))
        T[:m, :art_start] = A
        T[:m, -1] = b

    cost = np.zeros(art_start)
    cost[:n_std] = c_std
    T[-1, :-1] = cost
    T[-1, -1] = 0.0
    for i in range(m):
        cj = cost[basis[i]]
        if cj != 0.0:
            T[-1] -= cj * T[i]
    status, pivots = _iterate(T, basis, pivot_tol, max_iters - total_pivots, bland_after)
    total_pivots += pivots
    if status == "unbounded":
        return LpSolution(LpStatus.UNBOUNDED, None, None, total_pivots)

    x_std = np.zeros(art_start)
    x_std[basis] = T[:m, -1]
    x = base.copy()
    for k, (j, sign) in enumerate(columns):
        x[j] += sign * x_std[k]
    _check_feasible(lp, x, feas_tol)
    return LpSolution(LpStatus.OPTIMAL, x, float(lp.c @ x), total_pivots)
