"""Multi-criteria ranking over per-criterion ratio-scale comparisons.

The pipeline takes one multiplicative relation per criterion plus crisp
criteria weights, derives normalized fuzzy weights per criterion with the
total-pinned LAD model, combines them criterion-weighted into global
weights, and ranks alternatives by magnitude.

Two closed-form baselines are included for comparison: the arithmetic-mean
method (row sums divided by the grand total) and the geometric-mean method
(componentwise row geometric means divided by their total).  ``deviation``
scores any weight vector on the same objective the LAD model minimizes, so
the three methods are directly comparable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InfeasibleError, IterationLimitError, ValidationError
from .lad import UtilityVector, derive_weights, evaluate_objective
from .relations import TrMPR, to_additive
from .trfn import (
    DEFAULT_MAG_WEIGHTS,
    MagWeights,
    Ranking,
    TrFN,
    add,
    magnitude,
    rank,
)

__all__ = ["AhpProblem", "AhpResult", "run_ahp", "amm_weights", "gmm_weights", "deviation"]


@dataclass(frozen=True)
class AhpProblem:
    """A fixed hierarchy: criteria weights, one relation per criterion."""

    criteria_weights: tuple[float, ...]
    matrices: tuple[TrMPR, ...]
    sigma: TrFN
    mag_weights: MagWeights = DEFAULT_MAG_WEIGHTS

    def __post_init__(self) -> None:
        weights = tuple(float(w) for w in self.criteria_weights)
        matrices = tuple(self.matrices)
        object.__setattr__(self, "criteria_weights", weights)
        object.__setattr__(self, "matrices", matrices)
        if not matrices:
            raise ValidationError("an AHP problem needs at least one criterion")
        if len(weights) != len(matrices):
            raise ValidationError(
                f"got {len(weights)} criteria weights for {len(matrices)} matrices"
            )
        for k, w in enumerate(weights):
            if w < 0.0:
                raise ValidationError(f"criterion weight {k + 1} is negative: {w}")
        if abs(sum(weights) - 1.0) > 1e-12:
            raise ValidationError(f"criteria weights must sum to 1, got {sum(weights)}")
        first = matrices[0]
        for k, y in enumerate(matrices):
            if not isinstance(y, TrMPR):
                raise ValidationError(f"criterion {k + 1} matrix is not a ratio-scale relation")
            if y.n != first.n:
                raise ValidationError(
                    f"criterion {k + 1} compares {y.n} alternatives, expected {first.n}"
                )
            if y.scale != first.scale or (
                y.neutral.value.components != first.neutral.value.components
            ):
                raise ValidationError(
                    f"criterion {k + 1} uses a different scale or neutral element"
                )
        if not isinstance(self.sigma, TrFN) or self.sigma.a <= 0.0:
            raise ValidationError("the total-utility target must be a positive trapezoid")

    @property
    def n(self) -> int:
        return self.matrices[0].n


@dataclass(frozen=True)
class AhpResult:
    local_weights: tuple[UtilityVector, ...]
    global_weights: tuple[TrFN, ...]
    magnitudes: tuple[float, ...]
    ranking: Ranking
    per_criterion_objectives: tuple[float, ...]


def run_ahp(problem: AhpProblem) -> AhpResult:
    """Derive local weights per criterion, combine, and rank.

    Global weight ``i`` is the criteria-weighted componentwise sum of the
    local weights for alternative ``i``.  Solver failures are re-raised
    with the offending criterion index attached.
    """
    local: list[UtilityVector] = []
    for k, y in enumerate(problem.matrices):
        try:
            local.append(derive_weights(y, problem.sigma))
        except (InfeasibleError, IterationLimitError) as exc:
            raise type(exc)(f"criterion {k + 1}: {exc}") from exc
    n = problem.n
    global_weights = []
    for i in range(n):
        comps = [0.0, 0.0, 0.0, 0.0]
        for w, vec in zip(problem.criteria_weights, local):
            for idx, v in enumerate(vec.utilities[i].components):
                comps[idx] += w * v
        global_weights.append(TrFN(*comps))
    global_weights = tuple(global_weights)
    mags = tuple(magnitude(t, problem.mag_weights) for t in global_weights)
    ranking = rank(global_weights, problem.mag_weights)
    return AhpResult(
        tuple(local),
        global_weights,
        mags,
        ranking,
        tuple(vec.objective for vec in local),
    )


def _divide(t1: TrFN, t2: TrFN) -> TrFN:
    # Fuzzy division of positive trapezoids: numerator components meet the
    # mirrored denominator, widening the result.
    return TrFN(t1.a / t2.d, t1.b / t2.c, t1.c / t2.b, t1.d / t2.a)


def amm_weights(y: TrMPR) -> tuple[TrFN, ...]:
    """Arithmetic-mean weights: fuzzy row sums over their grand total."""
    row_sums = []
    for row in y.entries:
        total = row[0]
        for entry in row[1:]:
            total = add(total, entry)
        row_sums.append(total)
    grand = row_sums[0]
    for t in row_sums[1:]:
        grand = add(grand, t)
    return tuple(_divide(t, grand) for t in row_sums)


def gmm_weights(y: TrMPR) -> tuple[TrFN, ...]:
    """Geometric-mean weights: componentwise row geomeans over their total."""
    n = y.n
    means = []
    for row in y.entries:
        comps = []
        for idx in range(4):
            product = 1.0
            for entry in row:
                product *= entry.components[idx]
            comps.append(product ** (1.0 / n))
        means.append(TrFN(*comps))
    grand = means[0]
    for t in means[1:]:
        grand = add(grand, t)
    return tuple(_divide(t, grand) for t in means)


def deviation(y: TrMPR, weights: tuple[TrFN, ...]) -> float:
    """Score a weight vector on the LAD objective of ``y``'s additive image.

    Lower is better; the LAD weights minimize exactly this quantity, so it
    serves as the common yardstick for comparing weighting methods.
    """
    return evaluate_objective(to_additive(y), weights)
