"""Pairwise preference relations with trapezoidal fuzzy entries.

Two reciprocal forms are supported:

* additive: entries live in ``[0, 1]`` and mirror under the standard
  negation; the diagonal holds a decision-maker-chosen neutral trapezoid
  (a fixed point of negation) rather than the crisp 0.5.
* multiplicative: entries live in ``[1/m, m]`` for an integer scale
  ``m >= 2`` and mirror under inversion; the diagonal holds a neutral
  trapezoid that is a fixed point of inversion.

The exponential map ``phi`` and its inverse translate between the two
forms and preserve reciprocity, neutrality, and transitivity, so either
side can be checked or solved and the verdict carries over.

Index conventions: matrix positions are 0-based throughout the API, while
error messages and reports quote 1-based coordinates, which is how the
alternatives are labelled in CLI output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import OutOfUnitIntervalError, ValidationError
from .trfn import TrFN, add, distance, invert, mul, negate

__all__ = [
    "NeutralElement",
    "TrFPR",
    "TrMPR",
    "ConsistencyReport",
    "ADDITIVE_TOL",
    "MULTIPLICATIVE_RTOL",
    "DEFAULT_CONSISTENCY_TOL",
    "phi",
    "phi_inv",
    "to_multiplicative",
    "to_additive",
    "check_consistency",
    "check_consistency_mult",
    "from_utilities",
]

# Absolute band for checks on the [0, 1] scale.  Decimal literals such as
# 0.2 and 1 - 0.8 differ by a few ulp once stored as binary floats, so a
# mathematically exact identity can only be enforced up to this dust.
ADDITIVE_TOL = 1e-12

# Relative band for checks on the ratio scale, whose entries are typically
# irrational powers of the scale and round independently on each side of
# an identity.
MULTIPLICATIVE_RTOL = 1e-9

# Default threshold below which a transitivity violation counts as noise.
DEFAULT_CONSISTENCY_TOL = 1e-9


def _close_abs(u: float, v: float) -> bool:
    return abs(u - v) <= ADDITIVE_TOL


def _close_rel(u: float, v: float) -> bool:
    return abs(u - v) <= MULTIPLICATIVE_RTOL * max(1.0, abs(u), abs(v))


@dataclass(frozen=True)
class NeutralElement:
    """The diagonal element of a preference relation.

    Additive neutrals are fixed points of negation (``a + d = 1`` and
    ``b + c = 1``); multiplicative ones are fixed points of inversion
    (``a * d = 1`` and ``b * c = 1``) and carry the scale they live on.
    """

    value: TrFN
    kind: str
    scale: int | None = None

    def __post_init__(self) -> None:
        t = self.value
        if self.kind == "additive":
            if self.scale is not None:
                raise ValidationError("additive neutral elements carry no scale")
            if t.a < -ADDITIVE_TOL or t.d > 1.0 + ADDITIVE_TOL:
                raise ValidationError(f"additive neutral element {t} leaves [0, 1]")
            if not (_close_abs(t.a + t.d, 1.0) and _close_abs(t.b + t.c, 1.0)):
                raise ValidationError(
                    f"neutral element {t} is not a fixed point of negation "
                    f"(needs a + d = 1 and b + c = 1)"
                )
        elif self.kind == "multiplicative":
            if not isinstance(self.scale, int) or isinstance(self.scale, bool):
                raise ValidationError("multiplicative neutral elements need an integer scale")
            if self.scale < 2:
                raise ValidationError(f"scale must be an integer >= 2, got {self.scale}")
            if t.a <= 0.0:
                raise ValidationError(f"multiplicative neutral element {t} must be positive")
            m = float(self.scale)
            if t.a < (1.0 / m) * (1.0 - MULTIPLICATIVE_RTOL) or t.d > m * (1.0 + MULTIPLICATIVE_RTOL):
                raise ValidationError(f"neutral element {t} leaves [1/{self.scale}, {self.scale}]")
            if not (_close_rel(t.a * t.d, 1.0) and _close_rel(t.b * t.c, 1.0)):
                raise ValidationError(
                    f"neutral element {t} is not a fixed point of inversion "
                    f"(needs a * d = 1 and b * c = 1)"
                )
        else:
            raise ValidationError(f"unknown neutral element kind {self.kind!r}")

    @classmethod
    def additive(cls, value: TrFN) -> "NeutralElement":
        return cls(value, "additive")

    @classmethod
    def multiplicative(cls, value: TrFN, scale: int) -> "NeutralElement":
        return cls(value, "multiplicative", scale)


def _as_matrix(entries: Sequence[Sequence[TrFN]]) -> tuple[tuple[TrFN, ...], ...]:
    rows = tuple(tuple(row) for row in entries)
    n = len(rows)
    if n == 0:
        raise ValidationError("a preference relation needs at least one alternative")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ValidationError(f"row {i + 1} has {len(row)} entries, expected {n}")
        for j, entry in enumerate(row):
            if not isinstance(entry, TrFN):
                raise ValidationError(f"entry ({i + 1},{j + 1}) is not a trapezoidal number")
    return rows


@dataclass(frozen=True)
class TrFPR:
    """An additive reciprocal preference relation over ``n`` alternatives."""

    entries: tuple[tuple[TrFN, ...], ...]
    neutral: NeutralElement

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", _as_matrix(self.entries))
        if self.neutral.kind != "additive":
            raise ValidationError("an additive relation needs an additive neutral element")
        t0 = self.neutral.value
        for i, row in enumerate(self.entries):
            for j, entry in enumerate(row):
                if entry.a < -ADDITIVE_TOL or entry.d > 1.0 + ADDITIVE_TOL:
                    raise ValidationError(f"entry ({i + 1},{j + 1}) = {entry} leaves [0, 1]")
        for k, row in enumerate(self.entries):
            if not all(_close_abs(u, v) for u, v in zip(row[k], t0)):
                raise ValidationError(
                    f"diagonal entry ({k + 1},{k + 1}) = {row[k]} must equal the "
                    f"neutral element {t0}"
                )
        n = len(self.entries)
        for i in range(n):
            for j in range(i + 1, n):
                mirror = negate(self.entries[i][j])
                actual = self.entries[j][i]
                if not all(_close_abs(u, v) for u, v in zip(actual, mirror)):
                    raise ValidationError(
                        f"entry ({j + 1},{i + 1}) = {actual} is not the negation of "
                        f"entry ({i + 1},{j + 1}) = {self.entries[i][j]}"
                    )

    @property
    def n(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int) -> TrFN:
        return self.entries[i][j]


@dataclass(frozen=True)
class TrMPR:
    """A multiplicative reciprocal preference relation on the scale ``[1/m, m]``."""

    entries: tuple[tuple[TrFN, ...], ...]
    neutral: NeutralElement

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", _as_matrix(self.entries))
        if self.neutral.kind != "multiplicative":
            raise ValidationError("a multiplicative relation needs a multiplicative neutral element")
        m = float(self.neutral.scale)
        lo = (1.0 / m) * (1.0 - MULTIPLICATIVE_RTOL)
        hi = m * (1.0 + MULTIPLICATIVE_RTOL)
        s0 = self.neutral.value
        for i, row in enumerate(self.entries):
            for j, entry in enumerate(row):
                if entry.a < lo or entry.d > hi:
                    raise ValidationError(
                        f"entry ({i + 1},{j + 1}) = {entry} leaves "
                        f"[1/{self.neutral.scale}, {self.neutral.scale}]"
                    )
        for k, row in enumerate(self.entries):
            if not all(_close_rel(u, v) for u, v in zip(row[k], s0)):
                raise ValidationError(
                    f"diagonal entry ({k + 1},{k + 1}) = {row[k]} must equal the "
                    f"neutral element {s0}"
                )
        n = len(self.entries)
        for i in range(n):
            for j in range(i + 1, n):
                mirror = invert(self.entries[i][j])
                actual = self.entries[j][i]
                if not all(_close_rel(u, v) for u, v in zip(actual, mirror)):
                    raise ValidationError(
                        f"entry ({j + 1},{i + 1}) = {actual} is not the inverse of "
                        f"entry ({i + 1},{j + 1}) = {self.entries[i][j]}"
                    )

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def scale(self) -> int:
        return self.neutral.scale

    def entry(self, i: int, j: int) -> TrFN:
        return self.entries[i][j]


def _check_scale(m: int) -> None:
    if not isinstance(m, int) or isinstance(m, bool) or m < 2:
        raise ValidationError(f"scale must be an integer >= 2, got {m!r}")


def phi(x: float, m: int) -> float:
    """Map a unit-interval score to the ratio scale: ``m ** (2x - 1)``."""
    _check_scale(m)
    x = float(x)
    if x < -ADDITIVE_TOL or x > 1.0 + ADDITIVE_TOL:
        raise ValidationError(f"phi expects a value in [0, 1], got {x}")
    x = min(max(x, 0.0), 1.0)
    return float(m) ** (2.0 * x - 1.0)


def phi_inv(y: float, m: int) -> float:
    """Inverse map, ``1/2 + log_m(y) / 2``, clamped against rounding dust."""
    _check_scale(m)
    y = float(y)
    lo = (1.0 / m) * (1.0 - MULTIPLICATIVE_RTOL)
    hi = m * (1.0 + MULTIPLICATIVE_RTOL)
    if y < lo or y > hi:
        raise ValidationError(f"phi_inv expects a value in [1/{m}, {m}], got {y}")
    x = 0.5 + 0.5 * math.log(y) / math.log(m)
    return min(max(x, 0.0), 1.0)


def _phi_trfn(t: TrFN, m: int) -> TrFN:
    return TrFN(phi(t.a, m), phi(t.b, m), phi(t.c, m), phi(t.d, m))


def _phi_inv_trfn(t: TrFN, m: int) -> TrFN:
    return TrFN(phi_inv(t.a, m), phi_inv(t.b, m), phi_inv(t.c, m), phi_inv(t.d, m))


def to_multiplicative(x: TrFPR, m: int) -> TrMPR:
    """Map every entry of an additive relation to the scale ``[1/m, m]``."""
    _check_scale(m)
    neutral = NeutralElement.multiplicative(_phi_trfn(x.neutral.value, m), m)
    entries = tuple(tuple(_phi_trfn(entry, m) for entry in row) for row in x.entries)
    return TrMPR(entries, neutral)


def to_additive(y: TrMPR) -> TrFPR:
    """Map a multiplicative relation back to the unit interval.

    The lower triangle is rebuilt as the negation of the mapped upper
    triangle and the diagonal is set to the mapped neutral element, which
    keeps the additive reciprocity identities exact instead of losing them
    to independent rounding of each entry.
    """
    m = y.neutral.scale
    s0 = y.neutral.value
    pa = phi_inv(s0.a, m)
    pb = min(phi_inv(s0.b, m), 0.5)
    pa = min(pa, pb)
    t0 = TrFN(pa, pb, 1.0 - pb, 1.0 - pa)
    neutral = NeutralElement.additive(t0)
    n = y.n
    grid: list[list[TrFN | None]] = [[None] * n for _ in range(n)]
    for i in range(n):
        grid[i][i] = t0
        for j in range(i + 1, n):
            upper = _phi_inv_trfn(y.entries[i][j], m)
            grid[i][j] = upper
            grid[j][i] = negate(upper)
    return TrFPR(tuple(tuple(row) for row in grid), neutral)


@dataclass(frozen=True)
class ConsistencyReport:
    """Result of a transitivity scan over all ordered index triples."""

    consistent: bool
    max_violation: float
    worst_triple: tuple[int, int, int]
    tol: float

    def describe(self) -> str:
        verdict = "consistent" if self.consistent else "inconsistent"
        i, j, k = self.worst_triple
        return (
            f"{verdict}; max violation {self.max_violation:.6g} "
            f"at triple ({i + 1}, {j + 1}, {k + 1})"
        )


def _scan_triples(entries, combine, neutral_value, tol) -> ConsistencyReport:
    n = len(entries)
    violations: list[tuple[float, int, int, int]] = []
    max_violation = 0.0
    for i in range(n):
        for j in range(n):
            lhs = combine(entries[i][j], neutral_value)
            for k in range(n):
                rhs = combine(entries[i][k], entries[k][j])
                violation = distance(lhs, rhs)
                violations.append((violation, i, j, k))
                if violation > max_violation:
                    max_violation = violation
    # Several triples usually attain the maximum up to rounding; report the
    # first (in index order) triple of three distinct indices among them,
    # since those are the informative ones, and fall back to the first
    # maximal triple of any shape.
    band = max(1e-15, 1e-9 * max_violation)
    worst = (0, 0, 0)
    for violation, i, j, k in violations:
        if violation >= max_violation - band and i != j and j != k and i != k:
            worst = (i, j, k)
            break
    else:
        for violation, i, j, k in violations:
            if violation >= max_violation - band:
                worst = (i, j, k)
                break
    return ConsistencyReport(max_violation <= tol, max_violation, worst, tol)


def check_consistency(x: TrFPR, tol: float = DEFAULT_CONSISTENCY_TOL) -> ConsistencyReport:
    """Scan all triples for additive transitivity ``x_ij + t0 = x_ik + x_kj``."""
    if tol < 0.0:
        raise ValidationError(f"tolerance must be non-negative, got {tol}")
    return _scan_triples(x.entries, add, x.neutral.value, tol)


def check_consistency_mult(y: TrMPR, tol: float = DEFAULT_CONSISTENCY_TOL) -> ConsistencyReport:
    """Scan all triples for multiplicative transitivity ``y_ij * s0 = y_ik * y_kj``."""
    if tol < 0.0:
        raise ValidationError(f"tolerance must be non-negative, got {tol}")
    return _scan_triples(y.entries, mul, y.neutral.value, tol)


def from_utilities(utilities: Sequence[TrFN], neutral: NeutralElement) -> TrFPR:
    """Rebuild the consistent relation a utility vector encodes.

    Entry ``(i, j)`` is ``u_i + (u_j negated) + t0 negated``, evaluated
    componentwise with the mirror pairing ``a <-> d`` and ``b <-> c``.  The
    utilities must share the neutral element's support and core spreads,
    otherwise no relation with that diagonal exists, and every produced
    component must land in ``[0, 1]``.
    """
    if neutral.kind != "additive":
        raise ValidationError("from_utilities needs an additive neutral element")
    utilities = tuple(utilities)
    if not utilities:
        raise ValidationError("from_utilities needs at least one utility")
    t0 = neutral.value
    support_spread = t0.d - t0.a
    core_spread = t0.c - t0.b
    for k, u in enumerate(utilities):
        if not isinstance(u, TrFN):
            raise ValidationError(f"utility {k + 1} is not a trapezoidal number")
        if abs((u.d - u.a) - support_spread) > 1e-9 or abs((u.c - u.b) - core_spread) > 1e-9:
            raise ValidationError(
                f"utility {k + 1} = {u} has spreads incompatible with the neutral "
                f"element {t0}; the rebuilt diagonal would not be neutral"
            )
    n = len(utilities)
    grid: list[list[TrFN]] = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(t0)
                continue
            ui, uj = utilities[i], utilities[j]
            comps = (
                ui.a + (1.0 - uj.d) - t0.a,
                ui.b + (1.0 - uj.c) - t0.b,
                ui.c + (1.0 - uj.b) - t0.c,
                ui.d + (1.0 - uj.a) - t0.d,
            )
            for value in comps:
                if value < -ADDITIVE_TOL or value > 1.0 + ADDITIVE_TOL:
                    raise OutOfUnitIntervalError(
                        f"entry ({i + 1},{j + 1}) component {value} leaves [0, 1]; "
                        f"the utilities are too spread out for this neutral element"
                    )
            comps = tuple(min(max(v, 0.0), 1.0) for v in comps)
            row.append(TrFN(*comps))
        grid.append(row)
    return TrFPR(tuple(tuple(row) for row in grid), neutral)
