"""Reading and writing JSON problem files.

A problem file is a JSON object with a ``kind`` of ``additive``,
``multiplicative``, or ``ahp``.  Every trapezoid is a 4-element array in
``[a, b, c, d]`` order.  Components may be plain numbers or strings:
``"1/3"`` is an exact fraction and ``"9^0.2"`` a power, both converted to
binary floating point once, which keeps scale values such as ninth roots
exact to the last ulp instead of accumulating decimal-literal error.

Field summary (see docs/file-format.md for the schema):

* common: ``kind``, ``n``, ``neutral``; optional ``sigma``,
  ``mag_weights``.
* additive: ``matrix`` (n rows of n trapezoids).
* multiplicative: ``scale`` plus ``matrix``.
* ahp: ``scale``, ``matrices`` (one per criterion), ``criteria_weights``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import ParseError, ValidationError
from .relations import NeutralElement, TrFPR, TrMPR
from .trfn import MagWeights, TrFN

__all__ = ["LoadedProblem", "load_problem", "save_problem", "parse_scalar", "relation_to_dict"]

KINDS = ("additive", "multiplicative", "ahp")


@dataclass(frozen=True)
class LoadedProblem:
    """A parsed problem file, with optional pieces left to the caller."""

    kind: str
    n: int
    scale: int | None
    neutral: NeutralElement
    relation: TrFPR | TrMPR | None
    matrices: tuple[TrMPR, ...] | None
    criteria_weights: tuple[float, ...] | None
    sigma: TrFN | None
    mag_weights: MagWeights | None


def parse_scalar(value, where: str) -> float:
    """Parse one numeric component: number, ``"p/q"`` or ``"base^exp"``."""
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected a number, got {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            if "^" in text:
                base_text, _, exp_text = text.partition("^")
                return float(base_text) ** float(exp_text)
            if "/" in text:
                return float(Fraction(text))
            return float(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"{where}: cannot parse {value!r} as a number") from exc
    raise ParseError(f"{where}: expected a number, got {type(value).__name__}")


def _parse_trfn(value, where: str) -> TrFN:
    if not isinstance(value, (list, tuple)) or len(value) != 4:
        raise ParseError(f"{where}: expected a 4-element array [a, b, c, d]")
    comps = tuple(parse_scalar(v, where) for v in value)
    try:
        return TrFN(*comps)
    except ValidationError as exc:
        raise ValidationError(f"{where}: {exc}") from exc


def _parse_matrix(value, n: int, where: str) -> tuple[tuple[TrFN, ...], ...]:
    if not isinstance(value, list) or len(value) != n:
        raise ParseError(f"{where}: expected {n} rows")
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"{where}: row {i + 1} must hold {n} entries")
        rows.append(
            tuple(
                _parse_trfn(entry, f"{where} entry ({i + 1},{j + 1})")
                for j, entry in enumerate(row)
            )
        )
    return tuple(rows)


def _require(data: dict, key: str):
    if key not in data:
        raise ParseError(f"missing required field {key!r}")
    return data[key]


def _parse_int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{where}: expected an integer, got {value!r}")
    return value


def load_problem(path) -> LoadedProblem:
    """Load and validate one problem file.

    Structural problems (bad JSON, wrong types, missing fields) raise
    ParseError; semantically invalid data (broken reciprocity, a diagonal
    that is not the neutral element, out-of-range entries) raises
    ValidationError with 1-based coordinates in the message.
    """
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise ParseError("top level must be a JSON object")
    kind = _require(data, "kind")
    if kind not in KINDS:
        raise ParseError(f"kind must be one of {', '.join(KINDS)}, got {kind!r}")
    n = _parse_int(_require(data, "n"), "n")
    if n < 1:
        raise ParseError(f"n must be positive, got {n}")
    neutral_value = _parse_trfn(_require(data, "neutral"), "neutral")

    sigma = _parse_trfn(data["sigma"], "sigma") if "sigma" in data else None
    mag_weights = None
    if "mag_weights" in data:
        raw = data["mag_weights"]
        if not isinstance(raw, list) or len(raw) != 2:
            raise ParseError("mag_weights: expected a 2-element array [w1, w2]")
        try:
            mag_weights = MagWeights(
                parse_scalar(raw[0], "mag_weights"), parse_scalar(raw[1], "mag_weights")
            )
        except ValidationError as exc:
            raise ValidationError(f"mag_weights: {exc}") from exc

    scale = None
    relation: TrFPR | TrMPR | None = None
    matrices = None
    criteria_weights = None
    if kind == "additive":
        try:
            neutral = NeutralElement.additive(neutral_value)
        except ValidationError as exc:
            raise ValidationError(f"neutral: {exc}") from exc
        relation = TrFPR(_parse_matrix(_require(data, "matrix"), n, "matrix"), neutral)
    else:
        scale = _parse_int(_require(data, "scale"), "scale")
        try:
            neutral = NeutralElement.multiplicative(neutral_value, scale)
        except ValidationError as exc:
            raise ValidationError(f"neutral: {exc}") from exc
        if kind == "multiplicative":
            relation = TrMPR(_parse_matrix(_require(data, "matrix"), n, "matrix"), neutral)
        else:
            raw_matrices = _require(data, "matrices")
            if not isinstance(raw_matrices, list) or not raw_matrices:
                raise ParseError("matrices: expected a non-empty array of matrices")
            parsed = []
            for k, raw in enumerate(raw_matrices):
                where = f"matrix {k + 1}"
                try:
                    parsed.append(TrMPR(_parse_matrix(raw, n, where), neutral))
                except ValidationError as exc:
                    raise ValidationError(f"{where}: {exc}") from exc
            matrices = tuple(parsed)
            raw_weights = _require(data, "criteria_weights")
            if not isinstance(raw_weights, list) or len(raw_weights) != len(matrices):
                raise ParseError("criteria_weights: expected one weight per matrix")
            criteria_weights = tuple(
                parse_scalar(w, f"criteria_weights[{k}]") for k, w in enumerate(raw_weights)
            )
            for k, w in enumerate(criteria_weights):
                if w < 0.0:
                    raise ValidationError(f"criteria_weights[{k}]: negative weight {w}")
            if abs(sum(criteria_weights) - 1.0) > 1e-12:
                raise ValidationError(
                    f"criteria_weights must sum to 1, got {sum(criteria_weights)}"
                )
    return LoadedProblem(
        kind=kind,
        n=n,
        scale=scale,
        neutral=neutral,
        relation=relation,
        matrices=matrices,
        criteria_weights=criteria_weights,
        sigma=sigma,
        mag_weights=mag_weights,
    )


def relation_to_dict(relation: TrFPR | TrMPR) -> dict:
    """Serialize a relation into the problem-file structure."""
    if isinstance(relation, TrFPR):
        head: dict = {"kind": "additive", "n": relation.n}
    elif isinstance(relation, TrMPR):
        head = {"kind": "multiplicative", "n": relation.n, "scale": relation.scale}
    else:
        raise ValidationError("only additive and multiplicative relations can be serialized")
    head["neutral"] = list(relation.neutral.value.components)
    head["matrix"] = [
        [list(entry.components) for entry in row] for row in relation.entries
    ]
    return head


def save_problem(path, relation: TrFPR | TrMPR) -> None:
    """Write a relation as a problem file (full float precision)."""
    Path(path).write_text(json.dumps(relation_to_dict(relation), indent=2) + "\n")
