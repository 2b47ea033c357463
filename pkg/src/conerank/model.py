"""Decision problem data model: criteria, alternatives, judge panel, and the
evaluation matrix, plus ingestion from JSON and CSV.

Evaluations are real numbers on a ratio/interval scale supplied by a single
external source; each alternative carries uniform probability weight 1/m.
All types are immutable after construction.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Criterion",
    "Alternative",
    "ImportanceVector",
    "JudgePanel",
    "EvaluationMatrix",
    "DecisionProblem",
    "ProblemFormatError",
    "parse_problem",
    "parse_problem_csv",
    "load_problem",
    "serialize_problem",
    "validate_problem",
]


class ProblemFormatError(ValueError):
    """Raised when a problem document cannot be parsed into a valid
    DecisionProblem; the message carries the offending location."""


@dataclass(frozen=True)
class Criterion:
    id: str
    label: str
    index: int


@dataclass(frozen=True)
class Alternative:
    id: str
    label: str
    index: int


@dataclass(frozen=True)
class ImportanceVector:
    """One judge's nonnegative per-criterion weights on a ratio scale."""

    judge_id: str
    weights: tuple[float, ...]


@dataclass(frozen=True)
class JudgePanel:
    judges: tuple[ImportanceVector, ...]

    @property
    def n(self) -> int:
        return len(self.judges)

    @property
    def d(self) -> int:
        return len(self.judges[0].weights) if self.judges else 0

    def weight_matrix(self) -> np.ndarray:
        return np.array([j.weights for j in self.judges], dtype=float)

    def subset(self, judge_ids) -> "JudgePanel":
        wanted = list(judge_ids)
        by_id = {j.judge_id: j for j in self.judges}
        missing = [jid for jid in wanted if jid not in by_id]
        if missing:
            raise KeyError(f"unknown judge id(s): {', '.join(missing)}")
        return JudgePanel(tuple(by_id[jid] for jid in wanted))


@dataclass(frozen=True)
class EvaluationMatrix:
    """Criteria evaluations, one column per alternative.

    ``columns[i]`` is the d-vector of criteria values for alternative i.
    The criterion count is kept explicitly so that an empty matrix is still
    representable (and reportable as a violation).
    """

    columns: tuple[tuple[float, ...], ...]
    d: int

    @property
    def m(self) -> int:
        return len(self.columns)

    def as_array(self) -> np.ndarray:
        """Matrix with shape (d, m)."""
        if not self.columns:
            return np.zeros((self.d, 0))
        return np.array(self.columns, dtype=float).T

    def column(self, i: int) -> np.ndarray:
        return np.array(self.columns[i], dtype=float)

    @classmethod
    def from_array(cls, matrix) -> "EvaluationMatrix":
        arr = np.asarray(matrix, dtype=float)
        if arr.ndim != 2:
            raise ValueError("evaluation matrix must be two-dimensional")
        return cls(tuple(tuple(col) for col in arr.T.tolist()), d=arr.shape[0])


@dataclass(frozen=True)
class DecisionProblem:
    criteria: tuple[Criterion, ...]
    alternatives: tuple[Alternative, ...]
    panel: JudgePanel
    evaluations: EvaluationMatrix

    @property
    def d(self) -> int:
        return len(self.criteria)

    @property
    def m(self) -> int:
        return len(self.alternatives)

    @property
    def n(self) -> int:
        return self.panel.n

    def alternative_ids(self) -> list[str]:
        return [a.id for a in self.alternatives]

    def judge_ids(self) -> list[str]:
        return [j.judge_id for j in self.panel.judges]


# ---------------------------------------------------------------------------
# validation


def validate_problem(p: DecisionProblem) -> list[str]:
    """Every invariant violation in the problem, as human-readable strings.

    Returns an empty list when the problem is valid.  Never raises on
    malformed but type-complete input.
    """
    violations: list[str] = []

    if len(p.criteria) == 0:
        violations.append("empty criterion set")
    if len(p.alternatives) == 0:
        violations.append("empty alternative set")
    if p.panel.n == 0:
        violations.append("empty judge panel")

    ids = [c.id for c in p.criteria]
    if len(set(ids)) != len(ids):
        violations.append("duplicate criterion id")
    ids = [a.id for a in p.alternatives]
    if len(set(ids)) != len(ids):
        violations.append("duplicate alternative id")

    for seq, kind in ((p.criteria, "criterion"), (p.alternatives, "alternative")):
        for pos, item in enumerate(seq):
            if item.index != pos:
                violations.append(
                    f"{kind} index not bijective: {item.id!r} at position {pos} "
                    f"has index {item.index}"
                )

    d = len(p.criteria)
    if p.evaluations.d != d:
        violations.append(
            f"dimension mismatch: {d} criteria but evaluation columns have "
            f"{p.evaluations.d} entries"
        )
    if p.evaluations.m != len(p.alternatives):
        violations.append(
            f"dimension mismatch: {len(p.alternatives)} alternatives but "
            f"{p.evaluations.m} evaluation columns"
        )
    for i, col in enumerate(p.evaluations.columns):
        if len(col) != p.evaluations.d:
            violations.append(f"evaluation column {i} has {len(col)} entries")
        elif not all(math.isfinite(v) for v in col):
            violations.append(f"non-finite value in evaluation column {i}")

    for j, judge in enumerate(p.panel.judges):
        if len(judge.weights) != d:
            violations.append(
                f"dimension mismatch: judge {judge.judge_id!r} has "
                f"{len(judge.weights)} weights for {d} criteria"
            )
            continue
        if any(not math.isfinite(w) for w in judge.weights):
            violations.append(f"non-finite weight for judge {judge.judge_id!r}")
        elif any(w < 0 for w in judge.weights):
            violations.append(f"negative weight for judge {judge.judge_id!r}")
        elif all(w == 0 for w in judge.weights):
            violations.append(f"all-zero importance vector for judge {judge.judge_id!r}")

    return violations


# ---------------------------------------------------------------------------
# parsing


def _coerce_named(entry, pos: int, kind: str) -> tuple[str, str]:
    if isinstance(entry, str):
        return entry, entry
    if isinstance(entry, dict) and "id" in entry:
        return str(entry["id"]), str(entry.get("label", entry["id"]))
    raise ProblemFormatError(
        f"{kind} #{pos + 1} must be a string id or an object with an 'id' field"
    )


def _coerce_number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ProblemFormatError(f"non-numeric cell at {where}: {value!r}")
    out = float(value)
    if not math.isfinite(out):
        raise ProblemFormatError(f"non-finite cell at {where}: {value!r}")
    return out


def _assemble(
    criteria: list[tuple[str, str]],
    alternatives: list[tuple[str, str]],
    judge_rows: list[list[float]],
    columns: list[list[float]],
    judge_ids: list[str] | None = None,
) -> DecisionProblem:
    crit = tuple(
        Criterion(cid, label, i) for i, (cid, label) in enumerate(criteria)
    )
    alts = tuple(
        Alternative(aid, label, i) for i, (aid, label) in enumerate(alternatives)
    )
    if judge_ids is None:
        judge_ids = [f"j{i + 1}" for i in range(len(judge_rows))]
    panel = JudgePanel(
        tuple(
            ImportanceVector(jid, tuple(row))
            for jid, row in zip(judge_ids, judge_rows)
        )
    )
    evaluations = EvaluationMatrix(tuple(tuple(c) for c in columns), d=len(crit))
    problem = DecisionProblem(crit, alts, panel, evaluations)
    violations = validate_problem(problem)
    if violations:
        raise ProblemFormatError("; ".join(violations))
    return problem


def parse_problem(source: str) -> DecisionProblem:
    """Parse a JSON problem document.

    Expected shape::

        {
          "criteria": ["c1", "c2"],
          "alternatives": ["a1", ..., "a5"],
          "judges": [[2, 1], [1, 1], [1, 2]],
          "evaluations": [[1, 5], [2, 3], [3, 2], [5, 1], [5, 5]]
        }

    with one evaluation column per alternative, in declaration order, and
    judges listed in panel order.  Criteria and alternatives may also be
    objects with ``id`` and ``label`` fields.

    Raises ProblemFormatError with the offending row/column on dimension
    mismatches, negative or all-zero judge weights, non-numeric cells, and
    duplicate ids.
    """
    try:
        data = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(f"malformed JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ProblemFormatError("problem document must be a JSON object")
    for key in ("criteria", "alternatives", "judges", "evaluations"):
        if key not in data:
            raise ProblemFormatError(f"missing field {key!r}")
        if not isinstance(data[key], list):
            raise ProblemFormatError(f"field {key!r} must be an array")

    criteria = [
        _coerce_named(entry, i, "criterion") for i, entry in enumerate(data["criteria"])
    ]
    alternatives = [
        _coerce_named(entry, i, "alternative")
        for i, entry in enumerate(data["alternatives"])
    ]

    judge_rows = []
    for j, row in enumerate(data["judges"]):
        if not isinstance(row, list):
            raise ProblemFormatError(f"judge #{j + 1} must be an array of weights")
        judge_rows.append(
            [_coerce_number(w, f"judges row {j + 1}, column {k + 1}") for k, w in enumerate(row)]
        )

    columns = []
    for i, col in enumerate(data["evaluations"]):
        if not isinstance(col, list):
            raise ProblemFormatError(
                f"evaluation column #{i + 1} must be an array of numbers"
            )
        columns.append(
            [
                _coerce_number(v, f"evaluations column {i + 1}, row {k + 1}")
                for k, v in enumerate(col)
            ]
        )

    return _assemble(criteria, alternatives, judge_rows, columns)


def parse_problem_csv(evaluations_csv: str, judges_csv: str) -> DecisionProblem:
    """Parse the CSV pair format.

    ``evaluations.csv``: header row = alternative ids (first header cell is
    ignored), first column = criterion ids, one row per criterion.
    ``judges.csv``: header = criterion ids, one row per judge.  Decimal
    point, UTF-8, comma separator.
    """
    eval_rows = list(csv.reader(io.StringIO(evaluations_csv)))
    if not eval_rows or len(eval_rows[0]) < 2:
        raise ProblemFormatError(
            "evaluations.csv needs a header of alternative ids and at least one row"
        )
    alternatives = [(cell.strip(), cell.strip()) for cell in eval_rows[0][1:]]
    criteria: list[tuple[str, str]] = []
    matrix_rows: list[list[float]] = []
    for r, row in enumerate(eval_rows[1:], start=2):
        if not row or not any(cell.strip() for cell in row):
            continue
        if len(row) != len(alternatives) + 1:
            raise ProblemFormatError(
                f"evaluations.csv row {r} has {len(row) - 1} cells for "
                f"{len(alternatives)} alternatives"
            )
        criteria.append((row[0].strip(), row[0].strip()))
        values = []
        for c, cell in enumerate(row[1:], start=2):
            try:
                values.append(float(cell))
            except ValueError:
                raise ProblemFormatError(
                    f"non-numeric cell at evaluations.csv row {r}, column {c}: {cell!r}"
                ) from None
        matrix_rows.append(values)

    judge_rows_raw = list(csv.reader(io.StringIO(judges_csv)))
    if not judge_rows_raw:
        raise ProblemFormatError("judges.csv is empty")
    header = [cell.strip() for cell in judge_rows_raw[0]]
    criterion_ids = [cid for cid, _ in criteria]
    if sorted(header) != sorted(criterion_ids):
        raise ProblemFormatError(
            "judges.csv header does not match the criterion ids in evaluations.csv"
        )
    reorder = [header.index(cid) for cid in criterion_ids]
    judge_rows: list[list[float]] = []
    for r, row in enumerate(judge_rows_raw[1:], start=2):
        if not row or not any(cell.strip() for cell in row):
            continue
        if len(row) != len(header):
            raise ProblemFormatError(
                f"judges.csv row {r} has {len(row)} cells for {len(header)} criteria"
            )
        try:
            raw = [float(cell) for cell in row]
        except ValueError:
            raise ProblemFormatError(
                f"non-numeric cell in judges.csv row {r}"
            ) from None
        judge_rows.append([raw[k] for k in reorder])

    columns = [list(col) for col in zip(*matrix_rows)] if matrix_rows else []
    return _assemble(criteria, alternatives, judge_rows, columns)


def load_problem(path) -> DecisionProblem:
    """Load a problem from a ``.json`` file or from a directory holding the
    ``evaluations.csv`` / ``judges.csv`` pair."""
    import os

    if os.path.isdir(path):
        eval_path = os.path.join(path, "evaluations.csv")
        judges_path = os.path.join(path, "judges.csv")
        for required in (eval_path, judges_path):
            if not os.path.exists(required):
                raise ProblemFormatError(f"missing {os.path.basename(required)} in {path}")
        with open(eval_path, encoding="utf-8") as fh:
            evaluations_csv = fh.read()
        with open(judges_path, encoding="utf-8") as fh:
            judges_csv = fh.read()
        return parse_problem_csv(evaluations_csv, judges_csv)
    with open(path, encoding="utf-8") as fh:
        return parse_problem(fh.read())


def serialize_problem(p: DecisionProblem) -> str:
    """JSON document that parses back to an identical problem."""
    payload = {
        "criteria": [{"id": c.id, "label": c.label} for c in p.criteria],
        "alternatives": [{"id": a.id, "label": a.label} for a in p.alternatives],
        "judges": [list(j.weights) for j in p.panel.judges],
        "evaluations": [list(col) for col in p.evaluations.columns],
    }
    return json.dumps(payload, indent=2)
