"""Empirical scalarized CDFs and the cone-restricted distribution function
used to rank alternatives, with an independent brute-force oracle.

The ranking value of a point z is the smallest fraction of sample points
weakly below z along any admissible weighting direction.  Counts are
piecewise constant on the arrangement of hyperplanes {v : v . (x_i - z) = 0}
restricted to the importance cone, so the infimum is computed exactly by
probing one direction per arrangement cell: each critical normal is
perturbed into both adjacent open cells by half the smallest nonzero angular
gap, and the extreme rays are always probed as well.

A strict-counting supremum counterpart decides upper-quantile membership:
there the largest fraction of sample points strictly below z is wanted, and
the same cell decomposition is exact.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cones import DEFAULT_TOLERANCE, ConvexCone, contains, is_pointed
from .model import EvaluationMatrix

__all__ = [
    "Rank",
    "DirectionWitness",
    "RankResult",
    "scalarized_cdf",
    "cone_distribution",
    "strict_exceedance_sup",
    "critical_directions",
    "oracle_cone_distribution",
    "oracle_strict_exceedance_sup",
    "rank_alternatives",
]


@dataclass(frozen=True)
class Rank:
    """A rank value k/m where m is the sample size."""

    count: int
    sample_size: int

    def __post_init__(self):
        if not 0 <= self.count <= self.sample_size:
            raise ValueError("rank count must lie in {0, ..., m}")

    @property
    def value(self) -> Fraction:
        return Fraction(self.count, self.sample_size)

    @property
    def decimal(self) -> float:
        return self.count / self.sample_size

    def __str__(self) -> str:
        return f"{self.count}/{self.sample_size}"


@dataclass(frozen=True, eq=False)
class DirectionWitness:
    """A direction in the importance cone achieving the reported count."""

    direction: np.ndarray
    count: int

    def __post_init__(self):
        direction = np.asarray(self.direction, dtype=float)
        object.__setattr__(self, "direction", direction)


@dataclass(frozen=True)
class RankResult:
    """Per-alternative rank values and their witnessing directions."""

    ranks: dict[str, Rank]
    witnesses: dict[str, DirectionWitness]
    sample_size: int

    def sorted_ids(self) -> list[str]:
        """Alternative ids by descending rank, ties broken by the original
        alternative order."""
        order = {aid: i for i, aid in enumerate(self.ranks)}
        return sorted(self.ranks, key=lambda aid: (-self.ranks[aid].count, order[aid]))


# ---------------------------------------------------------------------------
# shared helpers


def _as_point(z, d: int) -> np.ndarray:
    z = np.asarray(z, dtype=float)
    if z.shape != (d,):
        raise ValueError(f"expected a point of dimension {d}, got shape {z.shape}")
    return z


def _deltas(X: EvaluationMatrix, z: np.ndarray) -> np.ndarray:
    """Row i holds x_i - z, shape (m, d)."""
    return X.as_array().T - z


def _require_importance_cone(importance: ConvexCone, d: int) -> None:
    if importance.dim != d:
        raise ValueError(f"cone dimension {importance.dim} does not match data dimension {d}")
    if len(importance.generators) == 0 or not is_pointed(importance):
        raise ValueError("invalid importance cone")


def _planar_arc_of(importance: ConvexCone) -> tuple[float, float]:
    """Start angle and span of a pointed planar cone."""
    from .cones import _planar_arc  # shared internal helper

    if len(importance.generators) == 1:
        ray = importance.generators[0]
        return math.atan2(ray[1], ray[0]), 0.0
    start, span, _, _ = _planar_arc(importance.generators)
    return start, span


def _weak_counts(dirs: np.ndarray, deltas: np.ndarray, tol: float) -> np.ndarray:
    return (dirs @ deltas.T <= tol).sum(axis=1)


def _strict_counts(dirs: np.ndarray, deltas: np.ndarray, tol: float) -> np.ndarray:
    return (dirs @ deltas.T < -tol).sum(axis=1)


# ---------------------------------------------------------------------------
# scalarized CDF


def scalarized_cdf(X: EvaluationMatrix, v, z, tol: float = DEFAULT_TOLERANCE) -> Rank:
    """Fraction of sample points whose projection on v does not exceed that
    of z (weak inequality, evaluated to tolerance on the unit-normalized
    direction)."""
    v = np.asarray(v, dtype=float)
    norm = np.linalg.norm(v)
    if norm <= tol:
        raise ValueError("zero direction")
    z = _as_point(z, X.d)
    if v.shape != (X.d,):
        raise ValueError("direction dimension mismatch")
    deltas = _deltas(X, z)
    count = int((deltas @ (v / norm) <= tol).sum())
    return Rank(count, X.m)


# ---------------------------------------------------------------------------
# exact direction enumeration


def _planar_candidates(
    deltas: np.ndarray, importance: ConvexCone, tol: float
) -> np.ndarray:
    start, span = _planar_arc_of(importance)
    if span <= 1e-12:
        return np.array([[math.cos(start), math.sin(start)]])

    offsets: list[float] = []
    for delta in deltas:
        if np.linalg.norm(delta) <= tol:
            continue
        base = math.atan2(delta[1], delta[0])
        for normal_angle in (base + math.pi / 2.0, base - math.pi / 2.0):
            t = (normal_angle - start) % (2.0 * math.pi)
            if t > span:
                # Out-of-arc normal: clamp to the nearer extreme ray.  The
                # probes perturbed off the clamped angle still land in the
                # end cells, so clamping never loses a cell.
                t = 0.0 if (2.0 * math.pi - t) < (t - span) else span
            offsets.append(t)

    marks = sorted(set([0.0, span] + offsets))
    gaps = [b - a for a, b in zip(marks, marks[1:]) if b - a > 1e-12]
    ts = {0.0, span}
    if gaps:
        step = min(gaps) / 2.0
        for t in offsets:
            for probe in (t - step, t + step):
                if 0.0 <= probe <= span:
                    ts.add(probe)
    ordered = sorted(ts)
    dirs = np.array([[math.cos(start + t), math.sin(start + t)] for t in ordered])
    return dirs


def _general_candidates(
    deltas: np.ndarray, importance: ConvexCone, tol: float
) -> np.ndarray:
    """Candidate directions for dimensions above two.

    Every hyperplane spanned by up to d-1 difference vectors and/or cone
    facet normals contributes its unit normal, perturbed into every adjacent
    arrangement cell; all extreme rays and an interior ray are always
    probed.  Tight facet rows are only ever perturbed into the cone: a
    candidate that drifts outside by less than the counting tolerance could
    otherwise break ties of hyperplanes that support the cone.  Exhaustive
    at desk scale only.
    """
    dim = importance.dim
    gens = importance.generators
    base: list[np.ndarray] = [g for g in gens]
    interior = gens.sum(axis=0)
    if np.linalg.norm(interior) > tol:
        base.append(interior / np.linalg.norm(interior))
    candidates: list[np.ndarray] = []

    rows = [d / np.linalg.norm(d) for d in deltas if np.linalg.norm(d) > tol]
    n_delta_rows = len(rows)
    rows += [f for f in importance.facet_normals]
    if not rows or dim < 2:
        return _finalize_candidates(base, candidates, importance)
    normal_rows = np.array(rows)

    for idx in itertools.combinations(range(len(normal_rows)), dim - 1):
        M = normal_rows[list(idx)]
        _, svals, vt = np.linalg.svd(M)
        rank = int((svals > 1e-9).sum())
        if rank < dim - 1:
            continue
        axis = vt[-1]
        try:
            dual_basis = np.linalg.pinv(M)  # columns w_j with M @ w_j = e_j
        except np.linalg.LinAlgError:
            continue
        others = np.delete(normal_rows, list(idx), axis=0)
        sign_choices = [
            (-1.0, 1.0) if row < n_delta_rows else (1.0,) for row in idx
        ]
        for u in (axis, -axis):
            for signs in itertools.product(*sign_choices):
                step = dual_basis @ np.array(signs)
                step_norm = np.linalg.norm(step)
                if step_norm <= tol:
                    continue
                eps = _safe_step(u, step, others, tol)
                cand = u + eps * step
                norm = np.linalg.norm(cand)
                if norm <= tol:
                    continue
                candidates.append(cand / norm)
    return _finalize_candidates(base, candidates, importance)


def _safe_step(u: np.ndarray, step: np.ndarray, others: np.ndarray, tol: float) -> float:
    """Perturbation size that keeps every non-tight constraint on its side."""
    eps = 1e-3 / max(np.linalg.norm(step), 1.0)
    if len(others):
        slack = others @ u
        effect = np.abs(others @ step)
        for s, e in zip(slack, effect):
            if abs(s) > tol and e > tol:
                eps = min(eps, abs(s) / (2.0 * e))
    return eps


# Perturbed-candidate admission is far stricter than the counting
# tolerance: anything beyond float noise outside the cone could report
# counts no admissible direction attains.  Generators and the interior ray
# are cone members by construction and bypass the guard.
_MEMBERSHIP_GUARD = 1e-12


def _finalize_candidates(
    base: list[np.ndarray], candidates: list[np.ndarray], importance: ConvexCone
) -> np.ndarray:
    kept = base + [
        c for c in candidates if contains(importance, c, tol=_MEMBERSHIP_GUARD)
    ]
    # Deduplicate without rounding: even sub-1e-9 coordinate shifts can tip
    # ties against hyperplanes that support the cone.
    kept.sort(key=tuple)
    out: list[np.ndarray] = []
    for cand in kept:
        if not out or np.linalg.norm(cand - out[-1]) > 1e-9:
            out.append(cand)
    return np.array(out)


def critical_directions(
    X: EvaluationMatrix, importance: ConvexCone, z, tol: float = DEFAULT_TOLERANCE
) -> np.ndarray:
    """Finite direction set sufficient for exact evaluation of the counting
    infimum/supremum at z, ordered by the tie-breaking rule (angle from the
    lower extreme ray in the plane, lexicographic otherwise)."""
    z = _as_point(z, X.d)
    _require_importance_cone(importance, X.d)
    deltas = _deltas(X, z)
    if X.d == 2:
        return _planar_candidates(deltas, importance, tol)
    if X.d == 1:
        return importance.generators.copy()
    return _general_candidates(deltas, importance, tol)


# ---------------------------------------------------------------------------
# exact rank functions


def cone_distribution(
    X: EvaluationMatrix, importance: ConvexCone, z, tol: float = DEFAULT_TOLERANCE
) -> tuple[Rank, DirectionWitness]:
    """Smallest fraction of sample points weakly below z over all directions
    in the importance cone, together with a direction achieving it.

    Sample points equal to z count under every direction.  Ties between
    minimizing cells resolve to the first candidate in critical-direction
    order.
    """
    z = _as_point(z, X.d)
    _require_importance_cone(importance, X.d)
    dirs = critical_directions(X, importance, z, tol=tol)
    deltas = _deltas(X, z)
    counts = _weak_counts(dirs, deltas, tol)
    best = int(np.argmin(counts))
    rank = Rank(int(counts[best]), X.m)
    return rank, DirectionWitness(dirs[best], rank.count)


def strict_exceedance_sup(
    X: EvaluationMatrix, importance: ConvexCone, z, tol: float = DEFAULT_TOLERANCE
) -> tuple[Rank, DirectionWitness]:
    """Largest fraction of sample points strictly below z over all
    directions in the importance cone.

    Membership in the upper quantile at level p is equivalent to this value
    being at most p.  Sample points equal to z never count.
    """
    z = _as_point(z, X.d)
    _require_importance_cone(importance, X.d)
    dirs = critical_directions(X, importance, z, tol=tol)
    deltas = _deltas(X, z)
    counts = _strict_counts(dirs, deltas, tol)
    best = int(np.argmax(counts))
    rank = Rank(int(counts[best]), X.m)
    return rank, DirectionWitness(dirs[best], rank.count)


# ---------------------------------------------------------------------------
# brute-force oracle (two criteria only)


def _oracle_directions(importance: ConvexCone, resolution: int) -> np.ndarray:
    if importance.dim != 2:
        raise ValueError("the direction-grid oracle supports 2 criteria only")
    if resolution < 3:
        raise ValueError("oracle resolution must be at least 3")
    start, span = _planar_arc_of(importance)
    ts = np.linspace(0.0, span, resolution)
    return np.column_stack([np.cos(start + ts), np.sin(start + ts)])


def oracle_cone_distribution(
    X: EvaluationMatrix, importance: ConvexCone, z, resolution: int,
    tol: float = DEFAULT_TOLERANCE,
) -> Rank:
    """Reference value: minimum of the scalarized CDF over `resolution`
    directions uniformly spaced in angle across the cone, endpoints
    included.  Test support only."""
    z = _as_point(z, X.d)
    _require_importance_cone(importance, X.d)
    dirs = _oracle_directions(importance, resolution)
    counts = _weak_counts(dirs, _deltas(X, z), tol)
    return Rank(int(counts.min()), X.m)


def oracle_strict_exceedance_sup(
    X: EvaluationMatrix, importance: ConvexCone, z, resolution: int,
    tol: float = DEFAULT_TOLERANCE,
) -> Rank:
    """Strict-count counterpart of the grid oracle: maximum fraction of
    sample points strictly below z over the direction grid."""
    z = _as_point(z, X.d)
    _require_importance_cone(importance, X.d)
    dirs = _oracle_directions(importance, resolution)
    counts = _strict_counts(dirs, _deltas(X, z), tol)
    return Rank(int(counts.max()), X.m)


# ---------------------------------------------------------------------------
# aggregation


def rank_alternatives(
    X: EvaluationMatrix,
    importance: ConvexCone,
    alternative_ids=None,
    tol: float = DEFAULT_TOLERANCE,
) -> RankResult:
    """Cone-distribution value and witness for every alternative column."""
    if alternative_ids is None:
        alternative_ids = [f"a{i + 1}" for i in range(X.m)]
    ids = list(alternative_ids)
    if len(ids) != X.m:
        raise ValueError("one id per alternative column is required")
    ranks: dict[str, Rank] = {}
    witnesses: dict[str, DirectionWitness] = {}
    for aid, col in zip(ids, X.columns):
        rank, witness = cone_distribution(X, importance, np.array(col), tol=tol)
        ranks[aid] = rank
        witnesses[aid] = witness
    return RankResult(ranks, witnesses, X.m)
