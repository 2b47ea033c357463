"""Set-valued quantiles: per-direction quantile halfspaces, cone-quantile
membership, the four-way classification of alternatives, and clipped 2D
region geometry for plotting.

For a single direction v the lower quantile at level p is the upward
halfspace at the ceil(m*p)-th smallest projection; the upper quantile is the
downward halfspace at the (floor(m*p)+1)-th smallest projection (strict
counting makes its boundary admissible).  The cone versions intersect these
halfspaces over every direction of the importance cone, which reduces to the
counting functions of the distribution module.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .cones import DEFAULT_TOLERANCE, ConvexCone
from .distribution import (
    _planar_arc_of,
    _require_importance_cone,
    cone_distribution,
    strict_exceedance_sup,
)
from .model import EvaluationMatrix

__all__ = [
    "QuantileHalfspace",
    "QuantileVerdict",
    "QuantileRegion2D",
    "LABELS",
    "lower_v_quantile",
    "upper_v_quantile",
    "lower_quantile_membership",
    "upper_quantile_membership",
    "classify",
    "quantile_region_2d",
    "order_statistic_directions",
    "polygon_area",
    "polygon_intersection",
]

LABELS = ("recommended", "non_advisable", "neutral", "indeterminate")

# Absolute slack when comparing integer counts against m*p, absorbing float
# noise in products like 5 * 0.8.
_COUNT_SNAP = 1e-9


def _check_p(p: float) -> float:
    p = float(p)
    if not 0.0 < p < 1.0:
        raise ValueError(f"rank level p must lie in the open interval (0, 1), got {p}")
    return p


def _snap(x: float) -> float:
    nearest = round(x)
    return float(nearest) if abs(x - nearest) <= _COUNT_SNAP else x


@dataclass(frozen=True, eq=False)
class QuantileHalfspace:
    """One direction's quantile halfspace.

    ``side="lower"`` denotes {z : direction . z >= threshold} (directed
    upward along the direction), ``side="upper"`` denotes
    {z : direction . z <= threshold}.  The direction is kept in the caller's
    scale; the threshold is expressed in the same scale.  An infinite upper
    threshold denotes the whole space.
    """

    direction: np.ndarray
    threshold: float
    side: str

    def __post_init__(self):
        direction = np.asarray(self.direction, dtype=float)
        if direction.ndim != 1 or np.linalg.norm(direction) <= DEFAULT_TOLERANCE:
            raise ValueError("quantile halfspace direction must be nonzero")
        if self.side not in ("lower", "upper"):
            raise ValueError("side must be 'lower' or 'upper'")
        object.__setattr__(self, "direction", direction)

    def contains(self, z, tol: float = DEFAULT_TOLERANCE) -> bool:
        if math.isinf(self.threshold):
            return True
        z = np.asarray(z, dtype=float)
        norm = np.linalg.norm(self.direction)
        value = float(self.direction @ z) / norm
        bound = self.threshold / norm
        if self.side == "lower":
            return value >= bound - tol
        return value <= bound + tol


@dataclass(frozen=True)
class QuantileVerdict:
    """Joint quantile membership of one alternative and the derived label."""

    alternative_id: str
    in_lower: bool
    in_upper: bool
    label: str

    @staticmethod
    def from_membership(alternative_id: str, in_lower: bool, in_upper: bool) -> "QuantileVerdict":
        if in_lower and in_upper:
            label = "neutral"
        elif in_lower:
            label = "recommended"
        elif in_upper:
            label = "non_advisable"
        else:
            label = "indeterminate"
        return QuantileVerdict(alternative_id, in_lower, in_upper, label)


@dataclass(frozen=True)
class QuantileRegion2D:
    """Lower/upper quantile sets clipped to a bounding box, as convex
    polygons (counter-clockwise vertex lists, empty when the set misses the
    box)."""

    p: float
    lower_polygon: tuple[tuple[float, float], ...]
    upper_polygon: tuple[tuple[float, float], ...]
    bbox: tuple[float, float, float, float]


# ---------------------------------------------------------------------------
# single-direction quantiles


def _sorted_projections(X: EvaluationMatrix, v: np.ndarray) -> np.ndarray:
    return np.sort(X.as_array().T @ v)


def lower_v_quantile(X: EvaluationMatrix, v, p: float) -> QuantileHalfspace:
    """Upward halfspace containing exactly the points weakly dominating at
    least a p-fraction of the sample along v."""
    p = _check_p(p)
    v = np.asarray(v, dtype=float)
    if np.linalg.norm(v) <= DEFAULT_TOLERANCE:
        raise ValueError("zero direction")
    values = _sorted_projections(X, v)
    k = math.ceil(_snap(X.m * p))
    k = max(k, 1)
    return QuantileHalfspace(v, float(values[k - 1]), "lower")


def upper_v_quantile(X: EvaluationMatrix, v, p: float) -> QuantileHalfspace:
    """Downward halfspace containing exactly the points with at most a
    p-fraction of the sample strictly below them along v."""
    p = _check_p(p)
    v = np.asarray(v, dtype=float)
    if np.linalg.norm(v) <= DEFAULT_TOLERANCE:
        raise ValueError("zero direction")
    values = _sorted_projections(X, v)
    j = math.floor(_snap(X.m * p))
    if j >= X.m:
        return QuantileHalfspace(v, math.inf, "upper")
    return QuantileHalfspace(v, float(values[j]), "upper")


# ---------------------------------------------------------------------------
# cone-quantile membership


def lower_quantile_membership(
    X: EvaluationMatrix, importance: ConvexCone, p: float, z,
    tol: float = DEFAULT_TOLERANCE,
) -> bool:
    """z belongs to the lower cone quantile iff its rank value reaches p."""
    p = _check_p(p)
    rank, _ = cone_distribution(X, importance, z, tol=tol)
    return rank.count >= X.m * p - _COUNT_SNAP


def upper_quantile_membership(
    X: EvaluationMatrix, importance: ConvexCone, p: float, z,
    tol: float = DEFAULT_TOLERANCE,
) -> bool:
    """z belongs to the upper cone quantile iff no admissible direction puts
    more than a p-fraction of the sample strictly below it."""
    p = _check_p(p)
    sup, _ = strict_exceedance_sup(X, importance, z, tol=tol)
    return sup.count <= X.m * p + _COUNT_SNAP


def classify(
    X: EvaluationMatrix,
    importance: ConvexCone,
    p: float,
    alternative_ids=None,
    tol: float = DEFAULT_TOLERANCE,
) -> list[QuantileVerdict]:
    """One verdict per alternative, in alternative order.

    Membership in only the lower quantile reads as recommended, only the
    upper as non-advisable, both as neutral, neither as indeterminate.
    """
    p = _check_p(p)
    if alternative_ids is None:
        alternative_ids = [f"a{i + 1}" for i in range(X.m)]
    ids = list(alternative_ids)
    if len(ids) != X.m:
        raise ValueError("one id per alternative column is required")
    verdicts = []
    for aid, col in zip(ids, X.columns):
        z = np.array(col, dtype=float)
        in_lower = lower_quantile_membership(X, importance, p, z, tol=tol)
        in_upper = upper_quantile_membership(X, importance, p, z, tol=tol)
        verdicts.append(QuantileVerdict.from_membership(aid, in_lower, in_upper))
    return verdicts


# ---------------------------------------------------------------------------
# 2D region geometry


def order_statistic_directions(
    X: EvaluationMatrix, importance: ConvexCone, tol: float = DEFAULT_TOLERANCE
) -> np.ndarray:
    """Directions where the projection order of the sample changes, plus the
    extreme rays: a finite set whose quantile halfspaces cut out the exact
    cone quantiles.

    Between two consecutive critical directions the threshold-achieving
    sample point is constant, so the halfspaces in between are implied by
    the two endpoint halfspaces.
    """
    _require_importance_cone(importance, 2)
    start, span = _planar_arc_of(importance)
    angles = {0.0, span}
    A = X.as_array().T  # (m, d)
    for i, j in itertools.combinations(range(X.m), 2):
        diff = A[i] - A[j]
        if np.linalg.norm(diff) <= tol:
            continue
        base = math.atan2(diff[1], diff[0])
        for normal_angle in (base + math.pi / 2.0, base - math.pi / 2.0):
            t = (normal_angle - start) % (2.0 * math.pi)
            if 2.0 * math.pi - t <= 1e-12:
                t = 0.0
            if t <= span + 1e-12:
                angles.add(min(max(t, 0.0), span))
    ordered = sorted(angles)
    return np.array([[math.cos(start + t), math.sin(start + t)] for t in ordered])


def _clip_polygon(
    polygon: list[tuple[float, float]],
    normal: np.ndarray,
    offset: float,
    keep_ge: bool,
    tol: float,
) -> list[tuple[float, float]]:
    """Sutherland-Hodgman clip of a convex polygon by one halfplane."""
    if not polygon:
        return []
    sign = 1.0 if keep_ge else -1.0
    bound = sign * offset

    def value(pt):
        return sign * (normal[0] * pt[0] + normal[1] * pt[1]) - bound

    out: list[tuple[float, float]] = []
    n = len(polygon)
    for i in range(n):
        cur, nxt = polygon[i], polygon[(i + 1) % n]
        v_cur, v_nxt = value(cur), value(nxt)
        if v_cur >= -tol:
            out.append(cur)
        if (v_cur > tol and v_nxt < -tol) or (v_cur < -tol and v_nxt > tol):
            t = v_cur / (v_cur - v_nxt)
            out.append(
                (cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1]))
            )
    # Drop near-duplicate consecutive vertices.
    cleaned: list[tuple[float, float]] = []
    for pt in out:
        if not cleaned or math.dist(pt, cleaned[-1]) > 1e-9:
            cleaned.append(pt)
    if len(cleaned) > 1 and math.dist(cleaned[0], cleaned[-1]) <= 1e-9:
        cleaned.pop()
    return cleaned


def _clip_halfspaces(
    bbox: tuple[float, float, float, float],
    constraints: list[tuple[np.ndarray, float, bool]],
    tol: float,
) -> tuple[tuple[float, float], ...]:
    x0, y0, x1, y1 = bbox
    polygon = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
    for normal, offset, keep_ge in constraints:
        polygon = _clip_polygon(polygon, normal, offset, keep_ge, tol)
        if not polygon:
            return ()
    return tuple(polygon)


def quantile_region_2d(
    X: EvaluationMatrix,
    importance: ConvexCone,
    p: float,
    bbox,
    tol: float = DEFAULT_TOLERANCE,
) -> QuantileRegion2D:
    """Lower and upper cone-quantile sets clipped to a bounding box.

    Only data with two criteria is supported.  ``bbox`` is
    (x0, y0, x1, y1).  The returned polygons agree with the membership
    predicates inside the box up to tolerance.
    """
    p = _check_p(p)
    if X.d != 2:
        raise ValueError("region geometry is available for 2 criteria only")
    x0, y0, x1, y1 = (float(b) for b in bbox)
    if not (x0 < x1 and y0 < y1):
        raise ValueError("bbox must satisfy x0 < x1 and y0 < y1")
    directions = order_statistic_directions(X, importance, tol=tol)

    lower_constraints = []
    upper_constraints = []
    for v in directions:
        lower = lower_v_quantile(X, v, p)
        lower_constraints.append((v, lower.threshold, True))
        upper = upper_v_quantile(X, v, p)
        if not math.isinf(upper.threshold):
            upper_constraints.append((v, upper.threshold, False))

    box = (x0, y0, x1, y1)
    return QuantileRegion2D(
        p=p,
        lower_polygon=_clip_halfspaces(box, lower_constraints, tol),
        upper_polygon=_clip_halfspaces(box, upper_constraints, tol),
        bbox=box,
    )


# ---------------------------------------------------------------------------
# polygon utilities (shared by tests and plotting)


def polygon_area(polygon) -> float:
    pts = list(polygon)
    if len(pts) < 3:
        return 0.0
    total = 0.0
    for i in range(len(pts)):
        x0, y0 = pts[i]
        x1, y1 = pts[(i + 1) % len(pts)]
        total += x0 * y1 - x1 * y0
    return abs(total) / 2.0


def polygon_intersection(subject, clipper, tol: float = DEFAULT_TOLERANCE):
    """Intersection of two convex polygons (vertex tuples, empty when
    disjoint)."""
    subject = [tuple(pt) for pt in subject]
    clipper = [tuple(pt) for pt in clipper]
    if not subject or not clipper:
        return ()
    if len(clipper) < 3:
        # Degenerate clipper (point or segment): keep it when it lies in the
        # subject, approximated by clipping it against the subject instead.
        subject, clipper = clipper, subject
        if len(clipper) < 3:
            common = [pt for pt in subject if any(math.dist(pt, q) <= 1e-9 for q in clipper)]
            return tuple(common)
    # Ensure counter-clockwise clipper orientation.
    signed = 0.0
    for i in range(len(clipper)):
        x0, y0 = clipper[i]
        x1, y1 = clipper[(i + 1) % len(clipper)]
        signed += x0 * y1 - x1 * y0
    if signed < 0:
        clipper = clipper[::-1]
    result = subject
    for i in range(len(clipper)):
        a, b = clipper[i], clipper[(i + 1) % len(clipper)]
        normal = np.array([-(b[1] - a[1]), b[0] - a[0]])
        offset = float(normal[0] * a[0] + normal[1] * a[1])
        result = _clip_polygon(result, normal, offset, True, tol)
        if not result:
            return ()
    return tuple(result)
