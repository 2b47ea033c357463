"""High-level drivers shared by the CLI and the HTTP service: panel-to-cone
construction, ranking/classification payloads, and default plotting bounds.

Payloads are plain dicts shaped for JSON so both frontends emit identical
documents for identical inputs.
"""

from __future__ import annotations

import math

from .cones import DEFAULT_TOLERANCE, ConvexCone, conic_hull, dual_cone
from .distribution import RankResult, rank_alternatives
from .model import DecisionProblem, JudgePanel
from .plot import cone_wedge
from .quantiles import QuantileRegion2D, classify, quantile_region_2d

__all__ = [
    "panel_cones",
    "default_bbox",
    "rank_payload",
    "classify_payload",
    "cones_payload",
    "region_payload",
]


def panel_cones(panel: JudgePanel, judge_ids=None, tol: float = DEFAULT_TOLERANCE):
    """Importance and acceptance cones of a panel (optionally a subset of
    judges, by id)."""
    if judge_ids is not None:
        panel = panel.subset(judge_ids)
    if panel.n == 0:
        raise ValueError("empty judge subset")
    importance = conic_hull(panel.weight_matrix(), tol=tol)
    acceptance = dual_cone(importance, tol=tol)
    return importance, acceptance


def default_bbox(problem: DecisionProblem) -> tuple[float, float, float, float]:
    """Deterministic plotting bounds: the data range extended to include the
    origin, padded by one unit and rounded outward to integers."""
    arr = problem.evaluations.as_array()
    x0 = min(0.0, math.floor(float(arr[0].min())))
    y0 = min(0.0, math.floor(float(arr[1].min()))) if problem.d >= 2 else 0.0
    x1 = math.ceil(float(arr[0].max())) + 1.0
    y1 = (math.ceil(float(arr[1].max())) + 1.0) if problem.d >= 2 else 1.0
    return (float(x0), float(y0), float(x1), float(y1))


def rank_payload(importance: ConvexCone, result: RankResult) -> dict:
    """JSON shape: {"ranks": {alt: {"value": k, "of": m, "witness": [..]}},
    "cone": {...}, "order": [alt ids by descending rank]}."""
    return {
        "ranks": {
            aid: {
                "value": rank.count,
                "of": rank.sample_size,
                "witness": [float(x) for x in result.witnesses[aid].direction],
            }
            for aid, rank in result.ranks.items()
        },
        "cone": importance.to_debug_dict(),
        "order": result.sorted_ids(),
    }


def compute_rank_payload(
    problem: DecisionProblem, judge_ids=None, tol: float = DEFAULT_TOLERANCE
) -> dict:
    importance, _ = panel_cones(problem.panel, judge_ids, tol=tol)
    result = rank_alternatives(
        problem.evaluations, importance, problem.alternative_ids(), tol=tol
    )
    return rank_payload(importance, result)


def region_payload(region: QuantileRegion2D) -> dict:
    return {
        "p": region.p,
        "lower_polygon": [[float(x), float(y)] for x, y in region.lower_polygon],
        "upper_polygon": [[float(x), float(y)] for x, y in region.upper_polygon],
        "bbox": list(region.bbox),
    }


def classify_payload(
    problem: DecisionProblem,
    p: float,
    judge_ids=None,
    bbox=None,
    tol: float = DEFAULT_TOLERANCE,
) -> dict:
    """Verdicts plus, for two-criteria problems, the clipped region
    polygons."""
    importance, _ = panel_cones(problem.panel, judge_ids, tol=tol)
    verdicts = classify(
        problem.evaluations, importance, p, problem.alternative_ids(), tol=tol
    )
    payload = {
        "p": p,
        "verdicts": [
            {
                "alternative": v.alternative_id,
                "in_lower": v.in_lower,
                "in_upper": v.in_upper,
                "label": v.label,
            }
            for v in verdicts
        ],
        "region": None,
    }
    if problem.d == 2:
        box = bbox if bbox is not None else default_bbox(problem)
        region = quantile_region_2d(problem.evaluations, importance, p, box, tol=tol)
        payload["region"] = region_payload(region)
    return payload


def cones_payload(
    problem: DecisionProblem, judge_ids=None, tol: float = DEFAULT_TOLERANCE
) -> dict:
    importance, acceptance = panel_cones(problem.panel, judge_ids, tol=tol)
    payload = {
        "importance_cone": importance.to_debug_dict(),
        "acceptance_cone": acceptance.to_debug_dict(),
    }
    if problem.d == 2:
        box = default_bbox(problem)
        payload["bbox"] = list(box)
        payload["importance_wedge"] = [
            [float(x), float(y)] for x, y in cone_wedge(importance, box)
        ]
        payload["acceptance_wedge"] = [
            [float(x), float(y)] for x, y in cone_wedge(acceptance, box)
        ]
    return payload
