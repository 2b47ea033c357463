"""Polyhedral convex cone arithmetic for multi-judge decision problems.

A panel of judges supplies nonnegative per-criterion weight vectors.  Their
conic hull (the *importance cone*) contains every compromise weighting the
panel could agree on.  Its dual cone (the *acceptance cone*) contains every
evaluation shift that all judges score as an improvement, and generates the
vector preorder used to compare alternatives.

Cones are kept in a double representation: generators (extreme rays where
the cone is pointed) and facet normals (inward-pointing halfspace normals).
Both lists are canonicalized -- unit length, lexicographically sorted -- so
cones computed along different routes compare equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import nnls

DEFAULT_TOLERANCE = 1e-9

# Residual threshold for the nonnegative least-squares feasibility checks
# used in extreme-ray reduction; looser than DEFAULT_TOLERANCE because the
# solver works on unit-normalized stacks of vectors.
_NNLS_RESIDUAL_TOL = 1e-8

__all__ = [
    "DEFAULT_TOLERANCE",
    "Halfspace",
    "ConvexCone",
    "conic_hull",
    "dual_cone",
    "contains",
    "leq_cone",
    "validate_importance_cone",
    "validate_acceptance_cone",
]


def _as_rows(vectors, what: str = "vector") -> np.ndarray:
    arr = np.asarray(vectors, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2 or arr.shape[1] < 1:
        raise ValueError(f"expected a list of {what}s, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise ValueError(f"non-finite {what} entry")
    return arr


def _unit_rows(rows: np.ndarray, tol: float) -> np.ndarray:
    norms = np.linalg.norm(rows, axis=1)
    if (norms <= tol).any():
        raise ValueError("zero vector is not a valid cone generator")
    out = rows / norms[:, None]
    out[out == 0.0] = 0.0  # normalize -0.0 for stable serialization
    return out


def _dedupe_rows(rows: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    kept: list[np.ndarray] = []
    for row in rows:
        if not any(np.linalg.norm(row - k) <= tol for k in kept):
            kept.append(row)
    return np.array(kept)


def _canonical(rows: np.ndarray, tol: float = DEFAULT_TOLERANCE) -> np.ndarray:
    """Unit-normalize, drop near-duplicates, and sort rows lexicographically."""
    if len(rows) == 0:
        return rows.reshape(0, rows.shape[1] if rows.ndim == 2 else 0)
    units = _unit_rows(_as_rows(rows), tol)
    units = _dedupe_rows(units, tol=max(tol, 1e-9))
    order = sorted(range(len(units)), key=lambda i: tuple(units[i]))
    return units[order]


def _rot_ccw(v: np.ndarray) -> np.ndarray:
    return np.array([-v[1], v[0]])


def _rot_cw(v: np.ndarray) -> np.ndarray:
    return np.array([v[1], -v[0]])


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=float)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class Halfspace:
    """Closed homogeneous halfspace {z : normal . z >= 0}, a single judge's
    acceptance set."""

    normal: np.ndarray

    def __post_init__(self):
        normal = np.asarray(self.normal, dtype=float)
        if normal.ndim != 1 or np.linalg.norm(normal) <= DEFAULT_TOLERANCE:
            raise ValueError("halfspace normal must be a nonzero vector")
        object.__setattr__(self, "normal", _readonly(normal))

    def contains(self, z, tol: float = DEFAULT_TOLERANCE) -> bool:
        z = np.asarray(z, dtype=float)
        unit = self.normal / np.linalg.norm(self.normal)
        nz = np.linalg.norm(z)
        if nz <= tol:
            return True
        return float(unit @ (z / nz)) >= -tol


@dataclass(frozen=True, eq=False)
class ConvexCone:
    """Polyhedral convex cone in double representation.

    ``generators`` is a (k, dim) array of unit rays spanning the cone;
    ``facet_normals`` is an (f, dim) array of inward-pointing unit normals so
    that the cone equals {z : u . z >= 0 for every facet normal u}.  An empty
    generator list denotes the trivial cone {0}; an empty facet list denotes
    all of R^dim.

    Construction cross-checks the two representations: every generator must
    satisfy every facet inequality, and (for full-dimensional cones in the
    plane) every facet must be tight at some generator.
    """

    generators: np.ndarray
    facet_normals: np.ndarray
    dim: int

    def __post_init__(self):
        gens = np.asarray(self.generators, dtype=float).reshape(-1, self.dim)
        facets = np.asarray(self.facet_normals, dtype=float).reshape(-1, self.dim)
        if self.dim < 1:
            raise ValueError("cone dimension must be at least 1")
        if len(gens) and len(facets):
            slack = gens @ facets.T
            if slack.min() < -1e-7:
                raise ValueError(
                    "inconsistent cone representations: a generator violates a facet"
                )
        if self.dim == 2 and len(gens) >= 2 and len(facets):
            # Full-dimensional planar cones: each facet supports the cone at
            # some generator.  Lower-dimensional cones (single rays, lines)
            # need pinning inequalities that are tight only at the origin.
            span = np.linalg.matrix_rank(gens, tol=1e-9)
            if span == 2:
                tight = np.abs(gens @ facets.T).min(axis=0)
                if tight.max() > 1e-7:
                    raise ValueError(
                        "inconsistent cone representations: facet never tight"
                    )
        object.__setattr__(self, "generators", _readonly(gens))
        object.__setattr__(self, "facet_normals", _readonly(facets))

    def contains(self, z, tol: float = DEFAULT_TOLERANCE) -> bool:
        return contains(self, z, tol=tol)

    def isclose(self, other: "ConvexCone", tol: float = 1e-7) -> bool:
        if self.dim != other.dim:
            return False
        if self.generators.shape != other.generators.shape:
            return False
        if self.facet_normals.shape != other.facet_normals.shape:
            return False
        return bool(
            np.allclose(self.generators, other.generators, atol=tol)
            and np.allclose(self.facet_normals, other.facet_normals, atol=tol)
        )

    def __eq__(self, other):
        if not isinstance(other, ConvexCone):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.generators.shape == other.generators.shape
            and self.facet_normals.shape == other.facet_normals.shape
            and np.array_equal(self.generators, other.generators)
            and np.array_equal(self.facet_normals, other.facet_normals)
        )

    def to_debug_dict(self) -> dict:
        """Debug serialization: {"generators": [[..]..], "facet_normals": [[..]..]}."""
        return {
            "generators": self.generators.tolist(),
            "facet_normals": self.facet_normals.tolist(),
        }


# ---------------------------------------------------------------------------
# construction helpers


def _angles(units: np.ndarray) -> np.ndarray:
    return np.arctan2(units[:, 1], units[:, 0])


def _planar_arc(units: np.ndarray) -> tuple[float, float, int, int]:
    """Angular extent of a set of unit directions in the plane.

    Returns (start_angle, span, index_of_start, index_of_end) where the
    directions all lie on the arc [start, start + span] and span is minimal.
    """
    angles = _angles(units)
    order = np.argsort(angles, kind="stable")
    sorted_angles = angles[order]
    gaps = np.diff(sorted_angles, append=sorted_angles[0] + 2 * math.pi)
    widest = int(np.argmax(gaps))
    span = 2 * math.pi - gaps[widest]
    start_pos = (widest + 1) % len(order)
    end_pos = widest
    return (
        float(sorted_angles[start_pos]),
        float(span),
        int(order[start_pos]),
        int(order[end_pos]),
    )


def _ray_facets(ray: np.ndarray) -> np.ndarray:
    """Halfspace normals pinning a single ray: the ray itself plus +/- an
    orthonormal basis of its orthogonal complement."""
    dim = len(ray)
    if dim == 1:
        return ray.reshape(1, 1).copy()
    # Orthogonal complement via QR of [ray | identity].
    q, _ = np.linalg.qr(np.column_stack([ray, np.eye(dim)]))
    basis = q[:, 1:dim].T
    normals = [ray] + [b for b in basis] + [-b for b in basis]
    return np.array(normals)


def _drop_conic_redundant(rows: np.ndarray, tol: float) -> np.ndarray:
    """Remove rows expressible as nonnegative combinations of the others.

    Each candidate is tested with a small nonnegative least-squares
    feasibility subproblem; removal is sequential, so the surviving set still
    generates the same cone.
    """
    kept = list(range(len(rows)))
    changed = True
    while changed and len(kept) > 1:
        changed = False
        for pos, idx in enumerate(list(kept)):
            others = [k for k in kept if k != idx]
            basis = rows[others].T
            sol, residual = nnls(basis, rows[idx])
            if residual <= _NNLS_RESIDUAL_TOL:
                kept.remove(idx)
                changed = True
                break
    return rows[kept]


def _dd_extreme_rays(normals: np.ndarray, dim: int, tol: float) -> np.ndarray:
    """Generators of {z : u . z >= 0 for all u in normals} by incremental
    double description, starting from the ray set of the whole space."""
    rays = [e for e in np.eye(dim)] + [-e for e in np.eye(dim)]
    rays = list(np.array(rays))
    for a in normals:
        slacks = [float(a @ r) for r in rays]
        pos = [r for r, s in zip(rays, slacks) if s > tol]
        zero = [r for r, s in zip(rays, slacks) if abs(s) <= tol]
        neg = [(r, s) for r, s in zip(rays, slacks) if s < -tol]
        new = pos + zero
        for rp in pos:
            sp = float(a @ rp)
            for rn, sn in neg:
                combo = sp * rn - sn * rp
                norm = np.linalg.norm(combo)
                if norm > tol:
                    new.append(combo / norm)
        if not new:
            return np.zeros((0, dim))
        stacked = _dedupe_rows(_unit_rows(np.array(new), tol), tol=1e-9)
        rays = list(_drop_conic_redundant(stacked, tol))
    return np.array(rays)


def conic_hull(vectors, tol: float = DEFAULT_TOLERANCE) -> ConvexCone:
    """Smallest closed convex cone containing the given vectors.

    The generator list is reduced to extreme rays: a vector is dropped
    exactly when it is a nonnegative combination of the others.  Generators
    are unit-normalized and sorted so that equal cones compare equal.

    Raises ValueError for empty input or a zero vector.
    """
    rows = _as_rows(vectors, what="generator")
    if len(rows) == 0:
        raise ValueError("conic hull requires at least one vector")
    units = _dedupe_rows(_unit_rows(rows, tol), tol=1e-9)
    dim = units.shape[1]

    if len(units) == 1:
        ray = units[0]
        return ConvexCone(_canonical(units), _canonical(_ray_facets(ray)), dim)

    if dim == 1:
        # Both directions present: the hull is the whole line.
        return ConvexCone(_canonical(units), np.zeros((0, 1)), 1)

    if dim == 2:
        start, span, i_lo, i_hi = _planar_arc(units)
        if span < math.pi - 1e-12:
            lo, hi = units[i_lo], units[i_hi]
            facets = np.array([_rot_ccw(lo), _rot_cw(hi)])
            return ConvexCone(_canonical([lo, hi]), _canonical(facets), 2)
        if span <= math.pi + 1e-12:
            lo, hi = units[i_lo], units[i_hi]
            inward = _rot_ccw(lo)
            interior = [u for u in units if float(inward @ u) > 1e-9]
            if not interior:
                # All inputs on one line: the hull is that line.
                gens = np.array([lo, -lo])
                facets = np.array([inward, -inward])
                return ConvexCone(_canonical(gens), _canonical(facets), 2)
            mid_angle = start + span / 2.0
            pick = min(
                interior,
                key=lambda u: (abs(math.atan2(u[1], u[0]) - mid_angle), tuple(u)),
            )
            gens = np.array([lo, hi, pick])
            return ConvexCone(_canonical(gens), _canonical([inward]), 2)
        # Arc wider than a halfplane: the hull is the whole plane.
        gens = np.vstack([np.eye(2), -np.eye(2)])
        return ConvexCone(_canonical(gens), np.zeros((0, 2)), 2)

    gens = _drop_conic_redundant(units, tol)
    facets = _dd_extreme_rays(gens, dim, tol)
    return ConvexCone(_canonical(gens), _canonical(facets), dim)


def _planar_kind(c: ConvexCone, tol: float) -> str:
    gens = c.generators
    if len(gens) == 0:
        return "trivial"
    if len(gens) == 1:
        return "ray"
    if len(c.facet_normals) == 0:
        return "plane"
    _, span, _, _ = _planar_arc(gens)
    if span < 1e-12:
        return "ray"
    if span < math.pi - 1e-12:
        return "pointed"
    # Halfplane or full line, distinguished by an interior generator.
    inward = c.facet_normals[0]
    if (gens @ inward > 1e-9).any():
        return "halfspace"
    return "line"


def dual_cone(c: ConvexCone, tol: float = DEFAULT_TOLERANCE) -> ConvexCone:
    """Dual cone {w : z . w >= 0 for every z in c}.

    The generators of ``c`` become the facet normals of the dual and vice
    versa.  In the plane, duality of pointed cones reduces to rotating the
    two extreme rays by +/-90 degrees, which keeps the bipolar round trip
    exact; other dimensions use double-description conversion.
    """
    dim = c.dim
    if len(c.generators) == 0:
        # Dual of {0} is the whole space.
        gens = np.vstack([np.eye(dim), -np.eye(dim)])
        return ConvexCone(_canonical(gens), np.zeros((0, dim)), dim)

    if dim == 2:
        kind = _planar_kind(c, tol)
        if kind == "pointed":
            start, span, i_lo, i_hi = _planar_arc(c.generators)
            lo, hi = c.generators[i_lo], c.generators[i_hi]
            gens = np.array([_rot_cw(hi), _rot_ccw(lo)])
            return ConvexCone(_canonical(gens), _canonical(c.generators), 2)
        if kind == "ray":
            ray = c.generators[0]
            gens = np.array([_rot_ccw(ray), _rot_cw(ray), ray])
            return ConvexCone(_canonical(gens), _canonical([ray]), 2)
        if kind == "halfspace":
            normal = c.facet_normals[0]
            return ConvexCone(
                _canonical([normal]), _canonical(_ray_facets(normal)), 2
            )
        if kind == "line":
            direction = c.generators[0]
            ortho = _rot_ccw(direction)
            gens = np.array([ortho, -ortho])
            facets = np.array([direction, -direction])
            return ConvexCone(_canonical(gens), _canonical(facets), 2)
        # Whole plane: dual is the trivial cone.
        facets = np.vstack([np.eye(2), -np.eye(2)])
        return ConvexCone(np.zeros((0, 2)), _canonical(facets), 2)

    gens = _dd_extreme_rays(c.generators, dim, tol)
    if len(gens) == 0:
        facets = np.vstack([np.eye(dim), -np.eye(dim)])
        return ConvexCone(np.zeros((0, dim)), _canonical(facets), dim)
    return ConvexCone(_canonical(gens), _canonical(c.generators), dim)


# ---------------------------------------------------------------------------
# membership and ordering


def contains(c: ConvexCone, z, tol: float = DEFAULT_TOLERANCE) -> bool:
    """Membership test: z is in the cone iff u . z >= -tol for every facet
    normal u, with z normalized to unit length first so the tolerance is
    absolute on desk-scale inputs."""
    z = np.asarray(z, dtype=float)
    if z.shape != (c.dim,):
        raise ValueError(f"expected a vector of dimension {c.dim}, got {z.shape}")
    norm = np.linalg.norm(z)
    if norm <= tol:
        return True
    if len(c.facet_normals) == 0:
        return True
    return bool((c.facet_normals @ (z / norm) >= -tol).all())


def leq_cone(x, y, acceptance: ConvexCone, tol: float = DEFAULT_TOLERANCE) -> bool:
    """Vector preorder generated by the acceptance cone: x <= y iff the move
    from x to y lies in the cone."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise ValueError("dimension mismatch")
    return contains(acceptance, y - x, tol=tol)


def validate_importance_cone(c: ConvexCone, tol: float = DEFAULT_TOLERANCE) -> bool:
    """True iff the cone is nontrivial and sits inside the nonnegative
    orthant, i.e. it could arise from a panel of nonnegative weight
    vectors."""
    if len(c.generators) == 0:
        return False
    return bool((c.generators >= -tol).all())


def validate_acceptance_cone(c: ConvexCone, tol: float = DEFAULT_TOLERANCE) -> bool:
    """True iff the cone contains the nonnegative orthant but is not the
    whole space."""
    if len(c.facet_normals) == 0:
        return False
    return all(contains(c, e, tol=tol) for e in np.eye(c.dim))


def is_pointed(c: ConvexCone, tol: float = DEFAULT_TOLERANCE) -> bool:
    """True iff the cone contains no line (equivalently, the origin is not a
    convex combination of its generators)."""
    gens = c.generators
    if len(gens) == 0:
        return True
    if len(gens) == 1:
        return True
    if c.dim == 2:
        _, span, _, _ = _planar_arc(gens)
        return span < math.pi - 1e-12
    stacked = np.vstack([gens.T, np.ones(len(gens))])
    target = np.zeros(c.dim + 1)
    target[-1] = 1.0
    _, residual = nnls(stacked, target)
    return residual > _NNLS_RESIDUAL_TOL
