"""Acceptance suite: every exit criterion for the primary component, one
test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
report lines.
"""

import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np

from conerank.cones import conic_hull, contains, dual_cone
from conerank.distribution import (
    cone_distribution,
    oracle_cone_distribution,
    oracle_strict_exceedance_sup,
    scalarized_cdf,
    strict_exceedance_sup,
)
from conerank.model import EvaluationMatrix
from conerank.quantiles import (
    classify,
    lower_quantile_membership,
    lower_v_quantile,
    polygon_area,
    polygon_intersection,
    quantile_region_2d,
    upper_v_quantile,
)

F = Fraction
BBOX = (0.0, 0.0, 6.0, 6.0)
CASES = 100  # minimum randomized cases per property suite


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"[ACCEPTANCE] {name}: FAIL")
        raise
    print(f"[ACCEPTANCE] {name}: PASS")


def make_matrix(columns) -> EvaluationMatrix:
    return EvaluationMatrix(tuple(tuple(float(v) for v in col) for col in columns), d=2)


DEMO = make_matrix([(1, 5), (2, 3), (3, 2), (5, 1), (5, 5)])
LOWERED = make_matrix([(1, 5), (2, 3), (3, 2), (5, 1), (3, 3)])
WIDE = conic_hull([(2, 1), (1, 2)])
NARROW = conic_hull([(2, 1), (1, 1)])


def ranks_for(matrix, cone):
    return [cone_distribution(matrix, cone, matrix.column(i))[0].value for i in range(matrix.m)]


# ---------------------------------------------------------------------------
# randomized instance generation (integer data keeps every comparison exact)


def random_instance(rng, m_max=12):
    m = int(rng.integers(1, m_max + 1))
    data = rng.integers(0, 11, size=(2, m)).astype(float)
    while True:
        g1 = rng.integers(1, 10, size=2)
        g2 = rng.integers(1, 10, size=2)
        if g1[0] * g2[1] != g1[1] * g2[0]:
            break
    cone = conic_hull([g1, g2])
    return EvaluationMatrix.from_array(data), cone, (g1, g2)


def ordered_rays(g1, g2):
    """The two integer generators ordered so the first has the smaller angle."""
    if g1[0] * g2[1] - g1[1] * g2[0] > 0:
        return np.asarray(g1, dtype=float), np.asarray(g2, dtype=float)
    return np.asarray(g2, dtype=float), np.asarray(g1, dtype=float)


def acceptance_rays(g1, g2):
    """Integer extreme rays of the dual cone (rotations of the generators)."""
    lo, hi = ordered_rays(g1, g2)
    return np.array([hi[1], -hi[0]]), np.array([-lo[1], lo[0]])


def random_acceptance_shift(rng, g1, g2):
    r1, r2 = acceptance_rays(g1, g2)
    lam = rng.integers(0, 4, size=2).astype(float)
    return lam[0] * r1 + lam[1] * r2


# ---------------------------------------------------------------------------
# exact-table criteria


def test_pooled_ranking_reproduces_wide_cone_table():
    with criterion("wide-cone ranking table (exact, < 1 s)"):
        start = time.perf_counter()
        got = ranks_for(DEMO, WIDE)
        elapsed = time.perf_counter() - start
        assert got == [F(2, 5), F(1, 5), F(1, 5), F(2, 5), F(1)]
        assert elapsed < 1.0


def test_pooled_ranking_reproduces_narrow_cone_table():
    with criterion("narrow-cone ranking table (exact)"):
        got = ranks_for(DEMO, NARROW)
        assert got == [F(2, 5), F(1, 5), F(2, 5), F(4, 5), F(1)]


def test_scalarized_rows_reproduce_all_entries():
    with criterion("per-judge scalarized rows (15 exact entries)"):
        expected = {
            (2, 1): [F(2, 5), F(2, 5), F(3, 5), F(4, 5), F(1)],
            (1, 1): [F(4, 5), F(2, 5), F(2, 5), F(4, 5), F(1)],
            (1, 2): [F(4, 5), F(3, 5), F(2, 5), F(2, 5), F(1)],
        }
        for v, row in expected.items():
            got = [scalarized_cdf(DEMO, v, DEMO.column(i)).value for i in range(5)]
            assert got == row


def test_single_judge_quantile_geometry():
    with criterion("single-judge quantile thresholds at p = 0.8"):
        lower = lower_v_quantile(DEMO, (2, 1), 0.8)
        upper = upper_v_quantile(DEMO, (2, 1), 0.8)
        assert lower.threshold == 11.0
        assert float(np.dot((2, 1), (5, 1))) == lower.threshold  # boundary hits (5, 1)
        assert upper.threshold == 15.0
        assert lower.contains((5, 1)) and upper.contains((5, 1))


def test_lowered_top_caps_ranks_at_four_fifths():
    with criterion("lowered-top data: max rank exactly 4/5, empty lower quantile beyond"):
        values = ranks_for(LOWERED, WIDE)
        assert max(values) == F(4, 5)
        for p in (0.8 + 1e-6, 0.81, 0.9, 0.99):
            for i in range(5):
                assert not lower_quantile_membership(LOWERED, WIDE, p, LOWERED.column(i))


def test_region_intersection_regimes():
    with criterion("region intersection regimes (point / empty / area)"):
        def overlap(p):
            region = quantile_region_2d(DEMO, WIDE, p, BBOX)
            return polygon_intersection(region.lower_polygon, region.upper_polygon)

        at_point_four = overlap(0.4)
        assert len(at_point_four) >= 1
        pts = [np.asarray(v) for v in at_point_four]
        assert all(np.linalg.norm(a - b) <= 1e-7 for a in pts for b in pts)

        assert polygon_area(overlap(0.8)) > 0.01

        for p in (0.45, 0.5, 0.55, 0.65, 0.7, 0.75):
            assert overlap(p) == ()


# ---------------------------------------------------------------------------
# oracle equivalence


def test_oracle_equivalence_on_random_instances():
    with criterion("exact engine equals direction-grid oracle (200 instances, < 60 s)"):
        rng = np.random.default_rng(20260810)
        start = time.perf_counter()
        resolution = 100_000
        for _ in range(200):
            matrix, cone, _ = random_instance(rng)
            queries = [matrix.column(int(rng.integers(0, matrix.m))) for _ in range(2)]
            queries.append(rng.integers(0, 11, size=2).astype(float))
            for z in queries:
                exact_weak, _ = cone_distribution(matrix, cone, z)
                assert exact_weak.value == oracle_cone_distribution(
                    matrix, cone, z, resolution
                ).value
                exact_strict, _ = strict_exceedance_sup(matrix, cone, z)
                assert exact_strict.value == oracle_strict_exceedance_sup(
                    matrix, cone, z, resolution
                ).value
        elapsed = time.perf_counter() - start
        assert elapsed < 60.0


# ---------------------------------------------------------------------------
# property suites (each at least 100 randomized cases)


def test_property_affine_equivariance_and_label_invariance():
    with criterion("affine equivariance of ranks and label invariance of verdicts"):
        rng = np.random.default_rng(1)
        for _ in range(CASES):
            matrix, cone, (g1, g2) = random_instance(rng, m_max=7)
            while True:
                A = rng.integers(-3, 4, size=(2, 2))
                det = A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]
                if det != 0:
                    break
            b = rng.integers(-5, 6, size=2)
            # Rays transform by a positive multiple of the inverse transpose:
            # sign(det) * adj(A)^T keeps the vectors integer.
            adj_t = np.array([[A[1, 1], -A[1, 0]], [-A[0, 1], A[0, 0]]])
            sign = 1 if det > 0 else -1
            t_cone = conic_hull([sign * adj_t @ g1, sign * adj_t @ g2])
            t_matrix = EvaluationMatrix.from_array(A @ matrix.as_array() + b[:, None])

            for i in range(matrix.m):
                z = matrix.column(i)
                original, _ = cone_distribution(matrix, cone, z)
                transformed, _ = cone_distribution(t_matrix, t_cone, A @ z + b)
                assert original.value == transformed.value

            p = float(rng.uniform(0.05, 0.95))
            before = [v.label for v in classify(matrix, cone, p)]
            after = [v.label for v in classify(t_matrix, t_cone, p)]
            assert before == after


def test_property_rank_monotone_in_query_point():
    with criterion("rank monotone along the acceptance preorder"):
        rng = np.random.default_rng(2)
        acceptance_checked = 0
        for _ in range(CASES):
            matrix, cone, (g1, g2) = random_instance(rng, m_max=8)
            z = rng.integers(-2, 13, size=2).astype(float)
            shift = random_acceptance_shift(rng, g1, g2)
            y = z - shift
            low, _ = cone_distribution(matrix, cone, y)
            high, _ = cone_distribution(matrix, cone, z)
            assert low.value <= high.value
            acceptance_checked += 1
        assert acceptance_checked >= CASES


def test_property_rank_antitone_under_sample_shifts():
    with criterion("rank antitone under acceptance-cone shifts of the sample"):
        rng = np.random.default_rng(3)
        for _ in range(CASES):
            matrix, cone, (g1, g2) = random_instance(rng, m_max=8)
            shift = random_acceptance_shift(rng, g1, g2)
            better = EvaluationMatrix.from_array(matrix.as_array() + shift[:, None])
            for _ in range(3):
                z = rng.integers(-2, 13, size=2).astype(float)
                on_original, _ = cone_distribution(matrix, cone, z)
                on_better, _ = cone_distribution(better, cone, z)
                assert on_original.value >= on_better.value


def test_property_cone_nesting_monotonicity():
    with criterion("wider importance cones lower ranks and shrink lower quantiles"):
        rng = np.random.default_rng(4)
        for _ in range(CASES):
            matrix, narrow, _ = random_instance(rng, m_max=8)
            extra = [rng.integers(0, 10, size=2) for _ in range(2)]
            extra = [v for v in extra if v.any()]
            wide = conic_hull(list(narrow.generators) + extra)
            p = float(rng.uniform(0.05, 0.95))
            for _ in range(3):
                z = rng.integers(-2, 13, size=2).astype(float)
                under_wide, _ = cone_distribution(matrix, wide, z)
                under_narrow, _ = cone_distribution(matrix, narrow, z)
                assert under_wide.value <= under_narrow.value
                if lower_quantile_membership(matrix, wide, p, z):
                    assert lower_quantile_membership(matrix, narrow, p, z)


def test_property_lower_membership_antitone_in_level():
    with criterion("lower-quantile membership antitone in p"):
        rng = np.random.default_rng(5)
        for _ in range(CASES):
            matrix, cone, _ = random_instance(rng, m_max=8)
            p_small, p_large = sorted(rng.uniform(0.05, 0.95, size=2))
            for _ in range(3):
                z = rng.integers(-2, 13, size=2).astype(float)
                if lower_quantile_membership(matrix, cone, p_large, z):
                    assert lower_quantile_membership(matrix, cone, p_small, z)


def test_property_bipolar_duality():
    with criterion("bipolar duality of panel cones"):
        rng = np.random.default_rng(6)
        for _ in range(CASES):
            n = int(rng.integers(1, 7))
            vectors = []
            while len(vectors) < n:
                v = rng.integers(0, 10, size=2)
                if v.any():
                    vectors.append(v)
            importance = conic_hull(vectors)
            acceptance = dual_cone(importance)
            assert dual_cone(acceptance).isclose(importance)
            for v in vectors:
                assert contains(importance, v)
