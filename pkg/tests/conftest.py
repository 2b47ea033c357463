import json
import os

import pytest

from conerank.cones import conic_hull
from conerank.model import EvaluationMatrix, parse_problem

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")

# Five alternatives on two criteria; the running example used throughout the
# suite and the docs.
DEMO_COLUMNS = [(1, 5), (2, 3), (3, 2), (5, 1), (5, 5)]
DEMO_JUDGES = [(2, 1), (1, 1), (1, 2)]


@pytest.fixture(scope="session")
def demo_document() -> str:
    with open(os.path.join(DATA_DIR, "demo_problem.json"), encoding="utf-8") as fh:
        return fh.read()


@pytest.fixture(scope="session")
def demo_problem(demo_document):
    return parse_problem(demo_document)


@pytest.fixture(scope="session")
def demo_matrix() -> EvaluationMatrix:
    return EvaluationMatrix(tuple(tuple(float(v) for v in col) for col in DEMO_COLUMNS), d=2)


@pytest.fixture(scope="session")
def wide_cone():
    """Importance cone pooling the outer judges (2,1) and (1,2)."""
    return conic_hull([(2, 1), (1, 2)])


@pytest.fixture(scope="session")
def narrow_cone():
    """Importance cone pooling the judges (2,1) and (1,1)."""
    return conic_hull([(2, 1), (1, 1)])


@pytest.fixture(scope="session")
def lowered_matrix() -> EvaluationMatrix:
    """Demo data with the dominant alternative pulled down to (3, 3)."""
    cols = list(DEMO_COLUMNS[:4]) + [(3, 3)]
    return EvaluationMatrix(tuple(tuple(float(v) for v in col) for col in cols), d=2)


def make_document(criteria, alternatives, judges, evaluations) -> str:
    return json.dumps(
        {
            "criteria": criteria,
            "alternatives": alternatives,
            "judges": [list(j) for j in judges],
            "evaluations": [list(c) for c in evaluations],
        }
    )
