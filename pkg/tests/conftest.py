"""Shared fixtures: three homogeneous systems with known exact behavior.

conic   2x3 matrix, one free direction, two integral exponents
curve   2x4 matrix, two free directions, one fractional exponent
square  3x5 matrix, two free directions, a single rank-one exponent
"""

import pytest

from gkzseries.problem import Pipeline, ProblemFile

CONIC = {
    "matrix": [[1, 1, 1], [0, 1, 2]],
    "beta": ["10", "8"],
    "w": [1, 0, 1],
    "b_vectors": [[1, -2, 1]],
}

CURVE = {
    "matrix": [[1, 1, 1, 1], [0, 1, 3, 4]],
    "beta": ["-2", "-1"],
    "w": [3, 0, 0, 1],
    "b_vectors": [[1, -2, 2, -1], [1, -1, -1, 1]],
}

SQUARE = {
    "matrix": [[1, 1, 1, 1, 1], [-1, 1, 1, -1, 0], [-1, -1, 1, 1, 0]],
    "beta": ["1", "0", "0"],
    "w": [1, 1, 1, 1, 0],
    "b_vectors": [[1, 0, 1, 0, -2], [0, 1, 0, 1, -2]],
}


def make_pipe(problem: dict, **overrides) -> Pipeline:
    return Pipeline(ProblemFile(**problem), **overrides)


@pytest.fixture(scope="session")
def conic_pipe() -> Pipeline:
    return make_pipe(CONIC)


@pytest.fixture(scope="session")
def curve_pipe() -> Pipeline:
    return make_pipe(CURVE)


@pytest.fixture(scope="session")
def square_pipe() -> Pipeline:
    return make_pipe(SQUARE)


@pytest.fixture(scope="session")
def all_pipes(conic_pipe, curve_pipe, square_pipe):
    return {"conic": conic_pipe, "curve": curve_pipe, "square": square_pipe}
