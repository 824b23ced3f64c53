"""Shared fixtures: pinned small instances used across test modules."""

import numpy as np
import pytest

from hamcert import make_blocks


@pytest.fixture
def ex_singular_blocks():
    """A = 1, B = 1, C = -1: valid blocks, not nonnegative, H = [[1,1],[-1,-1]] singular."""
    return make_blocks([[1.0]], [[1.0]], [[-1.0]])


@pytest.fixture
def diag_invertible_blocks():
    """A = diag(1, 2), B = C = I: nonnegative, comfortably invertible."""
    eye = np.eye(2)
    return make_blocks(np.diag([1.0, 2.0]), eye, eye)


@pytest.fixture
def forced_singular_blocks():
    """A = 0, B = 0, C = 1: nonnegative with N(B) cap N(A^H) = C^1."""
    return make_blocks([[0.0]], [[0.0]], [[1.0]])


def write_doc(path, payload):
    import json

    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


@pytest.fixture
def ex_singular_doc(tmp_path):
    """Input document for the singular 1x1 example."""
    return write_doc(tmp_path / "singular.json", {
        "n": 1,
        "A": [[[1.0, 0.0]]],
        "B": [[[1.0, 0.0]]],
        "C": [[[-1.0, 0.0]]],
    })


@pytest.fixture
def invertible_doc(tmp_path):
    """Input document for a nonnegative invertible 2x2 block family."""
    return write_doc(tmp_path / "invertible.json", {
        "n": 2,
        "A": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [2.0, 0.0]]],
        "B": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]],
        "C": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]],
    })
