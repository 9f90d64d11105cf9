"""Shared fixtures: the named fan corpus used across suites."""

import pytest

from toriclift.fan import Fan, validate_fan


def corpus_fans() -> dict[str, Fan]:
    """Small named fans exercising every code path: smooth/singular,
    simplicial/non-simplicial, complete/affine, degenerate."""
    return {
        # index-2 affine singularity (cone over a conic)
        "quadric": validate_fan(2, [(1, 0), (1, 2)], [(0, 1)]),
        # the quadric cone subdivided along its interior ray
        "subdivided": validate_fan(2, [(1, 0), (1, 1), (1, 2)], [(0, 1), (1, 2)]),
        # affine plane
        "plane": validate_fan(2, [(0, 1), (1, 0)], [(0, 1)]),
        # plane blown up at the torus-fixed point
        "blowup": validate_fan(2, [(0, 1), (1, 0), (1, 1)], [(0, 2), (1, 2)]),
        # projective plane
        "p2": validate_fan(2, [(-1, -1), (0, 1), (1, 0)], [(0, 1), (0, 2), (1, 2)]),
        # projective plane blown up at a fixed point (first Hirzebruch surface)
        "f1": validate_fan(
            2,
            [(-1, -1), (0, 1), (1, 0), (1, 1)],
            [(0, 1), (0, 2), (1, 3), (2, 3)],
        ),
        # non-simplicial: cone over a square
        "diamond": validate_fan(
            3,
            [(-1, 0, 1), (0, -1, 1), (0, 1, 1), (1, 0, 1)],
            [(0, 1, 2, 3)],
        ),
        # affine line
        "line": validate_fan(1, [(1,)], [(0,)]),
        # degenerate: rays span a proper subspace (one torus factor)
        "halftorus": validate_fan(2, [(1, 0)], [(0,)]),
    }


@pytest.fixture(scope="session")
def corpus() -> dict[str, Fan]:
    return corpus_fans()
