import json
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from gentlelam import Quiver, Triangulation, build_QT, validate_gentle

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def golden(name):
    with open(os.path.join(GOLDEN, name)) as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def torus_algebra():
    """Four vertices, two 3-cycles of relations plus a free arrow."""
    q = Quiver(4, (("a1", 1, 2), ("b1", 1, 2), ("a2", 2, 3), ("b2", 2, 4),
                   ("a3", 3, 1), ("b3", 4, 1), ("c", 3, 4)))
    return validate_gentle(q, [("a1", "a3"), ("a2", "a1"), ("a3", "a2"),
                               ("b1", "b3"), ("b2", "b1"), ("b3", "b2")])


@pytest.fixture(scope="session")
def loop_algebra():
    return validate_gentle(Quiver(1, (("a", 1, 1),)), [("a", "a")])


@pytest.fixture(scope="session")
def a3_relation():
    """1 <- 2 <- 3 with the composite killed."""
    return validate_gentle(Quiver(3, (("a", 2, 1), ("b", 3, 2))),
                           [("a", "b")])


@pytest.fixture(scope="session")
def double_loop():
    """Loops at both ends of a chain with a 2-cycle in the middle."""
    q = Quiver(4, (("a", 1, 1), ("b", 2, 1), ("c2", 2, 3), ("c1", 3, 2),
                   ("d", 3, 4), ("e", 4, 4)))
    return validate_gentle(q, [("a", "a"), ("e", "e"),
                               ("c1", "c2"), ("c2", "c1")])


@pytest.fixture(scope="session")
def pants():
    """Sphere with three boundary disks, one marked point each."""
    return Triangulation(
        (1, 2, 3, 4, 5, 6), ("bA", "bB", "bC"),
        ((2, 1, 6), (4, 3, 6), (3, 2, "bB"), (5, 4, "bC"), (5, 1, "bA")))


@pytest.fixture(scope="session")
def pants_algebra(pants):
    return build_QT(pants)


@pytest.fixture(scope="session")
def hexagon():
    return Triangulation(
        (1, 2, 3), ("s1", "s2", "s3", "s4", "s5", "s6"),
        (("s1", "s2", 1), (1, "s3", 2), (2, "s4", 3), (3, "s5", "s6")))


@pytest.fixture(scope="session")
def annulus():
    return Triangulation((1, 2), ("out", "inn"),
                         (("out", 2, 1), ("inn", 2, 1)))
