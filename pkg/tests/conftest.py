"""Worked examples used across the suite, one fixture each."""

from __future__ import annotations

import pytest

from depthcert.core import MonomialIdeal, RingContext


def _ideal(names, gens) -> MonomialIdeal:
    ring = RingContext(names)
    return MonomialIdeal(ring, [ring.parse_monomial(g) for g in gens])


@pytest.fixture(scope="session")
def intro():
    # two 3-edges and three 2-edges on seven vertices
    return _ideal(list("abcdefg"), ["a*b*c", "a*c*d", "a*e", "e*f", "f*g"])


@pytest.fixture(scope="session")
def pentagon():
    return _ideal(["x1", "x2", "x3", "x4", "x5"],
                  ["x1*x2", "x2*x3", "x3*x4", "x4*x5", "x1*x5"])


@pytest.fixture(scope="session")
def pentagon_path():
    # 5-cycle with a 3-edge path glued at a
    return _ideal(list("abcdefgh"),
                  ["a*b", "b*c", "c*d", "d*e", "a*e", "a*f", "f*g", "g*h"])


@pytest.fixture(scope="session")
def graph36():
    return _ideal(list("abcdef"), ["a*b", "b*c", "b*d", "c*d", "d*e", "e*f"])


@pytest.fixture(scope="session")
def nonsqfree():
    # same shape as graph36 but with squared leaves
    return _ideal(list("abcdef"), ["a^2*b", "b*c^2", "b*d^2", "c*d", "d*e", "e*f"])


@pytest.fixture(scope="session")
def path6():
    return _ideal(list("abcdefg"), ["a*b", "b*c", "c*d", "d*e", "e*f", "f*g"])


@pytest.fixture(scope="session")
def path3():
    return _ideal(list("abcd"), ["a*b", "b*c", "c*d"])


@pytest.fixture(scope="session")
def triangle():
    return _ideal(list("xyz"), ["x*y", "x*z", "y*z"])


@pytest.fixture(scope="session")
def tree13():
    names = [f"x{i}" for i in range(1, 14)]
    edges = ["x1*x2", "x2*x3", "x3*x4", "x4*x5", "x5*x6", "x4*x7",
             "x7*x8", "x8*x9", "x9*x10", "x10*x11", "x11*x12", "x12*x13"]
    return _ideal(names, edges)


@pytest.fixture(scope="session")
def ex38():
    names = [f"x{i}" for i in range(1, 9)]
    return _ideal(names, ["x1*x2", "x2*x3", "x3*x4", "x4*x5", "x4*x6", "x6*x7", "x7*x8"])


@pytest.fixture(scope="session")
def star_graph():
    names = ["b0", "b1", "b2", "b3", "b4", "b5", "x1", "x2", "x3", "x4"]
    gens = ["b0*b1", "b0*b2", "b0*b3", "b0*b4", "b0*b5",
            "b1*x1", "b2*x2", "b3*x3", "b4*x4"]
    return _ideal(names, gens)


@pytest.fixture(scope="session")
def tenvar():
    names = ["a", "b", "x1", "x2", "x3", "x4", "y1", "y2", "y3", "y4"]
    gens = ["a*b", "b*x1*y1", "b*x2*y2", "b*x3*y3", "b*x4*y4",
            "x1*x2*x3*x4", "y1*y2*y3*y4"]
    return _ideal(names, gens)
