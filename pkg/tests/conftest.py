from importlib import resources

import pytest

from ribboncalc import IceQuiver, QuiverArrow, QuiverVertex, RibbonGraph, parse_graph


def fixture_text(name: str) -> str:
    return (
        resources.files("ribboncalc").joinpath("fixtures", name + ".json").read_text()
    )


def fixture_graph(name: str) -> RibbonGraph:
    return parse_graph(fixture_text(name))


@pytest.fixture
def two_spider() -> RibbonGraph:
    return fixture_graph("two_spider")


@pytest.fixture
def three_spider() -> RibbonGraph:
    return fixture_graph("three_spider")


@pytest.fixture
def four_gon() -> RibbonGraph:
    return fixture_graph("four_gon")


@pytest.fixture
def annulus() -> RibbonGraph:
    return fixture_graph("annulus")


@pytest.fixture
def once_punctured_4gon() -> RibbonGraph:
    return fixture_graph("once_punctured_4gon")


@pytest.fixture
def a2_triangle_figure() -> IceQuiver:
    """The published A2 triangle quiver: one mutable center, three frozen
    pairs on the boundary, three frozen connecting arrows."""
    verts = [QuiverVertex(str(i), frozen=(i != 4)) for i in (1, 2, 3, 4, 5, 7, 8)]
    arrows = [
        QuiverArrow("x1", "2", "1"),
        QuiverArrow("x2", "1", "4"),
        QuiverArrow("x3", "4", "2"),
        QuiverArrow("x4", "4", "8"),
        QuiverArrow("x5", "7", "4"),
        QuiverArrow("x6", "5", "4"),
        QuiverArrow("x7", "4", "3"),
        QuiverArrow("x8", "3", "7"),
        QuiverArrow("x9", "8", "7", frozen=True),
        QuiverArrow("x10", "8", "5"),
        QuiverArrow("x11", "3", "1", frozen=True),
        QuiverArrow("x12", "2", "5", frozen=True),
    ]
    return IceQuiver(verts, arrows)


@pytest.fixture
def a2_four_gon_figure() -> IceQuiver:
    """The published 4-gon quiver obtained by gluing two A2 triangles."""
    frozen = {1, 3, 6, 7, 8, 9, 10, 11}
    verts = [QuiverVertex(str(i), frozen=(i in frozen)) for i in range(1, 13)]
    specs = [
        ("2", "1", False),
        ("1", "4", False),
        ("4", "2", False),
        ("4", "8", False),
        ("7", "4", False),
        ("5", "4", False),
        ("4", "3", False),
        ("3", "7", False),
        ("8", "7", True),
        ("8", "5", False),
        ("3", "1", True),
        ("2", "12", False),
        ("12", "5", False),
        ("10", "2", False),
        ("10", "11", True),
        ("12", "10", False),
        ("11", "12", False),
        ("12", "9", False),
        ("6", "12", False),
        ("9", "11", False),
        ("9", "6", True),
        ("5", "6", False),
    ]
    arrows = [
        QuiverArrow("y{}".format(i), s, d, frozen=f)
        for i, (s, d, f) in enumerate(specs, 1)
    ]
    return IceQuiver(verts, arrows)
