"""The three planar instances used throughout the test-suite.

instance-a and instance-b are the Euclidean pair (a Van der Veen matrix and
a relaxed one); fig4 is the rectilinear instance used for recognition.
"""

from __future__ import annotations

from .core import PointSet

_COORDS = {
    "instance-a": (
        (5, 34, 17, 37, 37, 31, 42, 40, 45, 43, 50, 49),
        (45, 35, 35, 31, 19, 17, 13, 9, 9, 4, 3, 8),
        "euclidean",
    ),
    "instance-b": (
        (5, 35, 17, 37, 26, 33, 24, 25, 30, 31, 37, 44),
        (45, 35, 35, 31, 26, 19, 21, 11, 2, 12, 6, 8),
        "euclidean",
    ),
    "fig4": (
        (38, 48, 35, 35, 32, 1, 16, 12, 9, 2, 2, 5),
        (8, 15, 17, 44, 18, 16, 26, 46, 34, 38, 44, 47),
        "rectilinear",
    ),
}

FIXTURE_NAMES = tuple(_COORDS)


def fixture_points(name: str) -> PointSet:
    xs, ys, _ = _COORDS[name]
    return PointSet(tuple(zip(xs, ys)))


def fixture_metric(name: str) -> str:
    return _COORDS[name][2]


def fixture_instance(name: str):
    """The fixture as an :class:`~btsp.instance.Instance` with even-odd coloring."""
    from .instance import Instance

    if name not in _COORDS:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")
    return Instance.from_points(fixture_points(name), fixture_metric(name), name=name)
