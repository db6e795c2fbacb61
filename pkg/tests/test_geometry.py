import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lidbounds.errors import DegenerateReferenceError
from lidbounds.geometry import Direction, classify, direction_class, make_triple, triple_from_points


def random_unit(rng, d):
    v = rng.normal(size=d)
    return v / np.linalg.norm(v)


def test_perpendicular_step():
    t = make_triple([0.0, 0.0], [0.0, 1.0], 1.0, [1.0, 0.0])
    np.testing.assert_allclose(t.b, [0.0, 1.0])
    assert t.x == 1.0
    assert t.y == pytest.approx(math.sqrt(2))
    assert t.theta == pytest.approx(math.pi / 2)


def test_step_towards_reference():
    t = make_triple([0.0, 0.0], [1.0, 0.0], 0.5, [1.0, 0.0])
    np.testing.assert_allclose(t.b, [0.5, 0.0])
    assert t.y == pytest.approx(0.5)
    assert t.theta == 0.0


def test_law_of_cosines_high_dim(rng):
    for _ in range(200):
        a, c = rng.normal(size=(2, 784))
        t = make_triple(a, random_unit(rng, 784), rng.uniform(0.01, 3), c)
        assert t.law_of_cosines_y() == pytest.approx(t.y, rel=1e-9)


def test_delta_recovered(rng):
    for _ in range(200):
        a, c = rng.normal(size=(2, 20))
        delta = rng.uniform(0.01, 5)
        t = make_triple(a, random_unit(rng, 20), delta, c)
        assert np.linalg.norm(t.b - t.a) / t.x == pytest.approx(delta, rel=1e-10)
        again = triple_from_points(t.a, t.b, t.c)
        assert again.delta == pytest.approx(delta, rel=1e-10)
        assert again.theta == pytest.approx(t.theta, abs=1e-9)


def test_reflection_keeps_y():
    a, c = np.zeros(2), np.array([1.0, 0.0])
    for angle in np.linspace(0.1, 3.0, 7):
        up = make_triple(a, [math.cos(angle), math.sin(angle)], 0.8, c)
        down = make_triple(a, [math.cos(angle), -math.sin(angle)], 0.8, c)
        assert up.y == pytest.approx(down.y, rel=1e-14)


def test_degenerate_reference():
    with pytest.raises(DegenerateReferenceError):
        make_triple([1.0, 1.0], [1.0, 0.0], 0.5, [1.0, 1.0])


def test_zero_direction():
    with pytest.raises(ValueError):
        make_triple([0.0, 0.0], [0.0, 0.0], 0.5, [1.0, 0.0])


def test_non_unit_direction():
    with pytest.raises(ValueError):
        make_triple([0.0, 0.0], [0.0, 2.0], 0.5, [1.0, 0.0])


def test_perpendicular_unit_step_is_away():
    assert classify(1.0, math.pi / 2) is Direction.AWAY


def test_toward_example():
    t = make_triple([0.0, 0.0], [1.0, 0.0], 0.5, [1.0, 0.0])
    assert direction_class(t) is Direction.TOWARD


def test_boundary_geometry():
    # delta = 2 cos(theta) puts b on the circle of radius x around c
    theta = math.pi / 3
    t = make_triple([0.0, 0.0], [math.cos(theta), math.sin(theta)], 2 * math.cos(theta), [1.0, 0.0])
    assert abs(t.y - t.x) <= 1e-12
    assert direction_class(t) is Direction.BOUNDARY


def test_rule_agrees_with_distances(rng):
    disagreements = 0
    for _ in range(10_000):
        d = rng.integers(2, 30)
        a, c = rng.normal(size=(2, d))
        t = make_triple(a, random_unit(rng, d), rng.uniform(0.01, 3), c)
        if abs(t.y - t.x) <= 1e-9 * t.x:
            continue
        expected = Direction.AWAY if t.y > t.x else Direction.TOWARD
        disagreements += direction_class(t) is not expected
    assert disagreements == 0


@given(st.floats(1e-3, 4.0), st.floats(0.0, math.pi))
def test_rule_on_exact_law_of_cosines(delta, theta):
    y = math.sqrt(max(delta * delta + 1 - 2 * delta * math.cos(theta), 0.0))
    kind = classify(delta, theta, 1.0, y)
    if abs(y - 1.0) > 1e-9:
        assert kind is (Direction.AWAY if y > 1 else Direction.TOWARD)
