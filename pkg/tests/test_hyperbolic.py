import numpy as np
import pytest

from deltapoly.hyperbolic import (CONVERGED, DIVERGED, ORIGIN, CircleConfiguration, HyperbolicError,
                                  busemann_factor, distance, gauss_map, lorentz, midpoint, phi_fixed_point,
                                  point_from_polar, polygon_from_point, round_trip_error, slide)


def random_point(rng, rmax=3.0):
    return point_from_polar(rng.uniform(0, rmax), rng.uniform(0, 2 * np.pi))


def stable_config(rng):
    n = int(rng.integers(3, 7))
    while True:
        m = rng.uniform(0.1, 2.0, n)
        if m.max() < 0.5 * m.sum():
            return CircleConfiguration(tuple(m), tuple(rng.uniform(0, 2 * np.pi, n)))


def test_distance_matches_arccosh():
    rng = np.random.default_rng(0)
    for _ in range(50):
        x, y = random_point(rng), random_point(rng)
        assert distance(x, y) == pytest.approx(np.arccosh(max(1.0, -lorentz(x, y))), abs=1e-9)


def test_slide_moves_exact_distance_towards_ideal_point():
    rng = np.random.default_rng(1)
    for _ in range(50):
        x = random_point(rng)
        a, t = rng.uniform(0, 2 * np.pi), rng.uniform(0, 3)
        y = slide(x, a, t)
        assert lorentz(y, y) == pytest.approx(-1, rel=1e-9)
        assert distance(x, y) == pytest.approx(t, abs=1e-9)
        # Busemann function log(-<x, xi>) drops by exactly t
        assert np.log(busemann_factor(y, a)) == pytest.approx(np.log(busemann_factor(x, a)) - t, abs=1e-9)


def test_slide_is_one_lipschitz():
    rng = np.random.default_rng(2)
    for _ in range(200):
        x, y = random_point(rng), random_point(rng)
        a, t = rng.uniform(0, 2 * np.pi), rng.uniform(0, 4)
        assert distance(slide(x, a, t), slide(y, a, t)) <= distance(x, y) + 1e-12


def test_midpoint_is_equidistant():
    rng = np.random.default_rng(5)
    for _ in range(50):
        x, y = random_point(rng, 8.0), random_point(rng, 8.0)
        m = midpoint(x, y)
        assert distance(x, m) == pytest.approx(distance(x, y) / 2, abs=1e-9)
        assert distance(y, m) == pytest.approx(distance(x, y) / 2, abs=1e-9)


def test_near_critical_stable_converges():
    # heaviest atom just under half the total: the fixed point lies far out
    cfg = CircleConfiguration((0.21119765, 1.31865141, 1.1343112), (0.78548177, 3.93584422, 3.9314205))
    poly = phi_fixed_point(cfg)
    assert poly.status == CONVERGED and round_trip_error(cfg, poly) < 1e-8


def test_equilateral_triangle():
    cfg = CircleConfiguration((1, 1, 1), (0, 2 * np.pi / 3, 4 * np.pi / 3))
    poly = phi_fixed_point(cfg)
    assert poly.status == CONVERGED and poly.closure_error < 1e-8
    sides = gauss_map(poly.vertices).masses
    assert np.allclose(sides, 1, atol=1e-8)


def test_heavy_atom_diverges():
    poly = phi_fixed_point(CircleConfiguration((2, 0.5, 0.5), (0, 2, 4)))
    assert poly.status == DIVERGED


def test_antipodal_bigon():
    cfg = CircleConfiguration((1, 1), (0, np.pi))
    poly = phi_fixed_point(cfg)
    assert poly.status == CONVERGED
    verts = polygon_from_point(cfg, poly.vertices[0])
    assert distance(verts[0], verts[-1]) < 1e-8


def test_collinear_mass_balance():
    # all ideal points on one geodesic: closes iff the signed masses balance
    balanced = CircleConfiguration((1, 0.5, 1.5), (0, 0, np.pi))
    assert phi_fixed_point(balanced).status == CONVERGED
    unbalanced = CircleConfiguration((1, 0.5, 1.2), (0, 0, np.pi))
    assert phi_fixed_point(unbalanced, max_iter=5000).status == DIVERGED


def test_random_stable_round_trip():
    rng = np.random.default_rng(3)
    for _ in range(20):
        cfg = stable_config(rng)
        poly = phi_fixed_point(cfg)
        assert poly.status == CONVERGED
        assert poly.closure_error < 1e-8 and round_trip_error(cfg, poly) < 1e-8


def test_gauss_map_of_triangle_gives_side_lengths():
    rng = np.random.default_rng(4)
    pts = [random_point(rng) for _ in range(3)]
    cfg = gauss_map(pts)
    expected = [distance(pts[0], pts[1]), distance(pts[1], pts[2]), distance(pts[2], pts[0])]
    assert np.allclose(cfg.masses, expected)


def test_gauss_map_degenerate():
    cfg = gauss_map([ORIGIN.copy()])
    assert cfg.masses == (0.0,)


def test_invalid_config():
    with pytest.raises(HyperbolicError):
        CircleConfiguration((1, -1), (0, 1))
    with pytest.raises(HyperbolicError):
        CircleConfiguration((1,), (0, 1))
