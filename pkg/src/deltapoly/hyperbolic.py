"""Polygons in the hyperbolic plane with prescribed Gauss map.

Hyperboloid model ``{x : <x, x> = -1, x0 > 0}`` in R^{2,1}; an ideal point is
the null vector ``(1, cos t, sin t)``.  Sliding a point a distance ``t``
towards the ideal point ``xi`` has the closed form

    phi_{xi,t}(x) = e^{-t} x + (sinh t / a) xi,    a = -<x, xi>,

which lowers the Busemann function ``log(-<x, xi>)`` by exactly ``t``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ORIGIN = np.array([1.0, 0.0, 0.0])
# Beyond radius ~37 a unit step along the circle falls below one ulp of the
# coordinates and the iterate freezes, so escape is declared well before that.
ESCAPE_HEIGHT = np.cosh(30.0)

CONVERGED = "converged"
DIVERGED = "diverged"


class HyperbolicError(ValueError):
    pass


def lorentz(x, y) -> float:
    return float(-x[0] * y[0] + x[1] * y[1] + x[2] * y[2])


def normalize(x) -> np.ndarray:
    """Put ``x`` back on the upper sheet, trusting its spatial part."""
    x = np.asarray(x, dtype=float)
    return np.array([np.sqrt(1.0 + x[1] ** 2 + x[2] ** 2), x[1], x[2]])


def distance(x, y) -> float:
    """Hyperbolic distance from polar data, stable both at short range and far out.

    ``sinh^2(d/2) = sinh^2((r - s)/2) + sinh r sinh s sin^2(theta/2)``.
    """
    r = np.arcsinh(np.hypot(x[1], x[2]))
    s = np.arcsinh(np.hypot(y[1], y[2]))
    theta = np.arctan2(x[1] * y[2] - x[2] * y[1], x[1] * y[1] + x[2] * y[2])
    h = np.sinh((r - s) / 2) ** 2 + np.sinh(r) * np.sinh(s) * np.sin(theta / 2) ** 2
    return float(2 * np.arcsinh(np.sqrt(h)))


def midpoint(x, y, d: float | None = None) -> np.ndarray:
    """Geodesic midpoint: ``-<x+y, x+y> = 4 cosh^2(d/2)``."""
    d = distance(x, y) if d is None else d
    return normalize((np.asarray(x, float) + np.asarray(y, float)) / (2 * np.cosh(d / 2)))


def ideal_point(angle: float) -> np.ndarray:
    return np.array([1.0, np.cos(angle), np.sin(angle)])


def point_from_polar(r: float, angle: float) -> np.ndarray:
    return np.array([np.cosh(r), np.sinh(r) * np.cos(angle), np.sinh(r) * np.sin(angle)])


def busemann_factor(x, angle: float) -> float:
    """``-<x, xi>`` for ``xi = (1, cos angle, sin angle)`` without cancellation."""
    r = np.hypot(x[1], x[2])
    phi = np.arctan2(x[2], x[1])
    return float(1.0 / (np.sqrt(1.0 + r * r) + r) + 2.0 * r * np.sin((angle - phi) / 2) ** 2)


def slide(x, angle: float, t: float) -> np.ndarray:
    """``phi_{xi,t}``: move ``x`` a distance ``t`` along the ray towards ``xi(angle)``."""
    a = busemann_factor(x, angle)
    c = np.sinh(t) / a
    e = np.exp(-t)
    return normalize([0.0, e * x[1] + c * np.cos(angle), e * x[2] + c * np.sin(angle)])


@dataclass(frozen=True)
class CircleConfiguration:
    masses: tuple[float, ...]
    angles: tuple[float, ...]

    def __post_init__(self):
        if len(self.masses) != len(self.angles):
            raise HyperbolicError("masses and angles differ in length")
        if any(m < 0 for m in self.masses):
            raise HyperbolicError("masses must be nonnegative")

    @property
    def n(self) -> int:
        return len(self.masses)

    def ideal_points(self) -> list[np.ndarray]:
        return [ideal_point(a) for a in self.angles]


@dataclass
class HyperbolicPolygon:
    vertices: list  # x_0 .. x_{n-1}; side i runs from x_{i-1} to x_i
    config: CircleConfiguration | None = None
    status: str = CONVERGED
    iterations: int = 0
    closure_error: float = 0.0


def big_phi(cfg: CircleConfiguration, x) -> np.ndarray:
    for m, a in zip(cfg.masses, cfg.angles):
        x = slide(x, a, m)
    return x


def polygon_from_point(cfg: CircleConfiguration, x0) -> list[np.ndarray]:
    verts = [np.asarray(x0, float)]
    for m, a in zip(cfg.masses, cfg.angles):
        verts.append(slide(verts[-1], a, m))
    return verts  # n + 1 points, last one should equal the first


def phi_fixed_point(cfg: CircleConfiguration, tol: float = 1e-12, max_iter: int = 100_000,
                    start=None) -> HyperbolicPolygon:
    """Iterate ``Phi = phi_n o ... o phi_1`` from the origin.

    Plain Picard iteration; once the displacement stops shrinking the
    Krasnoselskii-Mann average (geodesic midpoint of ``x`` and ``Phi(x)``) is
    used instead, which converges for any nonexpansive map with a fixed point.
    """
    x = ORIGIN.copy() if start is None else normalize(start)
    if len(cfg.masses) == 0:
        return HyperbolicPolygon([x], cfg, CONVERGED, 0, 0.0)
    prev = np.inf
    averaged = False
    for it in range(1, max_iter + 1):
        y = big_phi(cfg, x)
        disp = distance(x, y)
        if disp < tol:
            verts = polygon_from_point(cfg, y)
            return HyperbolicPolygon(verts[:-1], cfg, CONVERGED, it, distance(verts[0], verts[-1]))
        if y[0] > ESCAPE_HEIGHT:
            return HyperbolicPolygon([y], cfg, DIVERGED, it, disp)
        if not averaged and it > 50 and disp > 0.999 * prev:
            averaged = True
        x = midpoint(x, y, disp) if averaged else y
        prev = disp
    return HyperbolicPolygon([x], cfg, DIVERGED, max_iter, prev)


def forward_angle(a, b) -> float:
    """Angle of the ideal endpoint of the ray from ``a`` through ``b``.

    ``a + u`` cancels badly far from the origin, so instead boost ``a`` to the
    origin along its radius (polar data only), read off the direction ``beta``
    of ``b`` there, and boost back: ``tan(psi/2) = e^{-r} tan(beta/2)``.
    """
    r = np.arcsinh(np.hypot(a[1], a[2]))
    s = np.arcsinh(np.hypot(b[1], b[2]))
    phi = np.arctan2(a[2], a[1])
    theta = np.arctan2(a[1] * b[2] - a[2] * b[1], a[1] * b[1] + a[2] * b[2])
    bx = np.sinh(s - r) - 2 * np.cosh(r) * np.sinh(s) * np.sin(theta / 2) ** 2
    by = np.sinh(s) * np.sin(theta)
    beta = np.arctan2(by, bx)
    psi = 2 * np.arctan2(np.exp(-r) * np.sin(beta / 2), np.cos(beta / 2))
    return float(phi + psi)


def gauss_map(vertices) -> CircleConfiguration:
    """Side lengths and forward ideal endpoints of a closed polygon."""
    verts = [np.asarray(v, float) for v in vertices]
    n = len(verts)
    masses, angles = [], []
    for i in range(n):
        a, b = verts[i - 1], verts[i]
        d = distance(a, b)
        masses.append(d)
        if d == 0.0:
            angles.append(0.0)  # ideal point arbitrary for a degenerate side
            continue
        angles.append(forward_angle(a, b))
    # side i is x_{i-1} -> x_i; vertex 0 closes the loop from x_{n-1}
    return CircleConfiguration(tuple(masses[1:] + masses[:1]), tuple(angles[1:] + angles[:1]))


def angle_gap(a: float, b: float) -> float:
    return float(abs((a - b + np.pi) % (2 * np.pi) - np.pi))


def round_trip_error(cfg: CircleConfiguration, poly: HyperbolicPolygon, min_mass: float = 1e-6) -> float:
    back = gauss_map(poly.vertices)
    err = max(abs(a - b) for a, b in zip(cfg.masses, back.masses))
    for m, a, b in zip(cfg.masses, cfg.angles, back.angles):
        if m > min_mass:
            err = max(err, angle_gap(a, b))
    return err
