"""Matrix models for polygons with prescribed Delta-side lengths (type A).

Side lengths in the flat model ``p`` (traceless Hermitian matrices) are the
sorted eigenvalues of differences; in ``X = SL(m, C)/SU(m)`` they are the sorted
logarithms of singular values of ``g1^{-1} g2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

HERMITIAN_TOL = 1e-9
CLOSURE_TOL = 1e-8
SLACK_TOL = 1e-9
INFEASIBLE_RESIDUAL = 1e-3  # heuristic threshold for reporting "confidently infeasible"


class PolygonError(ValueError):
    pass


def _check_hermitian(a: np.ndarray, name: str) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise PolygonError(f"{name} must be a square matrix")
    scale = max(1.0, float(np.abs(a).max()))
    if np.abs(a - a.conj().T).max() > HERMITIAN_TOL * scale:
        raise PolygonError(f"{name} is not Hermitian")
    return a


def delta_length_p(a, b) -> np.ndarray:
    """Decreasing eigenvalues of ``b - a``."""
    a = _check_hermitian(a, "A")
    b = _check_hermitian(b, "B")
    if a.shape != b.shape:
        raise PolygonError("matrices have different sizes")
    d = b - a
    return np.linalg.eigvalsh((d + d.conj().T) / 2)[::-1]


def delta_length_X(g1, g2) -> np.ndarray:
    """Decreasing logarithms of the singular values of ``g1^{-1} g2``."""
    g1 = np.asarray(g1, dtype=complex)
    g2 = np.asarray(g2, dtype=complex)
    for g, name in ((g1, "g1"), (g2, "g2")):
        s = np.linalg.svd(g, compute_uv=False)
        if s[-1] <= 1e-14 * s[0]:
            raise PolygonError(f"{name} is singular")
    sv = np.linalg.svd(np.linalg.solve(g1, g2), compute_uv=False)
    return np.log(sv)  # svd returns decreasing values


# --- random matrices ---------------------------------------------------------------


def random_unitary(m: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_traceless_hermitian(m: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    h = (z + z.conj().T) / 2
    return h - np.trace(h).real / m * np.eye(m)


def random_sl(m: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))) / np.sqrt(2)
    det = np.linalg.det(z)
    return z / det ** (1.0 / m)


# --- momentum minimisation -----------------------------------------------------------


def _herm_basis(m: int) -> list[np.ndarray]:
    """Frobenius-orthonormal basis of Hermitian m x m matrices."""
    basis = []
    for i in range(m):
        e = np.zeros((m, m), complex)
        e[i, i] = 1
        basis.append(e)
    for i in range(m):
        for j in range(i + 1, m):
            e = np.zeros((m, m), complex)
            e[i, j] = e[j, i] = 1 / np.sqrt(2)
            basis.append(e)
            f = np.zeros((m, m), complex)
            f[i, j] = -1j / np.sqrt(2)
            f[j, i] = 1j / np.sqrt(2)
            basis.append(f)
    return basis


def _herm_coords(h: np.ndarray, basis) -> np.ndarray:
    return np.array([np.real(np.vdot(e, h)) for e in basis])


def momentum(ks, diags) -> tuple[list[np.ndarray], np.ndarray]:
    mats = [k @ np.diag(d) @ k.conj().T for k, d in zip(ks, diags)]
    return mats, sum(mats)


def momentum_objective(ks, diags) -> float:
    """``|sum_i k_i D_i k_i^*|_F^2``."""
    _, s = momentum(ks, diags)
    return float(np.real(np.vdot(s, s)))


def momentum_gradient(ks, diags) -> list[np.ndarray]:
    """Riemannian gradient: skew-Hermitian ``G_i`` for perturbations ``k_i -> exp(X_i) k_i``.

    ``d f = sum_i Re tr(G_i^* X_i)`` with ``G_i = 2 [S, A_i]``.
    """
    mats, s = momentum(ks, diags)
    return [2 * (s @ a - a @ s) for a in mats]


@dataclass
class MomentumResult:
    success: bool
    residual: float
    matrices: list = field(default_factory=list)
    unitaries: list = field(default_factory=list)
    iterations: int = 0
    restarts_used: int = 0

    @property
    def confidently_infeasible(self) -> bool:
        return not self.success and self.residual > INFEASIBLE_RESIDUAL


def _unitarize(k: np.ndarray) -> np.ndarray:
    """Nearest unitary (polar factor); removes round-off drift."""
    u, _, vh = np.linalg.svd(k)
    return u @ vh


def _descend(ks, diags, tol, max_iter, basis):
    n = len(ks)
    f = momentum_objective(ks, diags)
    it = 0
    for it in range(1, max_iter + 1):
        mats, s = momentum(ks, diags)
        res = np.sqrt(f)
        if res < tol:
            return ks, res, it
        # linearised residual: S + sum_i [X_i, A_i] with X_i = i H_i, H_i Hermitian
        cols = []
        for a in mats:
            for e in basis:
                x = 1j * e
                cols.append(_herm_coords(x @ a - a @ x, basis))
        jac = np.array(cols).T
        rvec = _herm_coords(s, basis)
        step, *_ = np.linalg.lstsq(jac, -rvec, rcond=None)
        dirs = [1j * sum(c * e for c, e in zip(step[i * len(basis):(i + 1) * len(basis)], basis))
                for i in range(n)]
        grad = momentum_gradient(ks, diags)
        slope = sum(np.real(np.vdot(g, d)) for g, d in zip(grad, dirs))
        if not np.isfinite(slope) or slope >= 0:
            dirs = [-g for g in grad]
            slope = -sum(np.real(np.vdot(g, g)) for g in grad)
        t = 1.0
        while t > 1e-12:
            trial = [expm(t * d) @ k for d, k in zip(dirs, ks)]
            ft = momentum_objective(trial, diags)
            if ft <= f + 1e-4 * t * slope:
                break
            t /= 2
        else:
            return ks, np.sqrt(f), it
        ks = [_unitarize(k) for k in trial]
        f = momentum_objective(ks, diags)
    return ks, np.sqrt(f), it


def construct_polygon_momentum(spectra, tol: float = CLOSURE_TOL, max_iter: int = 200,
                               restarts: int = 10, seed: int = 0) -> MomentumResult:
    """Find unitaries ``k_i`` with ``sum_i k_i diag(h_i) k_i^* = 0``.

    Each attempt is a Riemannian descent on ``U(m)^n`` with Gauss-Newton
    directions, Armijo backtracking and retraction ``k -> exp(X) k``.
    """
    diags = [np.asarray([float(x) for x in h], dtype=float) for h in spectra]
    if not diags:
        raise PolygonError("no side lengths given")
    m = len(diags[0])
    for d in diags:
        if len(d) != m:
            raise PolygonError("spectra have different sizes")
        if np.any(np.diff(d) > 0):
            raise PolygonError("spectra must be sorted decreasingly")
        if abs(d.sum()) > 1e-9 * max(1.0, np.abs(d).max()):
            raise PolygonError("spectra must sum to zero")
    rng = np.random.default_rng(seed)
    basis = _herm_basis(m)
    best = None
    for attempt in range(1, restarts + 1):
        ks = [random_unitary(m, rng) for _ in diags]
        ks, res, it = _descend(ks, diags, tol, max_iter, basis)
        if best is None or res < best.residual:
            mats, _ = momentum(ks, diags)
            best = MomentumResult(bool(res < tol), float(res), mats, ks, it, attempt)
        if res < tol:
            break
    best.restarts_used = attempt
    return best


# --- Thompson sampling -----------------------------------------------------------------


def sample_thompson(n: int = 3, count: int = 1000, seed: int = 42, m: int = 3) -> dict:
    """Random closed n-gons in ``p`` and in ``X``; report the worst A2 inequality value."""
    from .coxeter import build_root_system
    from .inequalities import stability_system

    if n < 3:
        raise PolygonError("need n >= 3")
    if m != 3:
        raise PolygonError("only m = 3 (root system A2) is supported")
    rows = np.array([q.flat() for q in stability_system(build_root_system("A2"), n, with_chamber=False)],
                    dtype=float)
    rng = np.random.default_rng(seed)
    report = {}
    worst_p = -np.inf
    for _ in range(count):
        sides = [random_traceless_hermitian(m, rng) for _ in range(n - 1)]
        sides.append(-sum(sides))
        verts = [np.zeros((m, m), complex)]
        for a in sides:
            verts.append(verts[-1] + a)
        lengths = np.concatenate([delta_length_p(verts[i], verts[i + 1]) for i in range(n)])
        worst_p = max(worst_p, float((rows @ lengths).max()))
    worst_x = -np.inf
    for _ in range(count):
        gs = [random_sl(m, rng) for _ in range(n - 1)]
        prod = np.eye(m, dtype=complex)
        for g in gs:
            prod = prod @ g
        gs.append(np.linalg.inv(prod))
        verts = [np.eye(m, dtype=complex)]
        for g in gs:
            verts.append(verts[-1] @ g)
        lengths = np.concatenate([delta_length_X(verts[i], verts[i + 1]) for i in range(n)])
        worst_x = max(worst_x, float((rows @ lengths).max()))
    report["n"] = n
    report["samples"] = count
    report["seed"] = seed
    report["inequalities"] = int(len(rows))
    report["max_violation_p"] = worst_p
    report["max_violation_X"] = worst_x
    report["ok"] = bool(worst_p <= SLACK_TOL and worst_x <= SLACK_TOL)
    return report
