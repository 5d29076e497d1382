import numpy as np
import pytest
from scipy.linalg import expm

from deltapoly.coxeter import build_root_system
from deltapoly.inequalities import system
from deltapoly.polygons import (PolygonError, construct_polygon_momentum, delta_length_p, delta_length_X,
                                momentum_gradient, momentum_objective, random_sl,
                                random_traceless_hermitian, random_unitary, sample_thompson)
from reference_tables import GENERATORS

RNG_SEED = 123


def test_delta_length_p_examples():
    a = np.zeros((3, 3))
    assert np.allclose(delta_length_p(a, a), 0)
    assert np.allclose(delta_length_p(a, np.diag([-1, 2, -1])), [2, -1, -1])


def test_delta_length_p_invariances():
    rng = np.random.default_rng(RNG_SEED)
    for _ in range(20):
        a, b, c = (random_traceless_hermitian(3, rng) for _ in range(3))
        u = random_unitary(3, rng)
        base = delta_length_p(a, b)
        assert abs(base.sum()) < 1e-10
        assert np.allclose(delta_length_p(u @ a @ u.conj().T, u @ b @ u.conj().T), base, atol=1e-10)
        assert np.allclose(delta_length_p(a + c, b + c), base, atol=1e-10)


def test_delta_length_p_rejects_non_hermitian():
    with pytest.raises(PolygonError):
        delta_length_p(np.zeros((2, 2)), np.array([[0, 1], [0, 0]]))


def test_delta_length_X_examples():
    e = np.e
    assert np.allclose(delta_length_X(np.eye(3), np.eye(3)), 0)
    assert np.allclose(delta_length_X(np.eye(3), np.diag([1, e, 1 / e])), [1, 0, -1])
    with pytest.raises(PolygonError):
        delta_length_X(np.eye(2), np.zeros((2, 2)))


def test_delta_length_X_swap_is_sharp():
    rs = build_root_system("A2")
    rng = np.random.default_rng(RNG_SEED)
    for _ in range(20):
        x, z = random_sl(3, rng), random_sl(3, rng)
        fwd = delta_length_X(x, z)
        assert abs(fwd.sum()) < 1e-9
        back = delta_length_X(z, x)
        assert np.allclose(back, -fwd[::-1], atol=1e-9)  # -w0 on A2
        w0 = np.array(rs.longest.matrix, dtype=float)
        assert np.allclose(back, -w0 @ fwd, atol=1e-9)


def test_weak_triangle_inequality_on_samples():
    # sigma(x, z) <= sigma(x, y) + sigma(y, z) in the dominance order
    rs = build_root_system("A2")
    lam = np.array(rs.parabolic_weights, dtype=float)
    rng = np.random.default_rng(RNG_SEED)
    for _ in range(200):
        x, y, z = (random_sl(3, rng) for _ in range(3))
        gap = delta_length_X(x, y) + delta_length_X(y, z) - delta_length_X(x, z)
        assert (lam @ gap).min() > -1e-9


def test_gradient_matches_finite_differences():
    rng = np.random.default_rng(RNG_SEED)
    for _ in range(5):
        n = 3
        diags = [np.sort(rng.standard_normal(3))[::-1] for _ in range(n)]
        diags = [d - d.mean() for d in diags]
        ks = [random_unitary(3, rng) for _ in range(n)]
        grad = momentum_gradient(ks, diags)
        for i in range(n):
            h = random_traceless_hermitian(3, rng)
            x = 1j * h / np.linalg.norm(h)  # skew-Hermitian direction
            eps = 1e-5
            plus = [expm(eps * x) @ k if j == i else k for j, k in enumerate(ks)]
            minus = [expm(-eps * x) @ k if j == i else k for j, k in enumerate(ks)]
            fd = (momentum_objective(plus, diags) - momentum_objective(minus, diags)) / (2 * eps)
            analytic = np.real(np.vdot(grad[i], x))
            assert abs(fd - analytic) <= 1e-5 * max(1.0, abs(analytic))


def test_construct_zero_spectra():
    res = construct_polygon_momentum([[0, 0, 0]] * 3)
    assert res.success and res.residual == 0
    assert all(np.allclose(a, 0) for a in res.matrices)


@pytest.mark.parametrize("gen", GENERATORS["A2"])
def test_construct_generators(gen):
    res = construct_polygon_momentum(gen)
    assert res.success and res.residual < 1e-8
    for a, h in zip(res.matrices, gen):
        assert np.allclose(np.linalg.eigvalsh(a)[::-1], h, atol=1e-9)
    assert np.abs(sum(res.matrices)).max() < 1e-8


def test_construct_infeasible():
    e = 0.1
    res = construct_polygon_momentum([[2, -1, -1], [e, 0, -e], [e, 0, -e]])
    assert not res.success and res.residual > 1e-3 and res.confidently_infeasible


def test_construct_input_validation():
    with pytest.raises(PolygonError):
        construct_polygon_momentum([[1, 0, -1], [-1, 0, 1]])
    with pytest.raises(PolygonError):
        construct_polygon_momentum([[1, 1, 1]])
    with pytest.raises(PolygonError):
        construct_polygon_momentum([[1, -1], [1, 0, -1]])


def test_thompson_small_sample():
    rep = sample_thompson(3, 100, seed=1)
    assert rep["ok"] and rep["inequalities"] == len(system(build_root_system("A2"), 3, with_chamber=False))
    rep4 = sample_thompson(4, 50, seed=2)
    assert rep4["ok"]


def test_thompson_degenerate_polygon():
    sys_ = system(build_root_system("A2"), 3, with_chamber=False)
    lengths = [delta_length_X(np.eye(3), np.eye(3)) for _ in range(3)]
    rows = np.array([q.flat() for q in sys_], dtype=float)
    assert (rows @ np.concatenate(lengths)).max() <= 1e-12
