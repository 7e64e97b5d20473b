import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dsrange.numrange import (BoundaryCurve, DiscRegion, EllipseRegion, boundary_sweep, contains_point,
                              convex_hull, dilation_weight_disc, ellipse_2x2, ellipse_distance,
                              hermitian_top_eigenpair, irrational_rotation_ellipse, jacobi_eigh,
                              numerical_radius, polygon_distance, rotation_ellipse,
                              rotation_triple_disc, signed_distance, vanishing_weight_disc)
from dsrange.special import DomainError


def count_below(H, lam):
    """Eigenvalues of H below lam: negative pivots of H - lam I (Sylvester inertia)."""
    a = [[complex(x) for x in row] for row in H]
    n = len(a)
    for i in range(n):
        a[i][i] -= lam
    neg = 0
    for k in range(n):
        piv = a[k][k].real
        if piv < 0:
            neg += 1
        for i in range(k + 1, n):
            f = a[i][k] / piv
            for j in range(k + 1, n):
                a[i][j] -= f * a[k][j]
    return neg


def top_eigenvalue_oracle(H, tol=1e-13):
    hi = float(np.sum(np.abs(H))) + 1.0
    lo = -hi
    n = H.shape[0]
    while hi - lo > tol * max(1.0, abs(hi)):
        mid = 0.5 * (lo + hi)
        if count_below(H, mid) == n:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def random_hermitian(rng, n):
    X = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (X + X.conj().T) / 2


def test_top_eigenpair_examples():
    lam, v = hermitian_top_eigenpair(np.diag([1.0, 2.0, 3.0]))
    assert lam == pytest.approx(3.0)
    assert abs(abs(v[2]) - 1) < 1e-14
    lam, v = hermitian_top_eigenpair(np.array([[0, 1], [1, 0]]))
    assert lam == pytest.approx(1.0)
    assert abs(abs(np.vdot(v, [1, 1])) / math.sqrt(2) - 1) < 1e-14


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("method", ["jacobi", "lapack"])
def test_top_eigenvalue_against_inertia_bisection(seed, method):
    H = random_hermitian(np.random.default_rng(seed), 8)
    lam, v = hermitian_top_eigenpair(H, method)
    assert lam == pytest.approx(top_eigenvalue_oracle(H), abs=1e-9)
    assert np.linalg.norm(H @ v - lam * v) <= 1e-10 * np.linalg.norm(H, 2)


@given(st.integers(1, 12), st.integers(0, 10 ** 6))
@settings(max_examples=40, deadline=None)
def test_jacobi_full_spectrum(n, seed):
    H = random_hermitian(np.random.default_rng(seed), n)
    w, V = jacobi_eigh(H)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(H), atol=1e-11)
    np.testing.assert_allclose(V.conj().T @ V, np.eye(n), atol=1e-12)
    np.testing.assert_allclose(H @ V, V * w, atol=1e-10)


def test_non_hermitian_rejected():
    with pytest.raises(DomainError):
        hermitian_top_eigenpair(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ValueError):
        hermitian_top_eigenpair(np.eye(2), method="nope")


def test_convex_hull_basic():
    pts = np.array([0, 1, 1 + 1j, 1j, 0.5 + 0.5j, 0.5])
    h = convex_hull(pts)
    assert set(h.tolist()) == {0, 1, 1 + 1j, 1j}
    e = np.roll(h, -1) - h
    assert np.all((np.conj(e) * np.roll(e, -1)).imag > 0)
    assert convex_hull([2j, 2j]).tolist() == [2j]


def test_identity_range_is_point():
    c = boundary_sweep(np.eye(4), 64)
    assert c.kind == "point"
    assert abs(c.hull[0] - 1) < 1e-12
    assert not contains_point(c, 1.0, 0.0)


def test_nilpotent_range_is_disc():
    c = boundary_sweep(np.array([[0, 0], [math.sqrt(2), 0]]), 256)
    assert np.allclose(np.abs(c.points), math.sqrt(2) / 2, atol=1e-12)
    assert numerical_radius(None, curve=c) == pytest.approx(math.sqrt(2) / 2, abs=1e-12)


def test_normal_matrix_range_is_segment():
    c = boundary_sweep(np.diag([1.0, 0.3]), 64)
    assert c.kind == "segment"
    assert sorted(np.round(c.hull.real, 12)) == [0.3, 1.0]
    assert signed_distance(c, 0.5) == -math.inf


def test_flat_edge_recovers_segment_endpoints():
    # W = triangle with vertices 1, i, -1 (normal matrix); flat edges everywhere
    c = boundary_sweep(np.diag([1.0, 1j, -1.0]), 16)
    for v in (1, 1j, -1):
        assert np.min(np.abs(c.hull - v)) < 1e-12


@pytest.mark.parametrize("A,w", [
    (np.eye(3), 1.0), (np.array([[0, 0], [3, 0]]), 1.5), (np.diag([1.0, -1.0]), 1.0),
    (np.diag(np.ones(4), -1), math.cos(math.pi / 6)),
])
def test_numerical_radius_examples(A, w):
    assert numerical_radius(A, 2048) == pytest.approx(w, abs=1e-6)
    assert numerical_radius(A, 2048) <= w + 1e-12


def test_angle_count_floor():
    with pytest.raises(DomainError):
        boundary_sweep(np.eye(2), 8)


def test_sweep_monotone_and_on_hull():
    rng = np.random.default_rng(3)
    A = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    c1 = boundary_sweep(A, 128)
    c2 = boundary_sweep(A, 256)
    e = np.roll(c2.hull, -1) - c2.hull
    for p in c1.hull:
        assert np.min((np.conj(e) * (p - c2.hull)).imag / np.abs(e)) >= -1e-10
    assert np.max(polygon_distance(c1.hull, c1.points)) < 1e-9


def test_rotation_equivariance():
    rng = np.random.default_rng(4)
    A = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    # rotating A by e^{ia} shifts the support angle by -a; use a grid-aligned angle
    k = 37
    rot = cmath.exp(2j * math.pi * k / 256)
    a = boundary_sweep(A, 256).points
    b = boundary_sweep(rot * A, 256).points
    np.testing.assert_allclose(np.roll(b, k), rot * a, atol=1e-9)


def test_refined_sweep_tightens_thin_ellipse():
    A = np.array([[1, 0], [0.02, -1]])
    E = ellipse_2x2(1, -1, 0.02)
    plain = boundary_sweep(A, 256)
    fine = boundary_sweep(A, 256, refine_tol=1e-9)
    gap = lambda c: np.max(polygon_distance(c.hull, E.boundary(2000)))
    assert gap(fine) < 1e-8 < gap(plain)


def test_contains_point_examples():
    disc = BoundaryCurve.from_points(np.zeros(256), np.exp(2j * np.pi * np.arange(256) / 256))
    assert contains_point(disc, 0j, 0.5)
    assert not contains_point(disc, 0.9, 0.5)
    seg = BoundaryCurve.from_points(np.zeros(2), np.array([0, 1]))
    assert seg.degenerate and not contains_point(seg, 0.5, 1e-9)


def test_ellipse_2x2_examples():
    E = ellipse_2x2(0, 0, 1)
    assert E.major_axis_len == E.minor_axis_len == 1
    E = ellipse_2x2(1, -1, math.sqrt(2))
    assert E.major_axis_len == pytest.approx(math.sqrt(6))
    assert E.minor_axis_len == pytest.approx(math.sqrt(2))
    assert {E.focus1, E.focus2} == {1, -1}
    S = ellipse_2x2(0.5, 2j, 0)
    assert S.minor_axis_len == 0 and S.major_axis_len == pytest.approx(abs(0.5 - 2j))


def test_ellipse_region_consistency_enforced():
    with pytest.raises(DomainError):
        EllipseRegion(0, 1, 1.0, 1.0)
    with pytest.raises(DomainError):
        DiscRegion(0, -1.0)


@pytest.mark.parametrize("a,b,c", [(1, -1, 0.7), (0.3j, 0.3j, 1.2), (0.2 + 0.1j, -0.4 + 0.5j, 0.05)])
def test_ellipse_distance_against_dense_sampling(a, b, c):
    E = ellipse_2x2(a, b, c)
    dense = E.boundary(200_000)
    rng = np.random.default_rng(0)
    q = E.center + 1.5 * (rng.uniform(-1, 1, 50) + 1j * rng.uniform(-1, 1, 50))
    q = np.append(q, [E.center, E.focus1])
    brute = np.array([np.min(np.abs(dense - x)) for x in q])
    np.testing.assert_allclose(ellipse_distance(E, q), brute, atol=1e-9)


def test_polygon_distance():
    sq = np.array([0, 1, 1 + 1j, 1j])
    assert polygon_distance(sq, 0.5 + 0.5j) == pytest.approx(0.5)
    assert polygon_distance(sq, 2 + 0.5j) == pytest.approx(1.0)
    np.testing.assert_allclose(polygon_distance(np.array([0, 2]), np.array([1 + 1j, -1])), [1, 1])


# predicted regions

def test_vanishing_weight_disc():
    assert vanishing_weight_disc(2, 0.5, 1.0).radius == pytest.approx(8 / 11, rel=1e-14)
    assert vanishing_weight_disc(3, 0.5, 0.0).radius == 0
    for r in (1, 2, 5):
        assert vanishing_weight_disc(r, 0.3, 2.0).radius < 2.0


def test_dilation_weight_disc():
    assert dilation_weight_disc(2, 0.5, 1.0, 1.0).radius == pytest.approx(1 / math.sqrt(3), rel=1e-14)
    assert dilation_weight_disc(4, 0.5, 1j, 0).radius == 0
    with pytest.raises(DomainError):
        dilation_weight_disc(1, 0.5, 1.0, 1.0)


@pytest.mark.parametrize("s", [0.1, 0.5, 0.9])
def test_dilation_weight_disc_example_family(s):
    # psi = alpha z / (1 - beta z): b_{r-1} = alpha beta^{r-2}; f(2) = |mu alpha| / sqrt(2(s+1))
    alpha, beta, mu = 0.3, 0.4, cmath.exp(0.2j)
    f = [dilation_weight_disc(r, s, mu, alpha * beta ** (r - 2)).radius for r in range(2, 12)]
    assert f[0] == pytest.approx(abs(mu * alpha) / math.sqrt(2 * (s + 1)), rel=1e-14)
    assert all(x > y for x, y in zip(f, f[1:]))


def test_rotation_triple_disc():
    # one nonzero term: radius (1/2) sqrt(w_1) |b_1| = sqrt(2)/2 at s = 1/2
    d = rotation_triple_disc(1, 1, 3, 0.5, [0.3, 1.0, 0.0, 0.0])
    assert d.center == 0.3 and d.radius == pytest.approx(math.sqrt(2) / 2, rel=1e-14)
    # r2 = 2 puts b_1 in two slots: w_1 + (w_2/w_1) = 2 + 4/3
    d = rotation_triple_disc(1, 1, 2, 0.5, [0.0, 1.0, 0.0])
    assert d.radius == pytest.approx(0.5 * math.sqrt(10 / 3), rel=1e-14)
    with pytest.raises(DomainError):
        rotation_triple_disc(2, 1, 2, 0.5, [1.0, 0, 0, 0, 0])
    with pytest.raises(DomainError):
        rotation_triple_disc(1, 1, 2, 0.5, [0.0, 1.0, 1.0])
    with pytest.raises(DomainError):
        rotation_triple_disc(1, 2, 1, 0.5, [0.0, 1.0, 1.0])


def test_rotation_ellipse():
    E = rotation_ellipse(2, 0, 1, 0.5, 1.0, 1.0)
    assert {round(E.focus1.real, 12), round(E.focus2.real, 12)} == {1.0, -1.0}
    assert E.minor_axis_len == pytest.approx(math.sqrt(2))
    assert E.major_axis_len == pytest.approx(math.sqrt(6))
    D = rotation_ellipse(3, 1, 2, 0.5, 0.0, 1.0)
    assert D.major_axis_len == pytest.approx(D.minor_axis_len)
    for k in (0, 3):
        with pytest.raises(DomainError):
            rotation_ellipse(3, 0, k, 0.5, 1.0, 1.0)


def test_irrational_rotation_ellipse():
    t = 1 / math.sqrt(2)
    E = irrational_rotation_ellipse(1, 1, t, 0.5, 1.0, 1.0)
    assert E.minor_axis_len == pytest.approx(math.sqrt(4 / 3), rel=1e-14)
    E0 = irrational_rotation_ellipse(0, 3, t, 0.25, 1.0, 1.0)
    assert E0.minor_axis_len ** 2 == pytest.approx(math.gamma(4) * math.gamma(0.25) / math.gamma(3.25))
    seg = irrational_rotation_ellipse(2, 1, t, 0.5, 1.0, 0.0)
    assert seg.minor_axis_len == 0
    with pytest.raises(DomainError):
        irrational_rotation_ellipse(1, 0, t, 0.5, 1, 1)
