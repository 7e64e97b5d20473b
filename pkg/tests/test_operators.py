import cmath
import json
import math

import numpy as np
import numpy.polynomial.polynomial as P
import pytest

from dsrange.operators import (ConstantMap, Dilation, IdentityMap, Mobius, NormalizedKernel, One,
                               OperatorSpec, SeriesMap, SeriesWeight, adjoint_kernel_action,
                               build_matrix, compression, weyl_operator, xgamma_operator)
from dsrange.space import kernel_element, to_basis
from dsrange.special import DomainError, monomial_norm_sq


def oracle_matrix(psi, phi, s, N):
    """Column r = coefficients of psi*phi^r via numpy's polynomial algebra."""
    w = np.array([monomial_norm_sq(n, s) for n in range(N + 1)])
    A = np.zeros((N + 1, N + 1), dtype=complex)
    power = np.array([1.0 + 0j])
    for r in range(N + 1):
        col = P.polymul(psi, power)[: N + 1]
        A[: col.size, r] = col
        power = P.polymul(power, phi)[: N + 1]
    return A * np.sqrt(w)[:, None] / np.sqrt(w)[None, :]


@pytest.mark.parametrize("psi,phi", [
    ([1.0, 0.5], [0.0, 0.5]),
    ([0.2, -1j, 0.3], [0.1, 0.4, 0.2j]),
    ([1.0], [0.0, 0.0, 1.0]),
])
def test_matrix_matches_polynomial_oracle(psi, phi):
    s, N = 0.4, 12
    spec = OperatorSpec(SeriesWeight(psi), SeriesMap(phi), s, N)
    np.testing.assert_allclose(build_matrix(spec).entries, oracle_matrix(psi, phi, s, N), atol=1e-14)


def test_identity_operator_is_identity_matrix():
    A = build_matrix(OperatorSpec(One(), IdentityMap(), 0.5, 10))
    np.testing.assert_allclose(A.entries, np.eye(11), atol=0)


def test_dilation_is_diagonal():
    lam = 0.3 - 0.2j
    A = build_matrix(OperatorSpec(One(), Dilation(lam), 0.5, 10)).entries
    np.testing.assert_allclose(A, np.diag(lam ** np.arange(11)), atol=1e-16)


def test_constant_map_is_rank_one():
    A = build_matrix(OperatorSpec(SeriesWeight([1.0, 0.5]), ConstantMap(0.3), 0.5, 12)).entries
    sv = np.linalg.svd(A, compute_uv=False)
    assert sv[1] < 1e-13 * sv[0]


def test_weyl_first_column_by_hand():
    # C e_0 = k^_gamma, so column 0 holds the basis coordinates of the unit kernel
    g, s, N = 0.5, 0.5, 4
    A = build_matrix(weyl_operator(g, 1.0, s, N)).entries
    expect = to_basis(kernel_element(g, s, N, normalized=True))
    np.testing.assert_allclose(A[:, 0], expect, atol=1e-15)
    assert A[0, 0] == pytest.approx((1 - g * g) ** (s / 2))


def test_adjoint_on_kernels_matches_matrix():
    s, N = 0.5, 96
    spec = OperatorSpec(SeriesWeight([1.0, 0.2, -0.1]), Mobius(0.3 + 0.1j, 1j), s, N)
    A = build_matrix(spec).entries
    for z in (0.0, 0.2 - 0.1j, -0.3j):
        got = to_basis(adjoint_kernel_action(spec, z))
        via_matrix = A.conj().T @ to_basis(kernel_element(z, s, N))
        np.testing.assert_allclose(got, via_matrix, atol=1e-12)


def test_adjoint_domain():
    spec = OperatorSpec(One(), IdentityMap(), 0.5, 8)
    with pytest.raises(DomainError):
        adjoint_kernel_action(spec, 1.0)


def _weight(g, s, z):
    return NormalizedKernel(g).evaluate(z, s)


@pytest.mark.parametrize("g", [0.3, 0.5j, 0.7 * cmath.exp(1j * math.pi / 4)])
@pytest.mark.parametrize("s", [0.25, 0.75])
def test_square_law_pointwise(g, s):
    """C_g C_g = C_{g'} with g' = 2g/(1+|g|^2), and C_g C_{-g} = I, on sample functions."""
    gp = 2 * g / (1 + abs(g) ** 2)
    phi, phim, phip = Mobius(g), Mobius(-g), Mobius(gp)
    f = lambda z: np.exp(z) + z ** 3
    for z in (0.0, 0.4 - 0.3j, -0.6j, 0.9):
        twice = _weight(g, s, z) * _weight(g, s, phi(z)) * f(phi(phi(z)))
        assert twice == pytest.approx(_weight(gp, s, z) * f(phip(z)), rel=1e-12)
        inverse = _weight(g, s, z) * _weight(-g, s, phi(z)) * f(phim(phi(z)))
        assert inverse == pytest.approx(f(z), rel=1e-12)


def test_square_law_matrices():
    g, s, N = 0.4, 0.5, 160
    gp = 2 * g / (1 + g * g)
    X = xgamma_operator(g, s, N).entries
    ref = (build_matrix(weyl_operator(gp, 1, s, N)).entries
           + build_matrix(weyl_operator(-gp, 1, s, N)).entries + 2 * np.eye(N + 1))
    # truncation only pollutes the high-index corner
    np.testing.assert_allclose((X @ X)[:20, :20], ref[:20, :20], atol=1e-10)


def test_compression_selects_and_orders():
    A = np.arange(16).reshape(4, 4)
    np.testing.assert_array_equal(compression(A, [2, 0]), [[10, 8], [2, 0]])
    with pytest.raises(DomainError):
        compression(A, [1, 1])
    with pytest.raises(DomainError):
        compression(A, [4])


def test_rotation_compression_display():
    s, b = 0.5, [1.0, 1.0]
    A = build_matrix(OperatorSpec(SeriesWeight(b), Dilation(-1.0), s, 16))
    np.testing.assert_allclose(compression(A, [0, 1]), [[1, 0], [math.sqrt(2), -1]], atol=1e-14)


def test_to_json_layout():
    spec = OperatorSpec(NormalizedKernel(0.5), Mobius(0.5, 1.0), 0.5, 3)
    A = build_matrix(spec)
    d = json.loads(json.dumps(A.to_json()))
    assert d["N"] == 3 and d["s"] == 0.5
    assert d["psi"] == "kernel gamma=0.5" and d["phi"] == "mobius gamma=0.5 alpha=1.0"
    assert len(d["entries"]) == 16
    assert complex(*d["entries"][4]) == A.entries[1, 0]


@pytest.mark.parametrize("make", [
    lambda: ConstantMap(1.0), lambda: Dilation(1.5), lambda: Mobius(1.0),
    lambda: Mobius(0.2, 0.5), lambda: NormalizedKernel(-1.0),
    lambda: SeriesMap([0, 1], sup_bound=2.0), lambda: OperatorSpec(One(), IdentityMap(), 0.5, 0),
    lambda: OperatorSpec(One(), IdentityMap(), 1.0, 4),
])
def test_symbol_validation(make):
    with pytest.raises(DomainError):
        make()


def test_unimodular_dilation_allowed():
    assert Dilation(cmath.exp(0.3j)).descriptor().startswith("dilation lambda=")
