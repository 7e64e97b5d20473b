"""Hilbert-space structure of D_s: inner products, basis, reproducing kernels."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .series import PowerSeries, kernel_series, monomial, ps_eval
from .special import DomainError, SpaceParam, monomial_weights

__all__ = ["SpaceElement", "inner_product", "norm", "basis_element",
           "kernel_element", "reproduce", "tail_bound", "to_basis",
           "from_basis"]


@dataclass(frozen=True)
class SpaceElement:
    series: PowerSeries
    s: SpaceParam

    def __post_init__(self):
        if not isinstance(self.s, SpaceParam):
            object.__setattr__(self, "s", SpaceParam(self.s))

    @property
    def order(self) -> int:
        return self.series.order

    def __call__(self, z):
        return ps_eval(self.series, z)

    def __add__(self, other: "SpaceElement") -> "SpaceElement":
        _same_space(self, other)
        return SpaceElement(self.series + other.series, self.s)

    def __mul__(self, c) -> "SpaceElement":
        return SpaceElement(self.series * complex(c), self.s)

    __rmul__ = __mul__


def _same_space(f: SpaceElement, g: SpaceElement):
    if f.s.s != g.s.s:
        raise DomainError(f"elements live in different spaces (s={f.s.s} vs s={g.s.s})")


def inner_product(f: SpaceElement, g: SpaceElement) -> complex:
    """<f, g> = sum_n w_n a_n conj(b_n); the shorter series is zero-padded."""
    _same_space(f, g)
    n = min(f.order, g.order)
    w = monomial_weights(n, f.s)
    a = f.series.coeffs[: n + 1]
    b = g.series.coeffs[: n + 1]
    return complex(np.sum(w * a * b.conj()))


def norm(f: SpaceElement) -> float:
    return float(np.sqrt(max(inner_product(f, f).real, 0.0)))


def basis_element(n: int, s, N: int) -> SpaceElement:
    """e_n = z**n / sqrt(w_n)."""
    s = s if isinstance(s, SpaceParam) else SpaceParam(s)
    if n < 0 or n > N:
        raise DomainError(f"basis index {n} outside 0..{N}")
    w = monomial_weights(n, s)[n]
    return SpaceElement(monomial(n, N, 1.0 / np.sqrt(w)), s)


def kernel_element(gamma: complex, s, N: int, normalized: bool = False) -> SpaceElement:
    s = s if isinstance(s, SpaceParam) else SpaceParam(s)
    return SpaceElement(kernel_series(gamma, s, N, normalized), s)


def reproduce(f: SpaceElement, gamma: complex) -> complex:
    """<f, k_gamma>, which equals f(gamma) up to truncation."""
    if not abs(gamma) < 1.0:
        raise DomainError(f"|gamma| must be < 1, got {gamma!r}")
    return inner_product(f, kernel_element(gamma, f.s, f.order))


def tail_bound(gamma, z, s, N: int) -> float:
    """Bound on sum_{n>N} |gamma z|**n / w_n, the truncation error of kernel sums.

    1/w_n is decreasing, so the geometric tail times 1/w_{N+1} suffices; the
    factor N + 2 is deliberate slack.
    """
    q = abs(complex(gamma) * complex(z))
    if q >= 1.0:
        return float("inf")
    w_next = monomial_weights(N + 1, s)[N + 1]
    return q ** (N + 1) / ((1.0 - q) * w_next) * (N + 2)


def to_basis(f: SpaceElement) -> np.ndarray:
    """Coordinates of f in the orthonormal basis {e_n}."""
    return f.series.coeffs * np.sqrt(monomial_weights(f.order, f.s))


def from_basis(x, s) -> SpaceElement:
    s = s if isinstance(s, SpaceParam) else SpaceParam(s)
    x = np.asarray(x, dtype=complex)
    return SpaceElement(PowerSeries(x / np.sqrt(monomial_weights(x.size - 1, s))), s)
