"""Truncated complex power series about the origin."""
from __future__ import annotations

import numpy as np

from .special import DomainError, SpaceParam, monomial_weights

__all__ = ["PowerSeries", "ps_add", "ps_mul", "ps_pow", "ps_eval",
           "mobius_series", "kernel_series", "exp_series", "constant",
           "monomial"]

_UNIT_TOL = 1e-12


class PowerSeries:
    """Taylor coefficients c_0..c_N of a function on the disc.

    Instances are immutable; arithmetic returns new series truncated at the
    larger of the two orders.
    """
    __slots__ = ("_c",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=complex).ravel()
        if c.size == 0:
            raise ValueError("a power series needs at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise ValueError("power series coefficients must be finite")
        c.flags.writeable = False
        self._c = c

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def order(self) -> int:
        return self._c.size - 1

    def truncate(self, N: int) -> "PowerSeries":
        """Cut or zero-pad to order ``N``."""
        if N + 1 <= self._c.size:
            return PowerSeries(self._c[: N + 1])
        return PowerSeries(np.concatenate((self._c, np.zeros(N + 1 - self._c.size))))

    def __getitem__(self, n):
        return self._c[n] if n <= self.order else 0j

    def __call__(self, z):
        return ps_eval(self, z)

    def __add__(self, other):
        return ps_add(self, _coerce(other, self.order))

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(-self._c)

    def __sub__(self, other):
        return ps_add(self, -_coerce(other, self.order))

    def __mul__(self, other):
        if np.isscalar(other):
            return PowerSeries(self._c * other)
        return ps_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, r):
        return ps_pow(self, r)

    def __eq__(self, other):
        return isinstance(other, PowerSeries) and np.array_equal(self._c, other._c)

    def __hash__(self):
        return hash(self._c.tobytes())

    def __repr__(self):
        return f"PowerSeries(order={self.order}, coeffs={self._c[:6].tolist()}{'...' if self.order > 5 else ''})"


def _coerce(x, N) -> PowerSeries:
    if isinstance(x, PowerSeries):
        return x
    return constant(x, N)


def constant(v, N: int = 0) -> PowerSeries:
    c = np.zeros(N + 1, dtype=complex)
    c[0] = v
    return PowerSeries(c)


def monomial(n: int, N: int, coeff=1.0) -> PowerSeries:
    if n > N:
        raise DomainError(f"degree {n} exceeds truncation order {N}")
    c = np.zeros(N + 1, dtype=complex)
    c[n] = coeff
    return PowerSeries(c)


def ps_add(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    N = max(f.order, g.order)
    return PowerSeries(f.truncate(N).coeffs + g.truncate(N).coeffs)


def ps_mul(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    """Cauchy product truncated at the larger order."""
    N = max(f.order, g.order)
    return PowerSeries(np.convolve(f.coeffs, g.coeffs)[: N + 1]).truncate(N)


def ps_pow(f: PowerSeries, r: int) -> PowerSeries:
    """f**r by repeated squaring; f**0 is the constant 1."""
    if r < 0 or int(r) != r:
        raise DomainError(f"power must be a nonnegative integer, got {r!r}")
    result = constant(1.0, f.order)
    base = f
    r = int(r)
    while r:
        if r & 1:
            result = ps_mul(result, base)
        r >>= 1
        if r:
            base = ps_mul(base, base)
    return result


def ps_eval(f: PowerSeries, z):
    """Horner evaluation at ``z`` (scalar or array) inside the open disc."""
    zz = np.asarray(z, dtype=complex)
    if np.any(np.abs(zz) >= 1.0):
        raise DomainError("series evaluation needs |z| < 1")
    acc = np.zeros_like(zz)
    for c in f.coeffs[::-1]:
        acc = acc * zz + c
    return complex(acc) if acc.ndim == 0 else acc


def _check_disc(gamma, name="gamma"):
    if not abs(gamma) < 1.0:
        raise DomainError(f"|{name}| must be < 1, got {gamma!r}")


def mobius_series(gamma: complex, alpha: complex, N: int) -> PowerSeries:
    """Coefficients of alpha (z - gamma) / (1 - conj(gamma) z)."""
    gamma, alpha = complex(gamma), complex(alpha)
    _check_disc(gamma)
    if abs(abs(alpha) - 1.0) > _UNIT_TOL:
        raise DomainError(f"|alpha| must be 1, got {alpha!r}")
    c = np.empty(N + 1, dtype=complex)
    c[0] = -alpha * gamma
    if N >= 1:
        c[1:] = alpha * (1.0 - abs(gamma) ** 2) * gamma.conjugate() ** np.arange(N)
    return PowerSeries(c)


def kernel_series(gamma: complex, s, N: int, normalized: bool = False) -> PowerSeries:
    """Coefficients of (1 - conj(gamma) z)**(-s), optionally times (1-|gamma|^2)**(s/2)."""
    gamma = complex(gamma)
    _check_disc(gamma)
    sv = s.s if isinstance(s, SpaceParam) else float(s)
    c = gamma.conjugate() ** np.arange(N + 1) / monomial_weights(N, sv)
    if normalized:
        c = c * (1.0 - abs(gamma) ** 2) ** (sv / 2.0)
    return PowerSeries(c)


def exp_series(N: int, scale: complex = 1.0, shift: complex = 0.0) -> PowerSeries:
    """Coefficients of exp(scale*z + shift)."""
    c = np.empty(N + 1, dtype=complex)
    c[0] = np.exp(shift)
    for n in range(1, N + 1):
        c[n] = c[n - 1] * scale / n
    return PowerSeries(c)
