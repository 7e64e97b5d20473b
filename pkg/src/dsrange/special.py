"""Gamma-function machinery and principal complex powers.

Every weight of the Dirichlet-type spaces is a ratio of Gamma values, so
everything here works in log space.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

__all__ = ["DomainError", "SpaceParam", "log_gamma", "gamma_ratio",
           "monomial_norm_sq", "monomial_weights", "principal_power"]


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


@dataclass(frozen=True)
class SpaceParam:
    """Weight exponent ``s`` of the space D_s.

    Only ``0 < s < 1`` is accepted unless ``allow_hardy`` is set, which
    additionally admits ``s == 1`` (the Hardy space, used as a sanity oracle).
    """
    s: float
    allow_hardy: bool = False

    def __post_init__(self):
        s = float(self.s)
        ok = 0.0 < s < 1.0 or (self.allow_hardy and s == 1.0)
        if not ok or not math.isfinite(s):
            raise DomainError(f"space parameter must satisfy 0 < s < 1, got {self.s!r}")
        object.__setattr__(self, "s", s)

    def __float__(self):
        return self.s


def _as_s(s) -> float:
    return s.s if isinstance(s, SpaceParam) else float(s)


# Lanczos approximation, g = 671/128, 14 terms.
_LANCZOS_G = 5.24218750000000000
_LANCZOS_C0 = 0.999999999999997092
_LANCZOS_COEFFS = (
    57.1562356658629235, -59.5979603554754912, 14.1360979747417471,
    -0.491913816097620199, 0.339946499848118887e-4, 0.465236289270485756e-4,
    -0.983744753048795646e-4, 0.158088703224912494e-3, -0.210264441724104883e-3,
    0.217439618115212643e-3, -0.164318106536763890e-3, 0.844182239838527433e-4,
    -0.261908384015814087e-4, 0.368991826595316234e-5,
)
_SQRT_2PI = 2.5066282746310005


def log_gamma(x: float) -> float:
    """Natural log of Gamma(x) for real ``x > 0``."""
    x = float(x)
    if not x > 0.0 or not math.isfinite(x):
        raise DomainError(f"log_gamma needs x > 0, got {x!r}")
    if x == 1.0 or x == 2.0:
        return 0.0
    if x < 0.5:
        # Gamma(x) = Gamma(x + 1) / x keeps the series in its accurate range
        return log_gamma(x + 1.0) - math.log(x)
    tmp = x + _LANCZOS_G
    tmp = (x + 0.5) * math.log(tmp) - tmp
    ser = _LANCZOS_C0
    y = x
    for c in _LANCZOS_COEFFS:
        y += 1.0
        ser += c / y
    return tmp + math.log(_SQRT_2PI * ser / x)


def gamma_ratio(num, den) -> float:
    """prod Gamma(num) / prod Gamma(den), evaluated in log space."""
    return math.exp(sum(log_gamma(a) for a in num) - sum(log_gamma(b) for b in den))


def monomial_norm_sq(n: int, s) -> float:
    """w_n = Gamma(n+1) Gamma(s) / Gamma(n+s), the squared norm of z**n."""
    if n < 0 or int(n) != n:
        raise DomainError(f"monomial index must be a nonnegative integer, got {n!r}")
    s = _as_s(s)
    if n == 0:
        return 1.0
    return gamma_ratio((n + 1.0, s), (n + s,))


def monomial_weights(N: int, s) -> np.ndarray:
    """Vector (w_0, ..., w_N).

    Built from the log of the step ratio w_{n+1}/w_n = (n+1)/(n+s), which
    avoids cancellation between large log-gamma values for big ``n``.
    """
    s = _as_s(s)
    if N < 0:
        raise DomainError("N must be nonnegative")
    k = np.arange(N, dtype=float)
    steps = np.log1p((1.0 - s) / (k + s))
    return np.exp(np.concatenate(([0.0], np.cumsum(steps))))


def principal_power(z, s: float):
    """Principal branch of ``z**s`` for ``Re z > 0``.

    Accepts a scalar or an ndarray; raises :class:`DomainError` if any
    element has nonpositive real part.
    """
    if np.ndim(z) == 0:
        z = complex(z)
        if not z.real > 0.0:
            raise DomainError(f"principal_power needs Re z > 0, got {z!r}")
        return cmath.exp(s * cmath.log(z))
    z = np.asarray(z, dtype=complex)
    if not np.all(z.real > 0.0):
        raise DomainError("principal_power needs Re z > 0 everywhere")
    return np.exp(s * np.log(z))
