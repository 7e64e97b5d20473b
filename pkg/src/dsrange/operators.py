"""Weighted composition operators f -> psi * (f o phi) and their matrices.

Symbols come in closed forms (identity, constant, dilation, disc
automorphism, normalized kernel) plus raw coefficient series.  Each knows
its truncated Taylor series and how to evaluate itself exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .series import (PowerSeries, constant, kernel_series, mobius_series,
                     monomial)
from .space import SpaceElement, kernel_element
from .special import DomainError, SpaceParam, monomial_weights, principal_power

__all__ = ["IdentityMap", "ConstantMap", "Dilation", "Mobius", "SeriesMap",
           "One", "SeriesWeight", "NormalizedKernel", "OperatorSpec",
           "OperatorMatrix", "build_matrix", "adjoint_kernel_action",
           "weyl_operator", "xgamma_operator", "compression"]

_UNIT_TOL = 1e-12


def _fmt(c: complex) -> str:
    c = complex(c)
    if c.imag == 0.0:
        return repr(c.real)
    return repr(c).strip("()")


def _series_text(series: PowerSeries) -> str:
    return ",".join(_fmt(c) for c in series.coeffs)


# -- self-maps of the disc ---------------------------------------------------

@dataclass(frozen=True)
class IdentityMap:
    def series(self, N: int) -> PowerSeries:
        return monomial(1, N) if N >= 1 else constant(0.0, N)

    def __call__(self, z):
        return z

    def descriptor(self) -> str:
        return "identity"


@dataclass(frozen=True)
class ConstantMap:
    v: complex

    def __post_init__(self):
        object.__setattr__(self, "v", complex(self.v))
        if not abs(self.v) < 1.0:
            raise DomainError(f"constant map value must lie in the open disc, got {self.v!r}")

    def series(self, N: int) -> PowerSeries:
        return constant(self.v, N)

    def __call__(self, z):
        return self.v + 0 * np.asarray(z) if np.ndim(z) else self.v

    def descriptor(self) -> str:
        return f"constant v={_fmt(self.v)}"


@dataclass(frozen=True)
class Dilation:
    """phi(z) = lam * z with |lam| <= 1."""
    lam: complex

    def __post_init__(self):
        object.__setattr__(self, "lam", complex(self.lam))
        if abs(self.lam) > 1.0 + _UNIT_TOL:
            raise DomainError(f"dilation factor must satisfy |lam| <= 1, got {self.lam!r}")

    def series(self, N: int) -> PowerSeries:
        return monomial(1, N, self.lam) if N >= 1 else constant(0.0, N)

    def __call__(self, z):
        return self.lam * z

    def descriptor(self) -> str:
        return f"dilation lambda={_fmt(self.lam)}"


@dataclass(frozen=True)
class Mobius:
    """Disc automorphism alpha (z - gamma) / (1 - conj(gamma) z)."""
    gamma: complex
    alpha: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "gamma", complex(self.gamma))
        object.__setattr__(self, "alpha", complex(self.alpha))
        if not abs(self.gamma) < 1.0:
            raise DomainError(f"|gamma| must be < 1, got {self.gamma!r}")
        if abs(abs(self.alpha) - 1.0) > _UNIT_TOL:
            raise DomainError(f"|alpha| must be 1, got {self.alpha!r}")

    def series(self, N: int) -> PowerSeries:
        return mobius_series(self.gamma, self.alpha, N)

    def __call__(self, z):
        return self.alpha * (z - self.gamma) / (1.0 - self.gamma.conjugate() * z)

    def descriptor(self) -> str:
        return f"mobius gamma={_fmt(self.gamma)} alpha={_fmt(self.alpha)}"


@dataclass(frozen=True)
class SeriesMap:
    """A self-map given by coefficients.

    Nothing checks that the map sends the disc into itself; ``sup_bound`` is
    the caller's attestation of sup |phi| on the disc (``None`` = unattested).
    """
    coeffs: PowerSeries
    sup_bound: Optional[float] = None

    def __post_init__(self):
        if not isinstance(self.coeffs, PowerSeries):
            object.__setattr__(self, "coeffs", PowerSeries(self.coeffs))
        if self.sup_bound is not None and self.sup_bound > 1.0:
            raise DomainError(f"attested sup bound {self.sup_bound} exceeds 1; not a self-map")

    def series(self, N: int) -> PowerSeries:
        return self.coeffs.truncate(N)

    def __call__(self, z):
        return self.coeffs(z)

    def descriptor(self) -> str:
        return f"series {_series_text(self.coeffs)}"


PhiSymbol = Union[IdentityMap, ConstantMap, Dilation, Mobius, SeriesMap]


# -- weights -------------------------------------------------------------------

@dataclass(frozen=True)
class One:
    def series(self, N: int, s) -> PowerSeries:
        return constant(1.0, N)

    def evaluate(self, z, s):
        return 1.0 + 0 * np.asarray(z) if np.ndim(z) else 1.0

    def descriptor(self) -> str:
        return "one"


@dataclass(frozen=True)
class SeriesWeight:
    coeffs: PowerSeries

    def __post_init__(self):
        if not isinstance(self.coeffs, PowerSeries):
            object.__setattr__(self, "coeffs", PowerSeries(self.coeffs))

    def series(self, N: int, s) -> PowerSeries:
        return self.coeffs.truncate(N)

    def evaluate(self, z, s):
        return self.coeffs(z)

    def descriptor(self) -> str:
        return f"series {_series_text(self.coeffs)}"


@dataclass(frozen=True)
class NormalizedKernel:
    """The unit-norm reproducing kernel at ``gamma`` of the ambient space."""
    gamma: complex

    def __post_init__(self):
        object.__setattr__(self, "gamma", complex(self.gamma))
        if not abs(self.gamma) < 1.0:
            raise DomainError(f"|gamma| must be < 1, got {self.gamma!r}")

    def series(self, N: int, s) -> PowerSeries:
        return kernel_series(self.gamma, s, N, normalized=True)

    def evaluate(self, z, s):
        s = float(s)
        g = self.gamma
        zz = np.asarray(z, dtype=complex) if np.ndim(z) else complex(z)
        return (1.0 - abs(g) ** 2) ** (s / 2.0) / principal_power(1.0 - g.conjugate() * zz, s)

    def descriptor(self) -> str:
        return f"kernel gamma={_fmt(self.gamma)}"


PsiSymbol = Union[One, SeriesWeight, NormalizedKernel]


# -- operators -----------------------------------------------------------------

@dataclass(frozen=True)
class OperatorSpec:
    """The operator C_{psi,phi} on D_s truncated to degree N.

    Boundedness is assumed, never checked.
    """
    psi: PsiSymbol
    phi: PhiSymbol
    s: SpaceParam
    N: int

    def __post_init__(self):
        if not isinstance(self.s, SpaceParam):
            object.__setattr__(self, "s", SpaceParam(self.s))
        if int(self.N) != self.N or self.N < 1:
            raise DomainError(f"truncation order must be a positive integer, got {self.N!r}")
        object.__setattr__(self, "N", int(self.N))

    def psi_at(self, z):
        return self.psi.evaluate(z, self.s.s)

    def phi_at(self, z):
        return self.phi(z)


@dataclass(frozen=True)
class OperatorMatrix:
    """Matrix of an operator in the basis e_0..e_N.

    Column r holds the e-coordinates of C e_r:
    A[m, r] = c_m(psi * phi**r) * sqrt(w_m / w_r).
    """
    entries: np.ndarray
    s: SpaceParam
    N: int
    spec: Optional[OperatorSpec] = None
    label: str = ""

    def __post_init__(self):
        a = np.array(self.entries, dtype=complex)
        a.flags.writeable = False
        object.__setattr__(self, "entries", a)

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return OperatorMatrix(self.entries @ other.entries, self.s, self.N)

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return OperatorMatrix(self.entries + other.entries, self.s, self.N)

    def to_json(self) -> dict:
        """Row-major dump: {s, N, psi, phi, entries: [[re, im], ...]}."""
        flat = self.entries.ravel()
        return {
            "s": self.s.s,
            "N": self.N,
            "psi": self.spec.psi.descriptor() if self.spec else None,
            "phi": self.spec.phi.descriptor() if self.spec else None,
            "entries": [[float(c.real), float(c.imag)] for c in flat],
        }


def build_matrix(spec: OperatorSpec) -> OperatorMatrix:
    N = spec.N
    w = monomial_weights(N, spec.s)
    phi = spec.phi.series(N)
    prod = spec.psi.series(N, spec.s)
    cols = np.empty((N + 1, N + 1), dtype=complex)
    # successive products: column r needs psi * phi**r for every r anyway
    for r in range(N + 1):
        cols[:, r] = prod.coeffs
        if r < N:
            prod = prod * phi
    sw = np.sqrt(w)
    A = cols * sw[:, None] / sw[None, :]
    return OperatorMatrix(A, spec.s, N, spec)


def adjoint_kernel_action(spec: OperatorSpec, z: complex) -> SpaceElement:
    """C* k_z = conj(psi(z)) k_{phi(z)}."""
    z = complex(z)
    if not abs(z) < 1.0:
        raise DomainError(f"|z| must be < 1, got {z!r}")
    w = complex(spec.phi_at(z))
    if not abs(w) < 1.0:
        raise DomainError(f"phi({z}) = {w} leaves the disc")
    return complex(spec.psi_at(z)).conjugate() * kernel_element(w, spec.s, spec.N)


def weyl_operator(gamma: complex, alpha: complex, s, N: int) -> OperatorSpec:
    """Weight k^_gamma (normalized kernel), symbol the automorphism phi_{gamma,alpha}."""
    return OperatorSpec(NormalizedKernel(gamma), Mobius(gamma, alpha), s, N)


def xgamma_operator(gamma: complex, s, N: int) -> OperatorMatrix:
    """Matrix of C_{k^_gamma, phi_gamma} + C_{k^_-gamma, phi_-gamma}."""
    gamma = complex(gamma)
    a = build_matrix(weyl_operator(gamma, 1.0, s, N))
    b = build_matrix(weyl_operator(-gamma, 1.0, s, N))
    return OperatorMatrix(a.entries + b.entries, a.s, N, label=f"X(gamma={_fmt(gamma)})")


def compression(A: Union[OperatorMatrix, np.ndarray], indices: Sequence[int]) -> np.ndarray:
    """Principal submatrix on the given basis indices (in the given order)."""
    a = A.entries if isinstance(A, OperatorMatrix) else np.asarray(A)
    idx = [int(i) for i in indices]
    if len(set(idx)) != len(idx):
        raise DomainError(f"compression indices must be distinct, got {idx}")
    n = a.shape[0]
    for i in idx:
        if not 0 <= i < n:
            raise DomainError(f"basis index {i} outside 0..{n - 1}")
    return a[np.ix_(idx, idx)].copy()
