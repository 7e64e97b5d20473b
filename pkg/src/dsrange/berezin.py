"""Berezin transforms of weighted composition operators on D_s.

The Berezin transform of T is T~(z) = <T k^_z, k^_z> with k^_z the unit
kernel.  For C_{psi,phi} the reproducing property gives the closed form

    T~(z) = psi(z) * ((1 - |z|^2) / (1 - conj(z) phi(z)))**s

which is what every function here evaluates (no matrices involved).
Sampling on a polar grid gives Berezin ranges and radius estimates.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np
from scipy.spatial import cKDTree

from .operators import Mobius, OperatorSpec
from .special import DomainError, _as_s, principal_power

__all__ = [
    "berezin_transform", "berezin_values", "weyl_berezin", "weyl_fixed_point",
    "BerezinSample", "berezin_grid", "blaschke_berezin_parts",
    "dilation_berezin", "ConvexityVerdict", "convexity_probe",
    "xgamma_berezin", "xgamma_squared_berezin", "xgamma_berezin_quantities",
    "radial_decay", "farthest_moved_boundary_point",
]

MIN_RADIAL = 4
MIN_ANGULAR = 8


def _as_points(z):
    zz = np.asarray(z, dtype=complex)
    if np.any(np.abs(zz) >= 1.0):
        raise DomainError("Berezin transform needs |z| < 1")
    return zz


def _unwrap(values, zz):
    return complex(values) if zz.ndim == 0 else values


def berezin_values(spec: OperatorSpec, z):
    """Closed-form Berezin transform of C_{psi,phi} at ``z`` (scalar or array)."""
    zz = _as_points(z)
    s = spec.s.s
    w = np.asarray(spec.phi_at(zz), dtype=complex)
    psi = np.asarray(spec.psi_at(zz), dtype=complex)
    q = 1.0 - (zz.real * zz.real + zz.imag * zz.imag)
    # Re(1 - conj(z) phi(z)) > 0 because |z phi(z)| < 1, so the ratio has Re > 0 too
    return _unwrap(psi * principal_power(q / (1.0 - np.conj(zz) * w), s), zz)


def berezin_transform(spec: OperatorSpec, z: complex) -> complex:
    if np.ndim(z) != 0:
        raise TypeError("berezin_transform takes a single point; use berezin_values")
    return berezin_values(spec, z)


def _check_weyl(gamma, alpha):
    gamma, alpha = complex(gamma), complex(alpha)
    if not abs(gamma) < 1.0:
        raise DomainError(f"|gamma| must be < 1, got {gamma!r}")
    if abs(abs(alpha) - 1.0) > 1e-12:
        raise DomainError(f"|alpha| must be 1, got {alpha!r}")
    return gamma, alpha


def weyl_berezin(gamma: complex, alpha: complex, s, z):
    """Berezin transform of C_{k^_gamma, phi_{gamma,alpha}}.

    Uses the factored form
    (1-|g|^2)^{s/2} (1-|z|^2)^s / ((1 - conj(g) z)^s (1 - conj(z) phi(z))^s),
    with each factor on the principal branch.  Squaring the two denominator
    factors into one power is only valid when their product has positive
    real part, which fails for general alpha.
    """
    gamma, alpha = _check_weyl(gamma, alpha)
    s = _as_s(s)
    zz = _as_points(z)
    phi = Mobius(gamma, alpha)(zz)
    g2 = abs(gamma) ** 2
    val = ((1.0 - g2) ** (s / 2.0) * (1.0 - np.abs(zz) ** 2) ** s
           / principal_power(1.0 - gamma.conjugate() * zz, s)
           / principal_power(1.0 - np.conj(zz) * phi, s))
    return _unwrap(val, zz)


def weyl_fixed_point(gamma: complex) -> complex:
    """Fixed point of z -> -(z - gamma)/(1 - conj(gamma) z) inside the disc."""
    gamma = complex(gamma)
    if not abs(gamma) < 1.0:
        raise DomainError(f"|gamma| must be < 1, got {gamma!r}")
    if gamma == 0:
        return 0j
    g2 = abs(gamma) ** 2
    # (1 - sqrt(1-g2)) rewritten to avoid cancellation for small gamma
    return (g2 / (1.0 + math.sqrt(1.0 - g2))) / gamma.conjugate()


def blaschke_berezin_parts(gamma: complex, s, z: complex):
    """Real part, imaginary part, modulus factor and phase of the Berezin
    transform of C_phi with phi the Blaschke factor (z - gamma)/(1 - conj(gamma) z).

    With u = conj(gamma) z:
        X = (1-|z|^2)(1 - Re u) + 2 Im(u)^2
        Y = Im(u) (1 + |z|^2 - 2 Re u)
    the transform equals (rho (1-|z|^2) / |1 - |z|^2 - 2i Im u|^2)^s e^{i s theta}
    where rho = |X + iY| and theta = arg(X + iY) in (-pi/2, pi/2).
    """
    gamma = complex(gamma)
    s = _as_s(s)
    z = complex(z)
    if not abs(gamma) < 1.0 or not abs(z) < 1.0:
        raise DomainError("blaschke_berezin_parts needs |gamma| < 1 and |z| < 1")
    u = gamma.conjugate() * z
    q = 1.0 - abs(z) ** 2
    X = q * (1.0 - u.real) + 2.0 * u.imag ** 2
    Y = u.imag * (1.0 + abs(z) ** 2 - 2.0 * u.real)
    rho = math.hypot(X, Y)
    theta = math.atan2(Y, X)  # X > 0, so this is arctan(Y/X)
    mod = (rho * q / (q * q + 4.0 * u.imag ** 2)) ** s
    return mod * math.cos(s * theta), mod * math.sin(s * theta), rho, theta


def dilation_berezin(xi: complex, s, z):
    """Berezin transform of C_phi for phi(z) = xi z: ((1-|z|^2)/(1-xi|z|^2))^s."""
    xi = complex(xi)
    if abs(xi) > 1.0 + 1e-12:
        raise DomainError(f"|xi| must be <= 1, got {xi!r}")
    s = _as_s(s)
    zz = _as_points(z)
    r2 = np.abs(zz) ** 2
    return _unwrap((1.0 - r2) ** s / principal_power(1.0 - xi * r2, s), zz)


# -- the X_gamma = C_gamma + C_{-gamma} family ---------------------------------

def xgamma_berezin(gamma: complex, s, z):
    return weyl_berezin(gamma, 1.0, s, z) + weyl_berezin(-complex(gamma), 1.0, s, z)


def xgamma_squared_berezin(gamma: complex, s, z):
    """Berezin transform of X_gamma^2.

    C_gamma^2 is the Weyl operator at 2 gamma/(1+|gamma|^2) and
    C_gamma C_{-gamma} = I, so X^2 = C_{g'} + C_{-g'} + 2I.
    """
    gamma = complex(gamma)
    g = 2.0 * gamma / (1.0 + abs(gamma) ** 2)
    return xgamma_berezin(g, s, z) + 2.0


def xgamma_berezin_quantities(gamma: complex, s):
    """Closed-form Berezin radii (ber(X), ber(X^2)) of X_gamma."""
    g2 = abs(complex(gamma)) ** 2
    if not g2 < 1.0:
        raise DomainError(f"|gamma| must be < 1, got {gamma!r}")
    s = _as_s(s)
    ber_x = 2.0 * (1.0 - g2) ** (s / 2.0)
    ber_x2 = 2.0 * (((1.0 - g2) / (1.0 + g2)) ** s + 1.0)
    return ber_x, ber_x2


# -- sampling -----------------------------------------------------------------------

Source = Union[OperatorSpec, Callable[[np.ndarray], np.ndarray]]


def _evaluator(source: Source):
    if isinstance(source, OperatorSpec):
        return lambda zz: berezin_values(source, zz)
    if callable(source):
        return lambda zz: np.asarray(source(zz), dtype=complex)
    raise TypeError(f"expected an OperatorSpec or a callable, got {type(source).__name__}")


@dataclass(frozen=True)
class BerezinSample:
    """Berezin transform sampled on a polar grid.

    ``points[0]`` is z = 0; the next ``radial_count * angular_count`` points
    form the regular grid (ring-major), and anything after that was added by
    caller-supplied extra points and local refinement around the maximizer.
    """
    points: np.ndarray
    values: np.ndarray
    radial_count: int
    angular_count: int
    radius_estimate: float = field(init=False)
    maximizer: complex = field(init=False)

    def __post_init__(self):
        for name in ("points", "values"):
            a = np.array(getattr(self, name), dtype=complex)
            a.flags.writeable = False
            object.__setattr__(self, name, a)
        if self.points.shape != self.values.shape or self.points.size == 0:
            raise DomainError("points and values must be nonempty and of equal length")
        if np.any(np.abs(self.points) >= 1.0):
            raise DomainError("sample points must lie in the open disc")
        mags = np.abs(self.values)
        top = float(mags.max())
        # ties (up to rounding) go to the point nearest the origin
        tied = np.nonzero(mags >= top * (1.0 - 64 * np.finfo(float).eps))[0]
        k = int(tied[np.argmin(np.abs(self.points[tied]))])
        object.__setattr__(self, "radius_estimate", top)
        object.__setattr__(self, "maximizer", complex(self.points[k]))

    @property
    def grid(self):
        return list(zip(self.points.tolist(), self.values.tolist()))

    @property
    def regular_count(self) -> int:
        return 1 + self.radial_count * self.angular_count

    def ring(self, j: int) -> np.ndarray:
        """Values on ring j (1..R), ordered by angle."""
        K = self.angular_count
        return self.values[1 + (j - 1) * K: 1 + j * K]

    def polar(self):
        """(r, theta) for every point; theta in [0, 2 pi)."""
        return np.abs(self.points), np.angle(self.points) % (2.0 * np.pi)


def polar_grid(R: int, K: int) -> np.ndarray:
    r = np.arange(1, R + 1) / (R + 1.0)
    t = 2.0 * np.pi * np.arange(K) / K
    return np.concatenate(([0j], (r[:, None] * np.exp(1j * t)[None, :]).ravel()))


def berezin_grid(source: Source, R: int = 64, K: int = 256, refine_rounds: int = 2,
                 extra_points: Sequence[complex] = ()) -> BerezinSample:
    """Sample the Berezin transform at 0 and at (j/(R+1)) e^{2 pi i k/K}.

    ``extra_points`` (e.g. known fixed points of the symbol) are appended
    after the regular grid and take part in the maximizer search.

    After the regular grid, each refinement round halves the radial and
    angular mesh and evaluates a 3x3 stencil around the current maximizer.
    Refined points are kept in the sample, so the radius estimate is always
    the maximum over stored values.
    """
    if R < MIN_RADIAL or K < MIN_ANGULAR:
        raise DomainError(f"grid too coarse: need R >= {MIN_RADIAL}, K >= {MIN_ANGULAR}, got R={R}, K={K}")
    f = _evaluator(source)
    pts = polar_grid(R, K)
    extra = np.asarray(list(extra_points), dtype=complex)
    if extra.size:
        pts = np.concatenate((pts, extra))
    vals = f(pts)
    dr, dt = 1.0 / (R + 1.0), 2.0 * np.pi / K
    best = int(np.argmax(np.abs(vals)))
    extra_p, extra_v = [], []
    top_z, top_v = pts[best], abs(vals[best])
    for _ in range(refine_rounds):
        dr, dt = dr / 2.0, dt / 2.0
        r0, t0 = abs(top_z), cmath.phase(top_z)
        rr = np.clip(r0 + dr * np.array([-1.0, 0.0, 1.0]), 0.0, 1.0 - dr)
        tt = t0 + dt * np.array([-1.0, 0.0, 1.0])
        cand = (rr[:, None] * np.exp(1j * tt)[None, :]).ravel()
        cand = cand[np.abs(cand - top_z) > 0.0]
        cv = f(cand)
        extra_p.append(cand)
        extra_v.append(cv)
        k = int(np.argmax(np.abs(cv)))
        if abs(cv[k]) > top_v:
            top_z, top_v = cand[k], abs(cv[k])
    if extra_p:
        pts = np.concatenate([pts] + extra_p)
        vals = np.concatenate([vals] + extra_v)
    return BerezinSample(pts, vals, R, K)


def radial_decay(f: Callable, direction: complex, threshold: float = 1e-3, max_exponent: int = 15):
    """Evaluate |f((1 - eps) direction)| for eps = 10^-1, 10^-2, ...

    Stops at the first eps where the modulus drops below ``threshold``.
    Returns (eps_reached or None, trace) with trace a list of (eps, |f|).
    """
    u = complex(direction)
    u /= abs(u)
    trace = []
    for k in range(1, max_exponent + 1):
        eps = 10.0 ** (-k)
        v = abs(complex(f((1.0 - eps) * u)))
        trace.append((eps, v))
        if v < threshold:
            return eps, trace
    return None, trace


def farthest_moved_boundary_point(phi: Callable, samples: int = 4096) -> complex:
    """Boundary point zeta maximizing |phi(zeta) - zeta| (evaluated just inside)."""
    t = 2.0 * np.pi * np.arange(samples) / samples
    zeta = np.exp(1j * t)
    inner = (1.0 - 1e-9) * zeta
    k = int(np.argmax(np.abs(np.asarray(phi(inner)) - inner)))
    return complex(zeta[k])


# -- convexity ----------------------------------------------------------------------

@dataclass(frozen=True)
class ConvexityVerdict:
    """Result of :func:`convexity_probe`.

    ``consistent`` is True when no witness was found; that is evidence, not
    proof, of convexity.  A witness is a dict with the pair of sampled values,
    their preimages, the midpoint, its distance to the sampled range and the
    tolerance it exceeded.
    """
    consistent: bool
    pairs_tested: int
    witness: Optional[dict] = None

    @property
    def label(self) -> str:
        return "convex-consistent" if self.consistent else "violated"


def _cells(R: int, K: int) -> np.ndarray:
    """Quadrilateral cells of the regular grid as index quadruples.

    Cells touching the origin are triangles with the origin repeated.
    """
    def idx(j, k):
        return 0 if j == 0 else 1 + (j - 1) * K + (k % K)

    out = []
    for j in range(R):
        for k in range(K):
            out.append((idx(j, k), idx(j + 1, k), idx(j + 1, k + 1), idx(j, k + 1)))
    return np.array(out, dtype=np.int64)


def _segment_dist(p, a, b):
    e = b - a
    den = np.abs(e) ** 2
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.where(den > 0, ((p - a) * np.conj(e)).real / den, 0.0)
    t = np.clip(t, 0.0, 1.0)
    return np.abs(a + t * e - p)


def _inside_quad(p, q):
    """Whether p lies in the (possibly nonconvex, self-intersecting) quad q[..., 4].

    Uses the even-odd rule on the closed polygon.
    """
    inside = np.zeros(q.shape[:-1], dtype=bool)
    for i in range(4):
        a, b = q[..., i], q[..., (i + 1) % 4]
        cond = (a.imag > p.imag) != (b.imag > p.imag)
        with np.errstate(invalid="ignore", divide="ignore"):
            xint = a.real + (p.imag - a.imag) * (b.real - a.real) / (b.imag - a.imag)
        inside ^= cond & (p.real < xint)
    return inside


def convexity_probe(sample: BerezinSample, pair_count: int = 20000,
                    tolerance: Optional[float] = None, seed: int = 0,
                    neighbours: int = 8) -> ConvexityVerdict:
    """Search for a midpoint of two sampled values that lies off the sampled range.

    The sampled range is modelled as the union of the images of the grid
    cells (each replaced by the quadrilateral through its corner values).
    A midpoint counts as off the range when its distance to that union
    exceeds ``tolerance``; by default 3x the largest edge of the nearby
    cells (the local mesh of sampled values).
    """
    vals = sample.values
    rng = np.random.default_rng(seed)
    n = vals.size
    if n < 2:
        return ConvexityVerdict(True, 0)
    R, K = sample.radial_count, sample.angular_count
    reg = vals[: sample.regular_count]
    cells = _cells(R, K)
    quads = reg[cells]
    edge = np.max(np.abs(quads - np.roll(quads, -1, axis=1)), axis=1)
    # cells incident to each regular point
    incident = [[] for _ in range(reg.size)]
    for c, quad in enumerate(cells):
        for v in set(quad.tolist()):
            incident[v].append(c)
    incident = [np.array(sorted(set(lst)), dtype=np.int64) for lst in incident]

    tree = cKDTree(np.column_stack((reg.real, reg.imag)))
    ia = rng.integers(0, n, pair_count)
    ib = rng.integers(0, n, pair_count)
    mids = 0.5 * (vals[ia] + vals[ib])
    k = min(neighbours, reg.size)
    d0, nn = tree.query(np.column_stack((mids.real, mids.imag)), k=k)
    d0 = np.atleast_2d(d0.T).T if k == 1 else d0
    nn = nn.reshape(pair_count, k)
    d0 = d0.reshape(pair_count, k)

    for t in range(pair_count):
        m = mids[t]
        cand = np.unique(np.concatenate([incident[v] for v in nn[t]]))
        q = quads[cand]
        mesh = float(edge[cand].max()) if cand.size else 0.0
        tol = 3.0 * mesh if tolerance is None else float(tolerance)
        if d0[t, 0] <= tol:
            continue
        if np.any(_inside_quad(m, q)):
            continue
        dist = min(float(d0[t, 0]),
                   float(np.min(_segment_dist(m, q, np.roll(q, -1, axis=1)))))
        if dist > tol:
            a, b = int(ia[t]), int(ib[t])
            witness = {
                "a": complex(vals[a]), "b": complex(vals[b]),
                "z_a": complex(sample.points[a]), "z_b": complex(sample.points[b]),
                "midpoint": complex(m), "distance": dist, "tolerance": tol,
            }
            return ConvexityVerdict(False, t + 1, witness)
    return ConvexityVerdict(True, pair_count)
