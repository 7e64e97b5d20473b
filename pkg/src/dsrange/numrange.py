"""Numerical ranges of matrices by the rotation (angle-sweep) method.

For each angle theta the top eigenvector v of the Hermitian part of
e^{i theta} A gives a boundary point <Av, v> of W(A).  The convex hull of
these points approximates W(A) from inside.  Closed-form regions (discs,
ellipses) predicted for compressions of weighted composition operators live
here as well.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .special import DomainError, monomial_norm_sq, gamma_ratio

__all__ = [
    "jacobi_eigh", "hermitian_top_eigenpair", "BoundaryCurve", "DiscRegion",
    "EllipseRegion", "boundary_sweep", "convex_hull", "numerical_radius",
    "contains_point", "signed_distance", "ellipse_2x2", "vanishing_weight_disc",
    "dilation_weight_disc", "rotation_triple_disc", "rotation_ellipse",
    "irrational_rotation_ellipse", "polygon_distance", "ellipse_distance",
    "quadratic_form",
]

HERMITIAN_TOL = 1e-12
DEGENERATE_GAP = 1e-10
LINE_TOL = 1e-10
DEFAULT_ANGLES = 720


def quadratic_form(A, x) -> complex:
    """<A x, x> = x^H A x for a column vector x."""
    x = np.asarray(x, dtype=complex)
    return complex(np.vdot(x, np.asarray(A) @ x))


# -- Hermitian eigenproblem --------------------------------------------------

def _check_hermitian(H: np.ndarray) -> np.ndarray:
    H = np.asarray(H, dtype=complex)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {H.shape}")
    scale = max(1.0, float(np.max(np.abs(H)))) if H.size else 1.0
    if np.max(np.abs(H - H.conj().T), initial=0.0) > HERMITIAN_TOL * scale:
        raise DomainError("matrix is not Hermitian")
    return H


def jacobi_eigh(H, tol: float = 1e-13, max_sweeps: int = 60):
    """Cyclic Jacobi eigensolver for complex Hermitian matrices.

    Uses the threshold strategy: a rotation is skipped when its off-diagonal
    entry is already negligible.  Stops once the off-diagonal Frobenius norm
    drops below ``tol * ||H||_F``.  Returns eigenvalues in ascending order and
    the matching eigenvectors as columns.
    """
    a = _check_hermitian(H).copy()
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    fro = np.linalg.norm(a)
    if n == 1 or fro == 0.0:
        return np.real(np.diag(a)).copy(), v
    target = tol * fro
    for sweep in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= target:
            break
        thresh = 0.2 * off / n ** 2 if sweep < 3 else 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= thresh or mag == 0.0:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                # diag(1, d) makes the (p, q) entry real, then a real rotation zeroes it
                d = (apq / mag).conjugate()
                tau = (aqq - app) / (2.0 * mag)
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                u = np.array([[c, s], [-s * d, c * d]], dtype=complex)
                cols = a[:, [p, q]] @ u
                a[:, [p, q]] = cols
                rows = u.conj().T @ a[[p, q], :]
                a[[p, q], :] = rows
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, [p, q]] = v[:, [p, q]] @ u
    w = np.real(np.diag(a))
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def hermitian_top_eigenpair(H, method: str = "jacobi"):
    """Largest eigenvalue of a Hermitian matrix and a unit eigenvector.

    ``method`` is ``"jacobi"`` (the in-house solver) or ``"lapack"``
    (``numpy.linalg.eigh``).
    """
    H = _check_hermitian(H)
    if method == "jacobi":
        w, V = jacobi_eigh(H)
    elif method == "lapack":
        w, V = np.linalg.eigh(H)
    else:
        raise ValueError(f"unknown eigen method {method!r}")
    v = V[:, -1]
    return float(w[-1]), v / np.linalg.norm(v)


# -- planar convex geometry ----------------------------------------------------

def _cross(o: complex, a: complex, b: complex) -> float:
    return (a.real - o.real) * (b.imag - o.imag) - (a.imag - o.imag) * (b.real - o.real)


def convex_hull(points) -> np.ndarray:
    """Counter-clockwise hull vertices (Andrew's monotone chain).

    Collinear points are dropped; a point set of size one or a segment
    comes back as one or two vertices.
    """
    pts = sorted(set((float(p.real), float(p.imag)) for p in np.asarray(points, dtype=complex).ravel()))
    pts = [complex(x, y) for x, y in pts]
    if len(pts) <= 2:
        return np.array(pts, dtype=complex)
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0.0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0.0:
            upper.pop()
        upper.append(p)
    return np.array(lower[:-1] + upper[:-1], dtype=complex)


def _classify(points: np.ndarray):
    """Return ("point" | "segment" | None, endpoints) for near-degenerate sets."""
    scale = max(1.0, float(np.max(np.abs(points))))
    tol = LINE_TOL * scale
    c = points.mean()
    d = points - c
    if np.max(np.abs(d)) <= tol:
        return "point", np.array([c])
    xy = np.stack([d.real, d.imag])
    u_vec = np.linalg.svd(xy, full_matrices=False)[0][:, 0]
    u = complex(u_vec[0], u_vec[1])
    along = (d * u.conjugate()).real
    across = (d * u.conjugate()).imag
    if np.max(np.abs(across)) <= tol:
        return "segment", np.array([points[np.argmin(along)], points[np.argmax(along)]])
    return None, None


@dataclass(frozen=True)
class BoundaryCurve:
    """Angle-indexed boundary points of a numerical range and their hull.

    ``kind`` is ``"polygon"`` for a hull with interior, otherwise
    ``"segment"`` or ``"point"``; degenerate hulls have empty interior.
    """
    thetas: np.ndarray
    points: np.ndarray
    hull: np.ndarray
    kind: str = "polygon"

    @property
    def degenerate(self) -> bool:
        return self.kind != "polygon"

    @classmethod
    def from_points(cls, thetas, points) -> "BoundaryCurve":
        thetas = np.asarray(thetas, dtype=float)
        points = np.asarray(points, dtype=complex)
        kind, ends = _classify(points)
        if kind is not None:
            return cls(thetas, points, ends, kind)
        hull = convex_hull(points)
        if hull.size < 3:
            return cls(thetas, points, hull, "segment" if hull.size == 2 else "point")
        return cls(thetas, points, hull, "polygon")


@dataclass(frozen=True)
class DiscRegion:
    center: complex
    radius: float

    def __post_init__(self):
        if not self.radius >= 0.0:
            raise DomainError(f"disc radius must be nonnegative, got {self.radius!r}")

    def boundary(self, n: int = 128, shrink: float = 1.0) -> np.ndarray:
        t = 2.0 * np.pi * np.arange(n) / n
        return self.center + shrink * self.radius * np.exp(1j * t)


@dataclass(frozen=True)
class EllipseRegion:
    """Filled ellipse given by its foci and full axis lengths."""
    focus1: complex
    focus2: complex
    major_axis_len: float
    minor_axis_len: float

    def __post_init__(self):
        maj, mnr = self.major_axis_len, self.minor_axis_len
        if not (maj >= 0.0 and mnr >= 0.0):
            raise DomainError("axis lengths must be nonnegative")
        gap = abs(maj ** 2 - mnr ** 2 - abs(self.focus1 - self.focus2) ** 2)
        if gap > 1e-10 * max(1.0, maj ** 2) or mnr > maj * (1.0 + 1e-12) + 1e-300:
            raise DomainError("axis lengths inconsistent with focal distance")

    @property
    def center(self) -> complex:
        return (self.focus1 + self.focus2) / 2.0

    @property
    def direction(self) -> complex:
        d = self.focus2 - self.focus1
        return d / abs(d) if abs(d) > 0.0 else 1.0 + 0j

    def boundary(self, n: int = 128, shrink: float = 1.0) -> np.ndarray:
        t = 2.0 * np.pi * np.arange(n) / n
        a = shrink * self.major_axis_len / 2.0
        b = shrink * self.minor_axis_len / 2.0
        return self.center + self.direction * (a * np.cos(t) + 1j * b * np.sin(t))


# -- the rotation sweep ------------------------------------------------------------

def _flat_points(A: np.ndarray, theta: float, H: np.ndarray, w: np.ndarray, V: np.ndarray):
    """Boundary points on a flat edge where the top eigenvalue is degenerate.

    Records the two leading eigenvectors, their normalized sum, and the two
    extremes of the skew part restricted to the top eigenspace (the true
    segment endpoints).
    """
    top = w[-1]
    k = int(np.sum(w >= top - DEGENERATE_GAP * max(1.0, abs(top))))
    k = max(k, 2)
    Vc = V[:, -k:]
    out = []
    v1, v2 = V[:, -1], V[:, -2]
    mid = v1 + v2
    for v in (v1, v2, mid / np.linalg.norm(mid)):
        out.append(quadratic_form(A, v))
    rot = np.exp(1j * theta) * A
    skew = (rot - rot.conj().T) / 2j
    ks = Vc.conj().T @ skew @ Vc
    ks = (ks + ks.conj().T) / 2.0
    _, Wk = np.linalg.eigh(ks)
    for j in (0, -1):
        v = Vc @ Wk[:, j]
        out.append(quadratic_form(A, v / np.linalg.norm(v)))
    return out


def _sweep_angles(A: np.ndarray, thetas: np.ndarray, solver: str, chunk: int = 128):
    """Top eigen-data of Re(e^{i theta} A) for each theta; returns (lam, points, extras)."""
    n = A.shape[0]
    lam = np.empty(thetas.size)
    pts = np.empty(thetas.size, dtype=complex)
    extras = []
    AH = A.conj().T
    for start in range(0, thetas.size, chunk):
        th = thetas[start:start + chunk]
        e = np.exp(1j * th)[:, None, None]
        H = (e * A + e.conj() * AH) / 2.0
        if solver == "lapack":
            w, V = np.linalg.eigh(H)
        elif solver == "jacobi":
            pairs = [jacobi_eigh(h) for h in H]
            w = np.stack([p[0] for p in pairs])
            V = np.stack([p[1] for p in pairs])
        else:
            raise ValueError(f"unknown eigen solver {solver!r}")
        v = V[:, :, -1]
        lam[start:start + th.size] = w[:, -1]
        pts[start:start + th.size] = np.einsum("ki,ij,kj->k", v.conj(), A, v)
        if n >= 2:
            gap = w[:, -1] - w[:, -2]
            flat = np.nonzero(gap < DEGENERATE_GAP * np.maximum(1.0, np.abs(w[:, -1])))[0]
            for i in flat:
                for p in _flat_points(A, float(th[i]), H[i], w[i], V[i]):
                    extras.append((float(th[i]), p))
    return lam, pts, extras


def _corner_gaps(t1, l1, p1, t2, l2, p2) -> np.ndarray:
    """Distance between each chord p1-p2 and the corner of its two support lines.

    Support line k is {q : Re(e^{i t_k} q) = l_k}; the true boundary between
    two sweep points lies in the triangle chord/corner.
    """
    a1, a2 = np.exp(1j * t1), np.exp(1j * t2)
    det = a1.real * a2.imag - a1.imag * a2.real
    with np.errstate(divide="ignore", invalid="ignore"):
        x = (l1 * a2.imag - l2 * a1.imag) / det
        y = -(a1.real * l2 - a2.real * l1) / det
        corner = x + 1j * y
        chord = p2 - p1
        gap = np.where(np.abs(chord) > 0.0,
                       np.abs(((corner - p1) * chord.conj()).imag) / np.abs(chord),
                       np.abs(corner - p1))
    return np.where(np.abs(det) < 1e-15, 0.0, gap)


def boundary_sweep(A, M: int = DEFAULT_ANGLES, solver: str = "lapack",
                   refine_tol: Optional[float] = None, max_points: int = 1 << 16) -> BoundaryCurve:
    """Boundary of W(A) sampled at theta_k = 2 pi k / M.

    With ``refine_tol`` set, angle intervals are bisected until the gap
    between each chord and the corner of its two support lines (a bound on
    how far the true boundary bulges past the chord) is at most
    ``refine_tol``.  The default is the plain uniform sweep.
    """
    A = np.asarray(getattr(A, "entries", A), dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {A.shape}")
    if M < 16:
        raise DomainError(f"angle count must be at least 16, got {M}")
    thetas = 2.0 * np.pi * np.arange(M) / M
    lam, pts, extras = _sweep_angles(A, thetas, solver)
    if refine_tol is not None:
        thetas, lam, pts, more = _refine(A, thetas, lam, pts, refine_tol, solver, max_points)
        extras.extend(more)
    all_t = np.concatenate((thetas, [t for t, _ in extras]))
    all_p = np.concatenate((pts, [p for _, p in extras]))
    return BoundaryCurve.from_points(all_t, all_p)


def _refine(A, thetas, lam, pts, tol, solver, max_points):
    extras = []
    t, l, p = thetas, lam, pts
    while t.size < max_points:
        t2 = np.roll(t, -1)
        t2[-1] += 2.0 * np.pi
        gaps = _corner_gaps(t, l, p, t2, np.roll(l, -1), np.roll(p, -1))
        bad = np.nonzero(gaps > tol)[0]
        if bad.size == 0:
            break
        new = (0.5 * (t[bad] + t2[bad]))[: max_points - t.size] % (2.0 * np.pi)
        nl, npts, ex = _sweep_angles(A, new, solver)
        extras.extend(ex)
        t = np.concatenate((t, new))
        l = np.concatenate((l, nl))
        p = np.concatenate((p, npts))
        order = np.argsort(t, kind="stable")
        t, l, p = t[order], l[order], p[order]
    return t, l, p, extras


def numerical_radius(A, M: int = DEFAULT_ANGLES, curve: Optional[BoundaryCurve] = None) -> float:
    """Largest modulus over the hull vertices (a lower bound for w(A))."""
    if curve is None:
        curve = boundary_sweep(A, M)
    return float(np.max(np.abs(curve.hull)))


def signed_distance(curve: BoundaryCurve, p: complex) -> float:
    """Minimum inward distance from ``p`` to the hull edges (negative outside).

    Degenerate hulls have no interior and give ``-inf``.
    """
    if curve.degenerate:
        return -math.inf
    h = curve.hull
    a = h
    b = np.roll(h, -1)
    e = b - a
    d = ((np.conj(e) * (p - a)).imag) / np.abs(e)
    return float(np.min(d))


def contains_point(curve: BoundaryCurve, p: complex, margin: float = 1e-8) -> bool:
    """True iff ``p`` is inside the hull at distance >= ``margin`` from every edge."""
    if curve.degenerate:
        return False
    return signed_distance(curve, complex(p)) >= margin


def polygon_distance(hull: np.ndarray, q):
    """Unsigned distance from ``q`` (scalar or array) to a polygon/segment/point boundary."""
    h = np.asarray(hull, dtype=complex)
    qq = np.asarray(q, dtype=complex)
    flat = qq.reshape(-1, 1)
    if h.size == 1:
        d = np.abs(flat[:, 0] - h[0])
    else:
        a = h if h.size > 2 else h[:1]
        b = np.roll(h, -1) if h.size > 2 else h[1:]
        e = b - a
        t = np.clip(((flat - a) * e.conj()).real / np.abs(e) ** 2, 0.0, 1.0)
        d = np.min(np.abs(a + t * e - flat), axis=1)
    return float(d[0]) if qq.ndim == 0 else d.reshape(qq.shape)


def ellipse_distance(E: EllipseRegion, q):
    """Unsigned distance from ``q`` (scalar or array) to the boundary curve of ``E``."""
    a = E.major_axis_len / 2.0
    b = E.minor_axis_len / 2.0
    qq = np.asarray(q, dtype=complex)
    z = ((qq - E.center) * np.conj(E.direction)).ravel()
    x, y = np.abs(z.real), np.abs(z.imag)
    if b == 0.0:
        d = np.abs((x - np.minimum(x, a)) + 1j * y)
    elif a == b:
        d = np.abs(np.abs(z) - a)
    else:
        # nearest point (a^2 x/(t+a^2), b^2 y/(t+b^2)) with t the root of
        # (a x/(t+a^2))^2 + (b y/(t+b^2))^2 = 1 on t > -b^2 (decreasing there)
        lo = np.full(x.shape, -b * b)
        hi = np.maximum(np.maximum(a * x, b * y), a * a) * 2.0
        with np.errstate(divide="ignore", invalid="ignore"):
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                f = (a * x / (mid + a * a)) ** 2 + (b * y / (mid + b * b)) ** 2 - 1.0
                pos = f > 0.0
                lo = np.where(pos, mid, lo)
                hi = np.where(pos, hi, mid)
            t = 0.5 * (lo + hi)
            px = a * a * x / (t + a * a)
            py = b * b * y / (t + b * b)
        d = np.hypot(px - x, py - y)
        # on the major axis inside the evolute the nearest point leaves the axis
        inner = (y == 0.0) & (x < (a * a - b * b) / a)
        if np.any(inner):
            x0 = a * a * x[inner] / (a * a - b * b)
            y0 = b * np.sqrt(np.maximum(0.0, 1.0 - (x0 / a) ** 2))
            d[inner] = np.hypot(x0 - x[inner], y0)
    return float(d[0]) if qq.ndim == 0 else d.reshape(qq.shape)


# -- predicted regions ---------------------------------------------------------------

def ellipse_2x2(a: complex, b: complex, c: complex) -> EllipseRegion:
    """W of [[a, 0], [c, b]]: foci a and b, minor axis |c|."""
    a, b, c = complex(a), complex(b), complex(c)
    return EllipseRegion(a, b, math.sqrt(abs(c) ** 2 + abs(a - b) ** 2), abs(c))


def vanishing_weight_disc(r: int, s, b_r: complex) -> DiscRegion:
    """Disc at 0 of radius w_r / (1 + w_r) * |b_r| for psi vanishing to order r, phi(0)=0."""
    if r < 1:
        raise DomainError(f"vanishing order must be >= 1, got {r}")
    w = monomial_norm_sq(r, s)
    return DiscRegion(0j, w / (1.0 + w) * abs(b_r))


def dilation_weight_disc(r: int, s, mu: complex, b_prev: complex) -> DiscRegion:
    """Disc at 0 of radius (1/2) sqrt(Gamma(r+1)Gamma(s+1)/Gamma(r+s)) |mu b_{r-1}|."""
    if r < 2:
        raise DomainError(f"index r must be >= 2, got {r}")
    if mu == 0:
        raise DomainError("dilation factor must be nonzero")
    s = float(s)
    return DiscRegion(0j, 0.5 * math.sqrt(gamma_ratio((r + 1.0, s + 1.0), (r + s,))) * abs(mu * b_prev))


def _coef(b, n: int) -> complex:
    if n < 0:
        raise DomainError(f"negative coefficient index {n}")
    try:
        return complex(b[n])
    except IndexError:
        return 0j


def rotation_triple_disc(m: int, r1: int, r2: int, s, b: Sequence[complex],
                         zero_tol: float = 0.0) -> DiscRegion:
    """Disc at b_0 for phi(z) = e^{2 pi i/m} z on span{e_0, e_{m r1}, e_{m r2}}.

    Requires b_{m r1} b_{m r2} b_{m(r2-r1)} = 0 with one of the three nonzero.
    """
    if not 0 < r1 < r2:
        raise DomainError(f"need 0 < r1 < r2, got r1={r1}, r2={r2}")
    i1, i2, i3 = m * r1, m * r2, m * (r2 - r1)
    x, y, zc = _coef(b, i1), _coef(b, i2), _coef(b, i3)
    if abs(x * y * zc) > zero_tol:
        raise DomainError("the product of the three off-diagonal coefficients must vanish")
    if max(abs(x), abs(y), abs(zc)) <= zero_tol:
        raise DomainError("at least one of the three off-diagonal coefficients must be nonzero")
    w1, w2 = monomial_norm_sq(i1, s), monomial_norm_sq(i2, s)
    rad = 0.5 * math.sqrt(w1 * abs(x) ** 2 + w2 * abs(y) ** 2 + (w2 / w1) * abs(zc) ** 2)
    return DiscRegion(_coef(b, 0), rad)


def rotation_ellipse(m: int, r: int, k: int, s, b0: complex, b_n: complex) -> EllipseRegion:
    """Ellipse for phi(z) = e^{2 pi i/m} z on span{e_0, e_{mr+k}}."""
    if not 0 < k < m:
        raise DomainError(f"need 0 < k < m, got k={k}, m={m}")
    n = m * r + k
    rot = np.exp(2j * np.pi * n / m)
    return ellipse_2x2(b0, b0 * rot, math.sqrt(monomial_norm_sq(n, s)) * abs(b_n))


def irrational_rotation_ellipse(p: int, q: int, t: float, s, b0: complex, b_q: complex) -> EllipseRegion:
    """Ellipse for phi(z) = e^{2 pi i t} z on span{e_p, e_{p+q}}."""
    if q <= 0 or p < 0:
        raise DomainError(f"need p >= 0 and q > 0, got p={p}, q={q}")
    s = float(s)
    factor = gamma_ratio((p + q + 1.0, p + s), (p + q + s, p + 1.0))
    f1 = b0 * np.exp(2j * np.pi * p * t)
    f2 = b0 * np.exp(2j * np.pi * (p + q) * t)
    return ellipse_2x2(f1, f2, math.sqrt(factor) * abs(b_q))
