"""Spacetimes over the half-space Pi0 = {(u, y, tau) : tau > 0}.

Pi0 carries the flat metric tau^2 du^2 + dy^2 - dtau^2.  Its isometries are
the horizontal translations sigma_v, v = p + i q, acting by
(u, y) -> (u + p, y + q), and the rotation R_pi, (u, y) -> (-u, -y).

Target models and point formats returned by ``develop``:

* flat: Minkowski (x, y, t) with metric dx^2 + dy^2 - dt^2;
* hyperbolic: upper half-space (w, c), w complex, metric (|dw|^2 + dc^2)/c^2;
* deSitter: unit spacelike 4-vector for -x0^2 + x1^2 + x2^2 + x3^2;
* antiDeSitter: 2x2 matrix of determinant one, metric -det.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import geometry as geo
from .errors import DegenerateLattice, RadiusRange, TimeRange

KINDS = ("flat", "hyperbolic", "deSitter", "antiDeSitter")
J2 = np.array([[0.0, 1.0], [-1.0, 0.0]])


def _check_time(kind, tau):
    if not tau > 0:
        raise TimeRange(f"tau = {tau} must be positive")
    if kind == "hyperbolic" and not tau > 1:
        raise TimeRange(f"tau = {tau} must exceed 1")
    if kind == "deSitter" and not tau < 1:
        raise TimeRange(f"tau = {tau} must be below 1")


def develop(kind: str, p):
    u, y, tau = (float(c) for c in p)
    _check_time(kind, tau)
    if kind == "flat":
        return np.array([tau * np.sinh(u), y, tau * np.cosh(u)])
    if kind == "hyperbolic":
        return complex(np.exp(complex(u, y)) / tau), float(np.sqrt(tau * tau - 1) / tau * np.exp(u))
    if kind == "deSitter":
        d = np.arctanh(tau)
        e = np.array([0.0, 0.0, -np.cos(y), -np.sin(y)])
        n = np.array([np.cosh(u), np.sinh(u), 0.0, 0.0])
        return np.cosh(d) * e + np.sinh(d) * n
    if kind == "antiDeSitter":
        t = np.arctan(tau)
        return (np.cos(t) * np.diag([np.exp(y), np.exp(-y)])
                + np.sin(t) * np.array([[0.0, np.exp(u)], [-np.exp(-u), 0.0]]))
    raise ValueError(f"unknown kind {kind!r}")


def expected_metric(kind: str, p) -> np.ndarray:
    """Metric of the developed structure in the coordinates (u, y, tau)."""
    tau = float(p[2])
    _check_time(kind, tau)
    if kind == "flat":
        return np.diag([tau * tau, 1.0, -1.0])
    if kind == "hyperbolic":
        a = 1.0 / (tau * tau - 1)
        return np.diag([a * tau * tau, a, a * a])
    a = 1.0 / (1 - tau * tau) if kind == "deSitter" else 1.0 / (1 + tau * tau)
    return np.diag([a * tau * tau, a, -a * a])


# ---------------------------------------------------------------------------
# flattening model points so that finite differences and forms apply


def as_vector(kind: str, X) -> np.ndarray:
    if kind == "hyperbolic":
        w, c = X
        return np.array([w.real, w.imag, c])
    return np.asarray(X, dtype=float).ravel()


def target_form(kind: str, X, a, b) -> float:
    """Model metric at X on flattened tangent vectors a, b."""
    if kind == "flat":
        return float(a[0] * b[0] + a[1] * b[1] - a[2] * b[2])
    if kind == "hyperbolic":
        c = X[1]
        return float(np.dot(a, b) / (c * c))
    if kind == "deSitter":
        return float(geo.mink4_form(a, b))
    return float(geo.ads_form(np.reshape(a, (2, 2)), np.reshape(b, (2, 2))))


def pullback(kind: str, F, p, h: float = 1e-5) -> np.ndarray:
    """Numerical pullback of the model metric through a chart F at p."""
    from .wick import central_jacobian
    p = np.asarray(p, dtype=float)
    X = F(p)
    cols = central_jacobian(lambda q: as_vector(kind, F(q)), p, h)
    return np.array([[target_form(kind, X, a, b) for b in cols] for a in cols])


def pullback_residual(kind: str, p, h: float = 1e-5) -> float:
    G = pullback(kind, lambda q: develop(kind, q), p, h)
    return float(np.max(np.abs(G - expected_metric(kind, p))))


# ---------------------------------------------------------------------------
# holonomy


def sigma(v, p) -> np.ndarray:
    v = complex(v)
    return np.array([p[0] + v.real, p[1] + v.imag, p[2]], dtype=float)


def r_pi(p) -> np.ndarray:
    return np.array([-p[0], -p[1], p[2]], dtype=float)


def halfspace_act(A, w, c):
    """Poincare extension of the Moebius map of A to the upper half-space."""
    (a, b), (g, d) = np.asarray(A, dtype=complex)
    den = abs(g * w + d) ** 2 + abs(g) ** 2 * c * c
    w2 = ((a * w + b) * np.conj(g * w + d) + a * np.conj(g) * c * c) / den
    return complex(w2), float(c / den)


@dataclass(frozen=True, eq=False)
class QDIsometry:
    """Isometry of a target model.

    flat: (linear 3x3, translation); hyperbolic: SL(2,C) matrix acting on the
    half-space; deSitter: 4x4 Lorentz matrix; antiDeSitter: pair (L, R)
    acting by X -> L X R^-1.
    """
    kind: str
    data: tuple

    def __call__(self, X):
        if self.kind == "flat":
            M, t = self.data
            return M @ np.asarray(X, dtype=float) + t
        if self.kind == "hyperbolic":
            return halfspace_act(self.data[0], *X)
        if self.kind == "deSitter":
            return self.data[0] @ np.asarray(X, dtype=float)
        L, R = self.data
        return L @ X @ np.linalg.inv(R)


def holonomy(kind: str, v=0j, rotation: bool = False) -> QDIsometry:
    """Image of sigma_v, or of R_pi when rotation is set."""
    if rotation:
        if kind == "flat":
            return QDIsometry(kind, (np.diag([-1.0, -1.0, 1.0]), np.zeros(3)))
        if kind == "hyperbolic":
            return QDIsometry(kind, (np.array([[0, 1j], [1j, 0]]),))
        if kind == "deSitter":
            return QDIsometry(kind, (np.diag([1.0, -1.0, 1.0, -1.0]),))
        if kind == "antiDeSitter":
            return QDIsometry(kind, (J2, J2))
        raise ValueError(f"unknown kind {kind!r}")
    v = complex(v)
    p, q = v.real, v.imag
    if kind == "flat":
        M = np.eye(3)
        M[0, 0] = M[2, 2] = np.cosh(p)
        M[0, 2] = M[2, 0] = np.sinh(p)
        return QDIsometry(kind, (M, np.array([0.0, q, 0.0])))
    if kind == "hyperbolic":
        e = np.exp(v / 2)
        return QDIsometry(kind, (np.diag([e, 1 / e]),))
    if kind == "deSitter":
        M = np.eye(4)
        M[0, 0] = M[1, 1] = np.cosh(p)
        M[0, 1] = M[1, 0] = np.sinh(p)
        M[2, 2] = M[3, 3] = np.cos(q)
        M[2, 3], M[3, 2] = -np.sin(q), np.sin(q)
        return QDIsometry(kind, (M,))
    if kind == "antiDeSitter":
        a, b = (p + q) / 2, (p - q) / 2
        return QDIsometry(kind, (np.diag([np.exp(a), np.exp(-a)]), np.diag([np.exp(b), np.exp(-b)])))
    raise ValueError(f"unknown kind {kind!r}")


def point_distance(kind: str, X, Y) -> float:
    return float(np.max(np.abs(as_vector(kind, X) - as_vector(kind, Y))))


# ---------------------------------------------------------------------------
# rays s -> 0


def ray(kind: str, s: float, p):
    """Developed point of the s-rescaled family, normalized to converge as s -> 0.

    hyperbolic: ((exp(s z) - 1)/s, exp(s u) tau) with z = u + i y;
    antiDeSitter: develop(g_s p) conjugated by A_s = [[1, -1/s], [0, 1]].
    """
    u, y, tau = (float(c) for c in p)
    if not s > 0:
        raise ValueError("s must be positive")
    if not tau > 0:
        raise TimeRange("tau must be positive")
    if kind == "hyperbolic":
        z = complex(u, y)
        return complex(np.expm1(s * z) / s), float(np.exp(s * u) * tau)
    if kind == "antiDeSitter":
        A = _conjugator(s)
        return A @ develop(kind, (s * u, s * y, tau)) @ np.linalg.inv(A)
    raise ValueError(f"no ray family for {kind!r}")


def _conjugator(s):
    return np.array([[1.0, -1.0 / s], [0.0, 1.0]])


def ray_holonomy(kind: str, s: float, v) -> QDIsometry:
    v = complex(v)
    if kind == "hyperbolic":
        e = np.exp(s * v / 2)
        # w -> e^{sv} w + (e^{sv} - 1)/s
        return QDIsometry(kind, (np.array([[e, np.expm1(s * v) / s / e], [0, 1 / e]]),))
    if kind == "antiDeSitter":
        A = _conjugator(s)
        L, R = holonomy(kind, s * v).data
        Ai = np.linalg.inv(A)
        return QDIsometry(kind, (A @ L @ Ai, A @ R @ Ai))
    raise ValueError(f"no ray family for {kind!r}")


def ray_holonomy_limit(kind: str, v) -> QDIsometry:
    v = complex(v)
    p, q = v.real, v.imag
    if kind == "hyperbolic":
        return QDIsometry(kind, (np.array([[1, v], [0, 1]], dtype=complex),))
    if kind == "antiDeSitter":
        return QDIsometry(kind, (np.array([[1.0, p + q], [0.0, 1.0]]), np.array([[1.0, p - q], [0.0, 1.0]])))
    raise ValueError(f"no ray family for {kind!r}")


def ray_limit_point(kind: str, p):
    """s -> 0 limit of the hyperbolic ray: the identity chart (u + i y, tau)."""
    if kind != "hyperbolic":
        raise ValueError("only the hyperbolic ray has a point limit")
    return complex(p[0], p[1]), float(p[2])


# ---------------------------------------------------------------------------
# lattices


def lattice_check(v1, v2=None, rotation: bool = False) -> dict:
    """Classify Pi0 / Lambda for one or two translations."""
    if rotation:
        raise DegenerateLattice("R_pi fixes the tau axis, so the action is not free")
    v1 = complex(v1)
    if abs(v1) == 0:
        raise DegenerateLattice("zero translation")
    if v2 is None:
        beta = np.angle(v1)
        a = abs(v1) * np.exp(2j * beta)
        return {"type": "cylinder", "a": a, "residue": -v1 * v1 / (4 * np.pi ** 2)}
    v2 = complex(v2)
    cross = v1.real * v2.imag - v1.imag * v2.real
    if abs(cross) <= 1e-12 * max(abs(v1), abs(v2)) ** 2:
        raise DegenerateLattice("translations are linearly dependent")
    if cross < 0:
        v1, v2 = v2, v1
    return {"type": "torus", "modulus": reduce_modulus(v2 / v1), "area": abs(cross)}


def reduce_modulus(t: complex) -> complex:
    """Representative of t in the standard fundamental domain of SL(2,Z)."""
    t = complex(t)
    for _ in range(200):
        t = complex(t.real - np.floor(t.real + 0.5), t.imag)
        if abs(t) < 1 - 1e-14:
            t = -1 / t
        else:
            break
    return t


# ---------------------------------------------------------------------------
# BTZ region II


@dataclass(frozen=True)
class KerrParams:
    r_plus: float
    r_minus: float

    def __post_init__(self):
        if not self.r_plus > self.r_minus >= 0:
            raise RadiusRange("need r_plus > r_minus >= 0")

    @property
    def M(self):
        return self.r_plus ** 2 + self.r_minus ** 2

    @property
    def J(self):
        return 2 * self.r_plus * self.r_minus


def kerr_tau(params: KerrParams, r: float) -> float:
    rp, rm = params.r_plus, params.r_minus
    if not rm < r < rp:
        raise RadiusRange(f"r = {r} must lie in ({rm}, {rp})")
    return float(np.sqrt((r * r - rm * rm) / (rp * rp - r * r)))


def kerr_radius(params: KerrParams, tau: float) -> float:
    rp, rm = params.r_plus, params.r_minus
    return float(np.sqrt((tau * tau * rp * rp + rm * rm) / (1 + tau * tau)))


def kerr_chart(params: KerrParams, r: float, phi: float, v: float) -> np.ndarray:
    """(u, y, tau) of the Kerr coordinates (r, phi, v)."""
    rp, rm = params.r_plus, params.r_minus
    tau = kerr_tau(params, r)
    return np.array([rp * phi - rm * v, rm * phi - rp * v, tau])


def kerr_metric(params: KerrParams, r: float):
    """(f, N^phi) of the Kerr-like metric at radius r."""
    f = -params.M + r * r + params.J ** 2 / (4 * r * r)
    return float(f), float(-params.J / (2 * r * r))


def kerr_metric_matrix(params: KerrParams, r: float) -> np.ndarray:
    """-f dv^2 + dr^2/f + r^2 (dphi + N^phi dv)^2 in the coordinates (r, phi, v)."""
    f, nphi = kerr_metric(params, r)
    G = np.zeros((3, 3))
    G[0, 0] = 1 / f
    G[1, 1] = r * r
    G[2, 2] = -f + r * r * nphi * nphi
    G[1, 2] = G[2, 1] = r * r * nphi
    return G


def kerr_residual(params: KerrParams, r: float, phi: float, v: float, h: float = 1e-5) -> float:
    G = pullback("antiDeSitter", lambda q: develop("antiDeSitter", kerr_chart(params, *q)),
                 np.array([r, phi, v]), h)
    return float(np.max(np.abs(G - kerr_metric_matrix(params, r))))
