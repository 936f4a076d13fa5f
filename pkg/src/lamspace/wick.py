"""Wick rotation and rescalings of the flat domain.

Each map sends a domain point p with frame (T, N, r) to the model point
obtained from the bent image of N by moving a distance fixed by T along the
normal direction, and then applying the lifted cocycle at p:

* hyperbolic space: distance arctgh(1/T) along the positive normal (T > 1);
* de Sitter space: the dual point, with tau = arctgh(T) (T < 1);
* anti de Sitter space: timelike distance arctan(T) from the initial
  singularity image toward the pleated surface.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import cocycles as cc
from . import geometry as geo
from .errors import (BadBranch, DomainOfT, NotOnLevelOne, TimeNotAboveOne,
                     TimeNotBelowOne, TooCloseToBreakLocus)
from .flat import RegularDomain, ct_frame

KINDS = ("hyperbolic", "deSitter", "antiDeSitter")
E3 = np.array([0.0, 0.0, 0.0, 1.0])


def rescaling(kind: str, T: float):
    """Horizontal and vertical rescaling factors (alpha, beta = alpha^2)."""
    if kind == "hyperbolic":
        if not T > 1:
            raise TimeNotAboveOne(f"T = {T} must exceed 1")
        a = 1.0 / (T * T - 1.0)
    elif kind == "deSitter":
        if not 0 < T < 1:
            raise TimeNotBelowOne(f"T = {T} must lie in (0, 1)")
        a = 1.0 / (1.0 - T * T)
    elif kind == "antiDeSitter":
        if not T > 0:
            raise DomainOfT(f"T = {T} must be positive")
        a = 1.0 / (1.0 + T * T)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return a, a * a


def bend_embed(dom: RegularDomain, x) -> np.ndarray:
    """Bent image of x in the hyperboloid model of hyperbolic 3-space."""
    B = cc.hyperbolic_bending(dom.lam, dom.x0, x)
    return geo.sl2c_to_so31(B) @ geo.h2_to_h3(x)


def wick(dom: RegularDomain, p, frame=None) -> np.ndarray:
    f = frame if frame is not None else ct_frame(dom, p)
    if not f.T > 1:
        raise TimeNotAboveOne(f"T(p) = {f.T} is not above 1")
    d = np.arctanh(1.0 / f.T)
    M = geo.sl2c_to_so31(cc.lifted_from_base(dom, p, 1j, f))
    return M @ (np.cosh(d) * geo.h2_to_h3(f.N) + np.sinh(d) * E3)


def ds(dom: RegularDomain, p, frame=None) -> np.ndarray:
    """Lift (unit spacelike 4-vector) of the de Sitter image; continuous in p."""
    f = frame if frame is not None else ct_frame(dom, p)
    if not 0 < f.T < 1:
        raise TimeNotBelowOne(f"T(p) = {f.T} is not below 1")
    t = np.arctanh(f.T)
    M = geo.sl2c_to_so31(cc.lifted_from_base(dom, p, 1j, f))
    return M @ (np.sinh(t) * geo.h2_to_h3(f.N) + np.cosh(t) * E3)


def ads(dom: RegularDomain, p, frame=None) -> np.ndarray:
    """Lift in SL(2,R) of the anti de Sitter image; continuous in p."""
    f = frame if frame is not None else ct_frame(dom, p)
    t = np.arctan(f.T)
    fac = cc.lifted_factors(dom, p, f)
    bm = cc._product(fac, -1.0)
    bp = cc._product(fac, 1.0)
    core = np.cos(t) * np.eye(2) + np.sin(t) * geo.mink_to_ads(f.N)
    return bm @ core @ np.linalg.inv(bp)


def sigma(x) -> complex:
    """Endpoint of the ray leaving x orthogonally to the plane x3 = 0 on the
    positive side."""
    return geo.h2_to_uhp(x)


def projective(dom: RegularDomain, p, frame=None, tol: float = 1e-9) -> complex:
    """Developing map of the level surface T = 1 into the sphere at infinity."""
    f = frame if frame is not None else ct_frame(dom, p)
    if abs(f.T - 1) > tol:
        raise NotOnLevelOne(f"T(p) = {f.T} is not 1")
    B = cc.lifted_from_base(dom, p, 1j, f)
    return complex(geo.mobius(B, sigma(f.N)))


def null_to_boundary(v) -> complex:
    """Boundary point of a null (or nearly null) future 4-vector."""
    d = v[0] - v[1]
    if abs(d) < 1e-300:
        return complex(np.inf)
    return complex(-v[2], v[3]) / d


# ---------------------------------------------------------------------------
# one weighted geodesic, in closed form
#
# Coordinates: the leaf is the geodesic x2 = 0, the basepoint side is x2 < 0,
# u runs along the leaf, zeta is the signed distance from the leaf measured
# on the level surface.  Branches: zeta < 0, 0 <= zeta <= a0/T, zeta > a0/T.


def _branch(a0, T, zeta):
    if not a0 > 0:
        raise BadBranch("a0 must be positive")
    if not T > 0:
        raise DomainOfT("T must be positive")
    if zeta < 0:
        return 0, zeta
    if zeta <= a0 / T:
        return 1, zeta
    return 2, zeta - a0 / T


def single_geodesic(kind: str, a0: float, T: float, u: float, zeta: float):
    b, z = _branch(a0, T, zeta)
    ch, sh = np.cosh(u), np.sinh(u)
    if kind == "flat":
        if b == 0:
            return T * np.array([ch * np.cosh(z), sh * np.cosh(z), np.sinh(z)])
        if b == 1:
            return T * np.array([ch, sh, z])
        return T * np.array([ch * np.cosh(z), sh * np.cosh(z), np.sinh(z) + a0 / T])
    if kind in ("hyperbolic", "deSitter"):
        if kind == "hyperbolic":
            if not T > 1:
                raise TimeNotAboveOne("T must exceed 1")
            d = np.arctanh(1.0 / T)
            cn, cv = np.cosh(d), np.sinh(d)      # weights of the point and the normal
        else:
            if not 0 < T < 1:
                raise TimeNotBelowOne("T must lie in (0, 1)")
            d = np.arctanh(T)
            cn, cv = np.sinh(d), np.cosh(d)
        if b == 0:
            return cn * np.array([np.cosh(z) * ch, np.cosh(z) * sh, np.sinh(z), 0.0]) + cv * E3
        if b == 1:
            ang = z * T
            return cn * np.array([ch, sh, 0.0, 0.0]) + cv * np.array([0.0, 0.0, np.sin(ang), np.cos(ang)])
        c, s = np.cos(a0), np.sin(a0)
        return (cn * np.array([np.cosh(z) * ch, np.cosh(z) * sh, np.sinh(z) * c, -np.sinh(z) * s])
                + cv * np.array([0.0, 0.0, s, c]))
    if kind == "antiDeSitter":
        t = np.arctan(T)
        p0 = geo.mink_to_ads([1.0, 0.0, 0.0])
        v0 = geo.mink_to_ads([0.0, 1.0, 0.0])
        X0 = -geo.mink_to_ads([0.0, 0.0, 1.0])
        along = ch * p0 + sh * v0
        if b == 0:
            return np.sin(t) * (np.cosh(z) * along - np.sinh(z) * X0) + np.cos(t) * np.eye(2)
        if b == 1:
            return np.sin(t) * along + np.cos(t) * geo.mat_exp(-z * np.tan(t) * X0)
        vp = geo.mat_exp(-a0 * X0)
        return np.sin(t) * (np.cosh(z) * along - np.sinh(z) * X0 @ vp) + np.cos(t) * vp
    raise ValueError(f"unknown kind {kind!r}")


def single_geodesic_metric(kind: str, a0: float, T: float, zeta: float) -> np.ndarray:
    """Metric matrix in the coordinates (T, zeta, u)."""
    b, z = _branch(a0, T, zeta)
    c2 = 1.0 if b == 1 else np.cosh(z) ** 2
    if kind == "flat":
        return np.diag([-1.0, T * T, T * T * c2])
    if kind == "hyperbolic":
        alpha, beta = rescaling(kind, T)
        return np.diag([beta, alpha * T * T, alpha * T * T * c2])
    alpha, beta = rescaling(kind, T)
    return np.diag([-beta, alpha * T * T, alpha * T * T * c2])


# ---------------------------------------------------------------------------
# pullback harness


@dataclass
class PullbackReport:
    point: list
    kind: str
    h: float
    residual: float

    def as_dict(self):
        return {"point": list(self.point), "kind": self.kind, "h": self.h, "residual": self.residual}


def model_map(kind: str):
    return {"hyperbolic": wick, "deSitter": ds, "antiDeSitter": ads}[kind]


def model_metric(kind: str, A, B) -> float:
    if kind == "antiDeSitter":
        return float(geo.ads_form(A, B))
    return float(geo.mink4_form(A, B))


def break_distance(dom: RegularDomain, frame) -> float:
    """Distance to the nearest stratum boundary: band parameter inside a band,
    T times the hyperbolic distance to the nearest leaf on a face."""
    if frame.kind == "band":
        return min(frame.s, 1 - frame.s)
    if len(dom.normals) == 0:
        return np.inf
    c = np.abs(dom.normals @ (geo.ETA @ frame.N))
    return float(frame.T * np.arcsinh(c.min()))


def expected_metric(kind: str, frame) -> np.ndarray:
    """Rescaled flat metric in Minkowski coordinates."""
    alpha, beta = rescaling(kind, frame.T)
    n = geo.ETA @ frame.N                # dT = -<N, .>
    horiz = geo.ETA + np.outer(n, n)
    sign = 1.0 if kind == "hyperbolic" else -1.0
    return alpha * horiz + sign * beta * np.outer(n, n)


def central_jacobian(F, p, step):
    """Columns dF/dp_k by the five-point central stencil."""
    cols = []
    for k in range(len(p)):
        e = np.zeros(len(p))
        e[k] = step
        cols.append((8 * (F(p + e) - F(p - e)) - (F(p + 2 * e) - F(p - 2 * e))) / (12 * step))
    return cols


def pullback_residual(dom: RegularDomain, p, kind: str, h: float = 1e-5, margin: float = 1e-2) -> PullbackReport:
    p = np.asarray(p, dtype=float)
    f = ct_frame(dom, p)
    rescaling(kind, f.T)
    if break_distance(dom, f) < margin:
        raise TooCloseToBreakLocus("point too close to a band edge")
    F = model_map(kind)
    step = h * max(1.0, float(np.max(np.abs(p))))

    def G(q):
        g = ct_frame(dom, q)
        if g.kind != f.kind or g.index != f.index:
            raise TooCloseToBreakLocus("difference stencil crosses a stratum boundary")
        return F(dom, q, g)

    J = central_jacobian(G, p, step)
    G = np.array([[model_metric(kind, J[i], J[j]) for j in range(3)] for i in range(3)])
    res = float(np.max(np.abs(G - expected_metric(kind, f))))
    return PullbackReport([float(v) for v in p], kind, step, res)
