"""Anti de Sitter bending, earthquakes, boundary curves and holonomy.

Points of anti de Sitter space are unimodular 2x2 matrices up to sign; the
pair (A, B) acts by X -> A X B^-1.  The hyperbolic plane sits inside as the
set of order-two rotations P(Id) via pi_rotation.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import cocycles as cc
from . import geometry as geo
from . import laminations as lm
from .errors import ImageOnLeaf, NotInvariant
from .flat import RegularDomain, ct_frame


@dataclass(frozen=True, eq=False)
class PastFrame:
    tau: float
    rho_plus: np.ndarray
    rho_minus: np.ndarray
    point: np.ndarray


def ads_bend(dom: RegularDomain, x) -> np.ndarray:
    bm, bp = cc.ads_cocycle(dom.lam, dom.x0, x)
    return bm @ geo.pi_rotation(x) @ np.linalg.inv(bp)


def earthquake(dom: RegularDomain, side: str, x) -> np.ndarray:
    """Left earthquake uses the plus component, right the minus one."""
    bm, bp = cc.ads_cocycle(dom.lam, dom.x0, x)
    B = bp if side == "left" else bm
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    return geo.sl2_to_so21(B) @ np.asarray(x, dtype=float)


def image_lamination(dom: RegularDomain, side: str = "left") -> lm.Lamination:
    """Leaves moved by the earthquake, same weights."""
    z = 1.0 if side == "left" else -1.0
    leaves = []
    for i, leaf in enumerate(dom.lam.leaves):
        m = geo.project_to_geodesic(dom.x0, leaf.normal)
        # the half step on the leaf itself slides along it, so any point works
        B = cc.quake_bend(dom.lam, z, dom.x0, m)
        leaves.append(lm.Leaf(geo.sl2_to_so21(B) @ leaf.normal, leaf.weight))
    bnd = []
    for nb in dom.lam.boundary:
        m = geo.project_to_geodesic(dom.x0, nb)
        B = cc.quake_bend(dom.lam, z, dom.x0, m)
        bnd.append(geo.sl2_to_so21(B) @ nb)
    return lm.Lamination(tuple(leaves), tuple(bnd))


def earthquake_inverse_check(dom: RegularDomain, x, y) -> float:
    """Distance to Id of beta_R(E_L x, E_L y) composed with beta_L(x, y).

    beta_R is built on the image lamination of the left earthquake.  beta_L is
    transported to the image frame by the left cocycle at x, which is the
    identity when x is the basepoint.
    """
    img = image_lamination(dom, "left")
    ex = earthquake(dom, "left", x)
    ey = earthquake(dom, "left", y)
    C = cc.quake_bend(dom.lam, 1.0, dom.x0, x)
    left = C @ cc.quake_bend(dom.lam, 1.0, x, y) @ np.linalg.inv(C)
    right = cc.quake_bend(img, -1.0, ex, ey)
    return geo.proj_dist(right @ left, np.eye(2))


# ---------------------------------------------------------------------------
# boundary curve


def boundary_samples(dom: RegularDomain, per_arc: int = 8, swap: bool = False):
    """Samples (xi_L, xi_R, stratum) of the boundary curve, ordered along the circle.

    For each stratum, every ideal vertex and per_arc points of each ideal arc
    are moved by the two components of the cocycle at that stratum.
    """
    rows = []
    for k, F in enumerate(dom.strata):
        bm = cc.stratum_cocycle(dom, k, -1.0)
        bp = cc.stratum_cocycle(dom, k, 1.0)
        thetas = list(F.vertices)
        for a, b in F.arcs:
            thetas.extend(np.linspace(a, b, per_arc + 2)[1:-1])
        for t in thetas:
            t = geo.normalize_angle(t)
            xl, xr = geo.act_on_angle(bm, t), geo.act_on_angle(bp, t)
            if swap:
                xl, xr = xr, xl
            rows.append((t, xl, xr, k))
    rows.sort(key=lambda r: (r[0], r[3]))
    return [(xl, xr, k) for _, xl, xr, k in rows]


def _wrap(d):
    return (d + np.pi) % (2 * np.pi) - np.pi


def achronal_violation(samples) -> float:
    """Largest timelike excess -dxL*dxR over consecutive samples (closed curve).

    Increments with opposite signs lie in the timelike quadrants.
    """
    worst = 0.0
    n = len(samples)
    for j in range(n):
        a, b = samples[j], samples[(j + 1) % n]
        dl, dr = _wrap(b[0] - a[0]), _wrap(b[1] - a[1])
        worst = max(worst, -dl * dr)
    return worst


# ---------------------------------------------------------------------------
# holonomy and past frames


def as_sl2(gamma):
    g = np.asarray(gamma, dtype=float)
    return geo.so21_to_sl2(g) if g.shape == (3, 3) else g


def _check_invariant(dom: RegularDomain, A):
    g = geo.sl2_to_so21(A)
    if not lm.is_invariant(dom.lam, g):
        raise NotInvariant("lamination is not invariant under gamma")
    y = g @ dom.x0
    if dom.leaves_on(y, tol=1e-12):
        raise ImageOnLeaf("gamma moves the basepoint onto a leaf")
    return y


def ads_holonomy(dom: RegularDomain, gamma):
    A = as_sl2(gamma)
    y = _check_invariant(dom, A)
    bm, bp = cc.ads_cocycle(dom.lam, dom.x0, y)
    return bm @ A, bp @ A


def hyperbolic_holonomy(dom: RegularDomain, gamma) -> np.ndarray:
    A = as_sl2(gamma)
    y = _check_invariant(dom, A)
    return cc.hyperbolic_bending(dom.lam, dom.x0, y) @ A


def past_frame(dom: RegularDomain, p) -> PastFrame:
    f = ct_frame(dom, p)
    fac = cc.lifted_factors(dom, p, f)
    bm = cc._product(fac, -1.0)
    bpi = np.linalg.inv(cc._product(fac, 1.0))
    tau = float(np.arctan(f.T))
    rm = bm @ bpi
    rp = bm @ geo.mink_to_ads(f.N) @ bpi
    return PastFrame(tau, rp, rm, np.cos(tau) * rm + np.sin(tau) * rp)
