"""Quake-bend cocycles of a finite lamination.

For a complex parameter z the cocycle from x to y is the ordered product of
``exp(z a_i X_i / 2)`` over the leaves met by [x, y].  z = i is hyperbolic
bending, z = 1 and z = -1 are the two components of the anti de Sitter
cocycle (left and right earthquakes).
"""
from __future__ import annotations

import numpy as np

from . import geometry as geo
from . import laminations as lm
from .flat import RegularDomain, ct_frame


def _product(factors, z):
    out = np.eye(2, dtype=complex if np.iscomplexobj(z) or isinstance(z, complex) else float)
    for X, w in factors:
        out = out @ geo.mat_exp(z * w * 0.5 * X)
        out = geo.unimodular(out)
    return out


def quake_bend(lam: lm.Lamination, z, x, y) -> np.ndarray:
    cr = lm.crossing_data(lam, x, y)
    z = complex(z) if np.iscomplexobj(z) or isinstance(z, complex) else float(z)
    return _product([(c.generator, c.weight) for c in cr], z)


def hyperbolic_bending(lam: lm.Lamination, x, y) -> np.ndarray:
    return quake_bend(lam, 1j, x, y)


def ads_cocycle(lam: lm.Lamination, x, y):
    cr = lm.crossing_data(lam, x, y)
    f = [(c.generator, c.weight) for c in cr]
    return _product(f, -1.0), _product(f, 1.0)


def derivative_at_zero(lam: lm.Lamination, x, y) -> np.ndarray:
    """d/dz of quake_bend at z = 0: half the weighted sum of generators."""
    out = np.zeros((2, 2))
    for c in lm.crossing_data(lam, x, y):
        out += 0.5 * c.weight * c.generator
    return out


# ---------------------------------------------------------------------------
# lifted cocycle on the domain


def lifted_factors(dom: RegularDomain, p, frame=None):
    """Factor list (X, weight) of the lifted cocycle from the basepoint to p.

    Leaves separating the basepoint from N(p) contribute their full weight;
    inside the band of a leaf with parameter s that leaf contributes s times
    its weight.
    """
    f = frame if frame is not None else ct_frame(dom, p)
    x0 = dom.x0
    out = []
    band = f.index if f.kind == "band" else None
    tail = None
    for i, u in enumerate(dom.normals):
        sx = float(geo.mink_form(x0, u))
        sn = float(geo.mink_form(f.N, u))
        if i == band:
            nu = -np.sign(sx) * u
            tail = (geo.mink_sl2(nu), f.s * dom.weights[i])
            continue
        if np.sign(sx) != np.sign(sn) and sn != 0:
            out.append((sx / (sx - sn), geo.mink_sl2(np.sign(sn) * u), dom.weights[i]))
    out.sort(key=lambda t: t[0])
    fac = [(X, w) for _, X, w in out]
    if tail is not None and tail[1] > 0:
        fac.append(tail)
    return fac


def lifted_from_base(dom: RegularDomain, p, z, frame=None) -> np.ndarray:
    return _product(lifted_factors(dom, p, frame), z)


def lifted(dom: RegularDomain, p, q, kind: str = "hyperbolic"):
    """Lifted cocycle between two domain points.

    kind is "hyperbolic" (z = i), "ads" (pair for z = -1, 1) or a number z.
    """
    fp = lifted_factors(dom, p)
    fq = lifted_factors(dom, q)
    if kind == "ads":
        out = []
        for z in (-1.0, 1.0):
            out.append(np.linalg.inv(_product(fp, z)) @ _product(fq, z))
        return tuple(out)
    z = 1j if kind == "hyperbolic" else kind
    return np.linalg.inv(_product(fp, z)) @ _product(fq, z)


def stratum_cocycle(dom: RegularDomain, k: int, z) -> np.ndarray:
    """Cocycle from the basepoint to any point of stratum k."""
    F = dom.strata[k]
    if F.gate is None:
        return _product([], z)
    i, far = F.gate
    m = geo.project_to_geodesic(dom.x0, dom.normals[i])
    fac = []
    for c in lm.crossing_data(dom.lam, dom.x0, m):
        w = c.weight
        if c.index == i:
            w = dom.weights[i] if far else 0.0
        if w > 0:
            fac.append((c.generator, w))
    return _product(fac, z)
