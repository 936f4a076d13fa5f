"""Seeded samplers of domain points, shared by the CLI verify suites and tests.

All randomness comes from ``numpy.random.Generator`` objects; the CLI builds
them with ``numpy.random.default_rng(seed)`` (the PCG64 bit generator).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import geometry as geo
from . import laminations as lm
from .flat import RegularDomain, embed, embed_band, rho, rho_pm

T_RANGES = {
    "flat": (0.2, 3.0),
    "hyperbolic": (1.1, 3.0),
    "deSitter": (0.1, 0.9),
    "antiDeSitter": (0.1, 3.0),
}


@dataclass(frozen=True, eq=False)
class Sample:
    p: np.ndarray
    T: float
    N: np.ndarray
    r: np.ndarray
    kind: str
    index: int
    s: float


def rng_from_seed(seed: int):
    return np.random.default_rng(seed)


def _leaf_range(dom: RegularDomain, i: int, radius: float):
    """Arc-length window along leaf i staying within radius of (1,0,0)."""
    m, _ = geo.geodesic_frame(dom.normals[i])
    d = np.arccosh(max(m[0], 1.0))
    if d >= radius:
        return None
    return np.arccosh(np.cosh(radius) / np.cosh(d))


def sample_face(dom: RegularDomain, rng, T_range, radius=1.5, margin=0.0):
    """Random face point whose Gauss image is at least margin/T from every leaf."""
    for _ in range(10000):
        x = lm.random_h2_point(rng, radius)
        if not lm.in_support(dom.lam, x):
            continue
        a = float(rng.uniform(*T_range))
        c = np.abs(dom.normals @ (geo.ETA @ x)) if len(dom.normals) else np.array([np.inf])
        if np.min(c) < 1e-9 or a * np.arcsinh(np.min(c)) < margin:
            continue
        k = dom.stratum_of(x)
        return Sample(embed(dom, x, a), a, x, rho(dom, x), "face", k, 0.0)
    raise RuntimeError("no face sample found")


def sample_band(dom: RegularDomain, rng, T_range, radius=1.5, margin=0.0):
    leaves = [i for i in range(len(dom.normals)) if _leaf_range(dom, i, radius) is not None]
    if not leaves:
        return None
    i = int(rng.choice(leaves))
    tmax = _leaf_range(dom, i, radius)
    x = geo.geodesic_point(dom.normals[i], rng.uniform(-tmax, tmax))
    a = float(rng.uniform(*T_range))
    s = float(rng.uniform(margin, 1 - margin))
    lo, hi = rho_pm(dom, i)
    return Sample(embed_band(dom, i, x, a, s), a, x, lo + s * (hi - lo), "band", i, s)


def sample_points(dom: RegularDomain, rng, n: int, T_range=(0.2, 3.0), radius=1.5,
                  band_fraction=0.3, margin=0.0):
    out = []
    while len(out) < n:
        if len(dom.normals) and rng.uniform() < band_fraction:
            smp = sample_band(dom, rng, T_range, radius, margin)
            if smp is None:
                smp = sample_face(dom, rng, T_range, radius, margin)
        else:
            smp = sample_face(dom, rng, T_range, radius, margin)
        out.append(smp)
    return out


def random_domain(rng, max_leaves: int = 8, weight_range=(0.1, 1.0)) -> RegularDomain:
    n = int(rng.integers(0, max_leaves + 1))
    lam = lm.random_lamination(rng, n, weight_range)
    return RegularDomain(lam, lm.random_basepoint(rng, lam))
