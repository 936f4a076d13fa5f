"""Finite measured geodesic laminations on straight convex subsets of the
hyperbolic plane.

A leaf is stored by its unit normal u; the geodesic is ``u^perp`` and the
orientation of u only fixes which side is called positive.  A support is
either the whole plane (no boundary) or an intersection of closed
half-planes ``<x, n_b> >= 0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import geometry as geo
from .errors import BasepointOnLeaf

SEP_TOL = 1e-9
ON_LEAF_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Leaf:
    normal: np.ndarray
    weight: float

    @property
    def endpoints(self):
        return geo.endpoints(self.normal)


def make_leaf(theta1: float, theta2: float, weight: float) -> Leaf:
    return Leaf(geo.geodesic(theta1, theta2), float(weight))


@dataclass(frozen=True, eq=False)
class Lamination:
    """Weighted leaves plus the boundary normals of the support."""

    leaves: tuple = ()
    boundary: tuple = ()

    @property
    def normals(self) -> np.ndarray:
        if not self.leaves:
            return np.zeros((0, 3))
        return np.array([l.normal for l in self.leaves])

    @property
    def weights(self) -> np.ndarray:
        return np.array([l.weight for l in self.leaves], dtype=float)

    def __len__(self):
        return len(self.leaves)

    def scaled(self, t: float) -> "Lamination":
        return Lamination(tuple(Leaf(l.normal, t * l.weight) for l in self.leaves), self.boundary)


def lamination(leaves=(), boundary=()) -> Lamination:
    """Build from ``[(theta1, theta2, weight), ...]`` and ``[(theta1, theta2), ...]``."""
    ls = tuple(make_leaf(a, b, w) for a, b, w in leaves)
    bs = tuple(geo.geodesic(a, b) for a, b in boundary)
    return Lamination(ls, bs)


# ---------------------------------------------------------------------------
# validation


@dataclass
class Diagnostics:
    ok: bool
    failures: list = field(default_factory=list)
    min_separation: float = np.inf
    asymptotic_pairs: list = field(default_factory=list)

    def as_dict(self):
        return {
            "ok": self.ok,
            "failures": list(self.failures),
            "min_separation": None if np.isinf(self.min_separation) else float(self.min_separation),
            "asymptotic_pairs": [list(p) for p in self.asymptotic_pairs],
        }


def in_support(lam: Lamination, x, strict: bool = True, tol: float = 0.0) -> bool:
    for n in lam.boundary:
        s = geo.mink_form(x, n)
        if s < -tol or (strict and s <= tol):
            return False
    return True


def validate(lam: Lamination) -> Diagnostics:
    """Check weights, pairwise disjointness and support containment.

    Never raises; every failed check is listed.
    """
    failures = []
    asym = []
    min_sep = np.inf
    n = len(lam.leaves)
    for i, leaf in enumerate(lam.leaves):
        if not (np.isfinite(leaf.weight) and leaf.weight > 0):
            failures.append(f"leaf {i}: weight {leaf.weight} is not positive and finite")
        q = geo.mink_form(leaf.normal, leaf.normal)
        if abs(q - 1) > 1e-9:
            failures.append(f"leaf {i}: normal is not unit spacelike")
    normals = lam.normals
    for i in range(n):
        for j in range(i + 1, n):
            c = abs(geo.mink_form(normals[i], normals[j]))
            min_sep = min(min_sep, c)
            if c < 1 - SEP_TOL:
                failures.append(f"leaves {i} and {j} intersect")
            elif c <= 1 + SEP_TOL:
                if _same_geodesic(normals[i], normals[j]):
                    failures.append(f"leaves {i} and {j} coincide")
                else:
                    asym.append((i, j))
    for i, leaf in enumerate(lam.leaves):
        for t in leaf.endpoints:
            if not in_support(lam, geo.ideal_point(t), strict=False, tol=1e-9):
                failures.append(f"leaf {i} leaves the support")
                break
    for b, nb in enumerate(lam.boundary):
        for i in range(n):
            if _same_geodesic(nb, normals[i]):
                failures.append(f"leaf {i} lies on support boundary {b}")
    return Diagnostics(not failures, failures, min_sep, asym)


def _same_geodesic(u, v, tol=1e-9) -> bool:
    return min(np.max(np.abs(u - v)), np.max(np.abs(u + v))) < tol


# ---------------------------------------------------------------------------
# crossings


@dataclass(frozen=True, eq=False)
class Crossing:
    index: int
    generator: np.ndarray
    weight: float
    t: float
    toward: np.ndarray  # unit normal of the leaf pointing to y's side


def crossing_data(lam: Lamination, x, y, tol: float = ON_LEAF_TOL) -> list:
    """Leaves met by the segment [x, y], in order from x.

    The generator of each leaf translates along it and is the image under
    the inverse of sl2_mink of the normal pointing toward y.  A segment end
    lying on a leaf contributes half the weight of that leaf.
    """
    out = []
    for i, leaf in enumerate(lam.leaves):
        u = leaf.normal
        sx = float(geo.mink_form(x, u))
        sy = float(geo.mink_form(y, u))
        zx = abs(sx) <= tol
        zy = abs(sy) <= tol
        if zx and zy:
            raise BasepointOnLeaf(f"both segment ends lie on leaf {i}")
        if zx:
            nu = np.sign(sy) * u
            out.append(Crossing(i, geo.mink_sl2(nu), 0.5 * leaf.weight, 0.0, nu))
        elif zy:
            nu = -np.sign(sx) * u
            out.append(Crossing(i, geo.mink_sl2(nu), 0.5 * leaf.weight, 1.0, nu))
        elif np.sign(sx) != np.sign(sy):
            nu = np.sign(sy) * u
            out.append(Crossing(i, geo.mink_sl2(nu), leaf.weight, sx / (sx - sy), nu))
    out.sort(key=lambda c: c.t)
    return out


def total_mass(lam: Lamination, x, y) -> float:
    return float(sum(c.weight for c in crossing_data(lam, x, y)))


# ---------------------------------------------------------------------------
# push-forward and invariance


def push(lam: Lamination, g) -> Lamination:
    g = np.asarray(g, dtype=float)
    leaves = tuple(Leaf(g @ l.normal, l.weight) for l in lam.leaves)
    bnd = tuple(g @ n for n in lam.boundary)
    return Lamination(leaves, bnd)


def same_lamination(a: Lamination, b: Lamination, tol: float = 1e-9) -> bool:
    if len(a.leaves) != len(b.leaves) or len(a.boundary) != len(b.boundary):
        return False
    used = set()
    for la in a.leaves:
        hit = None
        for j, lb in enumerate(b.leaves):
            if j not in used and _same_geodesic(la.normal, lb.normal, tol) and abs(la.weight - lb.weight) <= tol:
                hit = j
                break
        if hit is None:
            return False
        used.add(hit)
    used = set()
    for na in a.boundary:
        hit = None
        for j, nb in enumerate(b.boundary):
            # boundary sides matter, so compare oriented normals
            if j not in used and np.max(np.abs(na - nb)) < tol:
                hit = j
                break
        if hit is None:
            return False
        used.add(hit)
    return True


def is_invariant(lam: Lamination, g, tol: float = 1e-9) -> bool:
    return same_lamination(push(lam, g), lam, tol)


# ---------------------------------------------------------------------------
# one-parameter families of leaves orthogonal to a geodesic


@dataclass(frozen=True, eq=False)
class ParametricFamily:
    """Leaves orthogonal to a base geodesic, with piecewise constant density.

    ``knots`` runs from s0 to s1 and ``values[k]`` is the density on
    ``[knots[k], knots[k+1]]``.
    """

    base: np.ndarray
    knots: np.ndarray
    values: np.ndarray

    @property
    def s0(self):
        return float(self.knots[0])

    @property
    def s1(self):
        return float(self.knots[-1])

    def point(self, s):
        m, e = geo.geodesic_frame(self.base)
        return np.cosh(s) * m + np.sinh(s) * e

    def leaf_normal(self, s):
        """Normal of the leaf through point(s), pointing toward larger s."""
        m, e = geo.geodesic_frame(self.base)
        return np.sinh(s) * m + np.cosh(s) * e

    def mass(self, a: float, b: float) -> float:
        """Integral of the density over [a, b]."""
        lo, hi = max(a, self.s0), min(b, self.s1)
        if hi <= lo:
            return 0.0
        k = self.knots
        left = np.clip(k[:-1], lo, hi)
        right = np.clip(k[1:], lo, hi)
        return float(np.sum(self.values * (right - left)))


def lebesgue_family(base, s0: float = 0.0, s1: float = 1.0, density: float = 1.0) -> ParametricFamily:
    return ParametricFamily(np.asarray(base, dtype=float), np.array([s0, s1], dtype=float),
                            np.array([density], dtype=float))


def approximate(fam: ParametricFamily, n: int) -> Lamination:
    """Standard finite approximation with n equal cells.

    Each cell of positive mass becomes its midpoint leaf carrying the mass.
    """
    if n < 1:
        raise ValueError("n must be positive")
    edges = np.linspace(fam.s0, fam.s1, n + 1)
    leaves = []
    for a, b in zip(edges[:-1], edges[1:]):
        w = fam.mass(a, b)
        if w > 0:
            leaves.append(Leaf(fam.leaf_normal(0.5 * (a + b)), w))
    return Lamination(tuple(leaves), ())


# ---------------------------------------------------------------------------
# random laminations


def random_lamination(rng, n_leaves: int, weight_range=(0.1, 1.0), min_sep: float = 1e-3,
                      max_tries: int = 10000) -> Lamination:
    """Rejection-sample pairwise disjoint leaves with uniform endpoints."""
    leaves = []
    tries = 0
    while len(leaves) < n_leaves and tries < max_tries:
        tries += 1
        a, b = rng.uniform(0.0, geo.TWO_PI, 2)
        if abs(np.sin(0.5 * (a - b))) < 0.05:
            continue
        u = geo.geodesic(a, b)
        if all(abs(geo.mink_form(u, l.normal)) >= 1 + min_sep for l in leaves):
            leaves.append(Leaf(u, float(rng.uniform(*weight_range))))
    return Lamination(tuple(leaves), ())


def random_h2_point(rng, radius: float = 2.0):
    """Point at distance <= radius from (1,0,0), uniform in area."""
    r = np.arccosh(1 + rng.uniform() * (np.cosh(radius) - 1))
    return geo.h2_from_polar(r, rng.uniform(0, geo.TWO_PI))


def random_basepoint(rng, lam: Lamination, radius: float = 1.0, margin: float = 1e-3):
    for _ in range(10000):
        x = random_h2_point(rng, radius)
        if in_support(lam, x) and all(abs(geo.mink_form(x, l.normal)) >= margin for l in lam.leaves):
            return x
    raise RuntimeError("could not place a basepoint off the leaves")
