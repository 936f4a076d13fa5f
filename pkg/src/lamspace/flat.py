"""The flat regular domain determined by a finite lamination and a basepoint.

The complement of the leaves is a finite set of strata.  Each stratum F
carries the vector rho_F (sum of weighted normals of the leaves separating it
from the basepoint) and the domain is

    { a x + rho_F : x in F }  plus the bands  { a x + rho_- + s (rho_+ - rho_-) }

over the leaves.  Its initial singularity is the tree with vertices rho_F and
one edge per leaf.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from . import geometry as geo
from . import laminations as lm
from .errors import (BasepointOnLeaf, ImageOnLeaf, NotInSupport, NotInvariant,
                     OutsideDomain, QueryOnLeaf)

SIGN_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Stratum:
    signs: tuple          # sign of <x, u_i> on the stratum, one per leaf
    rho: np.ndarray
    vertices: tuple       # ideal vertices (angles) in the closure
    arcs: tuple           # ideal arcs (start, end) with end > start
    gate: tuple           # (leaf index, far side?) giving a way into the stratum, or None


@dataclass(frozen=True, eq=False)
class CTFrame:
    T: float
    N: np.ndarray
    r: np.ndarray
    kind: str             # "face", "band" or "ray"
    index: int            # stratum, leaf or support-boundary index
    s: float = 0.0        # band parameter (or ray length)

    def as_dict(self):
        d = {"T": float(self.T), "N": [float(v) for v in self.N], "r": [float(v) for v in self.r],
             "stratum": self.kind, "index": int(self.index)}
        if self.kind != "face":
            d["s"] = float(self.s)
        return d


@dataclass(frozen=True, eq=False)
class MinkIsom:
    linear: np.ndarray
    translation: np.ndarray

    def __call__(self, p):
        return self.linear @ np.asarray(p) + self.translation

    def __matmul__(self, other: "MinkIsom") -> "MinkIsom":
        return MinkIsom(self.linear @ other.linear, self.linear @ other.translation + self.translation)

    def inverse(self) -> "MinkIsom":
        Li = np.linalg.inv(self.linear)
        return MinkIsom(Li, -Li @ self.translation)


class RegularDomain:
    """Lamination plus basepoint, with every stratum precomputed."""

    def __init__(self, lam: lm.Lamination, basepoint):
        self.lam = lam
        self.x0 = np.asarray(basepoint, dtype=float)
        if abs(geo.mink_form(self.x0, self.x0) + 1) > 1e-9 or self.x0[0] <= 0:
            raise ValueError("basepoint is not a point of the hyperbolic plane")
        if not lm.in_support(lam, self.x0):
            raise NotInSupport("basepoint outside the support")
        self.normals = lam.normals
        self.weights = lam.weights
        s0 = self.normals @ (geo.ETA @ self.x0) if len(lam) else np.zeros(0)
        if np.any(np.abs(s0) < 1e-6):
            raise BasepointOnLeaf("basepoint within 1e-6 of a leaf")
        self.sign0 = tuple(int(v) for v in np.sign(s0))
        self._build()

    # -- construction ----------------------------------------------------

    def _rho_of_signs(self, sig):
        rho = np.zeros(3)
        for i, (a, b) in enumerate(zip(sig, self.sign0)):
            if a != b:
                rho += self.weights[i] * a * self.normals[i]
        return rho

    def _build(self):
        n = len(self.lam)
        sigs = {self.sign0: None}
        self.leaf_sides = []
        for i in range(n):
            m = geo.project_to_geodesic(self.x0, self.normals[i])
            base = [int(v) for v in np.sign(self.normals @ (geo.ETA @ m))]
            near = list(base)
            near[i] = self.sign0[i]
            far = list(base)
            far[i] = -self.sign0[i]
            near, far = tuple(near), tuple(far)
            sigs.setdefault(near, (i, False))
            sigs.setdefault(far, (i, True))
            self.leaf_sides.append((near, far))
        self.sig_index = {}
        strata = []
        cuts = []
        for u in self.normals:
            cuts.extend(geo.endpoints(u))
        for nb in self.lam.boundary:
            cuts.extend(geo.endpoints(nb))
        cuts = sorted(set(round(c, 15) for c in cuts))
        tables = None
        if cuts:
            k = len(cuts)
            spans = [(cuts[j], cuts[j + 1] if j + 1 < k else cuts[0] + geo.TWO_PI) for j in range(k)]
            spans = [(a, b) for a, b in spans if b - a > 1e-14]
            tables = (self._closure_table(cuts, 1e-9),
                      self._closure_table([0.5 * (a + b) for a, b in spans], 0.0), spans)
        for sig, gate in sigs.items():
            verts, arcs = self._ideal_boundary(sig, cuts, tables)
            self.sig_index[sig] = len(strata)
            strata.append(Stratum(sig, self._rho_of_signs(sig), tuple(verts), tuple(arcs), gate))
        self.strata = strata
        # bands: (minus stratum, plus stratum) per leaf
        self.bands = [(self.sig_index[a], self.sig_index[b]) for a, b in self.leaf_sides]
        # support boundary rays: stratum adjacent to each boundary geodesic
        self.rays = []
        for nb in self.lam.boundary:
            m = geo.project_to_geodesic(self.x0, nb)
            sig = tuple(int(v) for v in np.sign(self.normals @ (geo.ETA @ m))) if n else ()
            self.rays.append((self.sig_index.get(sig, 0), -nb))

    def _closure_table(self, thetas, tol):
        """Boolean rows per angle: per-leaf pairing sign data and support flag."""
        pts = np.array([geo.ideal_point(t) for t in thetas])
        vals = pts @ geo.ETA @ self.normals.T if len(self.normals) else np.zeros((len(pts), 0))
        sup = np.array([lm.in_support(self.lam, v, strict=False, tol=tol) for v in pts], dtype=bool)
        return vals, sup

    def _ideal_boundary(self, sig, cuts, tables):
        if not cuts:
            return [], [(0.0, geo.TWO_PI)]
        (cv, cs), (mv, ms), mids = tables
        sg = np.asarray(sig, dtype=float)
        vok = cs & np.all(cv * sg >= -1e-9, axis=1) if len(sg) else cs
        verts = [c for c, ok in zip(cuts, vok) if ok]
        aok = ms & np.all(mv * sg >= 0.0, axis=1) if len(sg) else ms
        arcs = [ab for ab, ok in zip(mids, aok) if ok]
        return verts, arcs

    # -- lookups ---------------------------------------------------------

    def signs(self, x, tol=SIGN_TOL):
        if not len(self.normals):
            return ()
        vals = self.normals @ (geo.ETA @ np.asarray(x, dtype=float))
        on = np.flatnonzero(np.abs(vals) <= tol)
        if len(on):
            raise QueryOnLeaf(f"point lies on leaf {int(on[0])}")
        return tuple(int(v) for v in np.sign(vals))

    def stratum_of(self, x) -> int:
        return self.sig_index[self.signs(x)]

    def leaves_on(self, x, tol=1e-9):
        if not len(self.normals):
            return []
        vals = self.normals @ (geo.ETA @ np.asarray(x, dtype=float))
        return [int(i) for i in np.flatnonzero(np.abs(vals) <= tol)]

    def scaled(self, t: float) -> "RegularDomain":
        return RegularDomain(self.lam.scaled(t), self.x0)


# ---------------------------------------------------------------------------
# rho and the forward parametrisation


def rho(dom: RegularDomain, x) -> np.ndarray:
    return dom.strata[dom.stratum_of(x)].rho.copy()


def rho_pm(dom: RegularDomain, leaf: int):
    a, b = dom.bands[leaf]
    return dom.strata[a].rho.copy(), dom.strata[b].rho.copy()


def leaf_point(dom: RegularDomain, leaf: int, t: float):
    return geo.geodesic_point(dom.normals[leaf], t)


def embed(dom: RegularDomain, x, a: float) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if not lm.in_support(dom.lam, x):
        raise NotInSupport("point outside the support")
    return a * x + rho(dom, x)


def embed_band(dom: RegularDomain, leaf: int, x, a: float, s: float) -> np.ndarray:
    """Point a x + rho_- + s (rho_+ - rho_-) of the band over the leaf.

    x must lie on the leaf.
    """
    x = np.asarray(x, dtype=float)
    if abs(geo.mink_form(x, dom.normals[leaf])) > 1e-9:
        raise ValueError("x is not on the leaf")
    if not 0.0 <= s <= 1.0:
        raise ValueError("band parameter outside [0, 1]")
    lo, hi = rho_pm(dom, leaf)
    return a * x + lo + s * (hi - lo)


# ---------------------------------------------------------------------------
# cosmological time


def _max_on_arc(q, a, b):
    """max over theta in [a, b] of <q, (1, cos, sin)>."""
    f = lambda t: -q[0] + q[1] * np.cos(t) + q[2] * np.sin(t)
    best = max(f(a), f(b))
    c = np.arctan2(q[2], q[1])
    # critical point of the sinusoid, shifted into [a, a + 2pi)
    c = a + np.mod(c - a, geo.TWO_PI)
    if c <= b:
        best = max(best, f(c))
    return best


def support_gap(dom: RegularDomain, p) -> float:
    """max over strata and ideal boundary points of <p - rho_F, n>; negative inside."""
    p = np.asarray(p, dtype=float)
    worst = -np.inf
    for F in dom.strata:
        q = p - F.rho
        for v in F.vertices:
            worst = max(worst, geo.mink_form(q, geo.ideal_point(v)))
        for a, b in F.arcs:
            worst = max(worst, _max_on_arc(q, a, b))
    return float(worst)


def contains(dom: RegularDomain, p) -> bool:
    return support_gap(dom, p) < 0


def _future_length(q):
    n = geo.mink_form(q, q)
    if n < 0 and q[0] > 0:
        return np.sqrt(-n)
    return -np.inf


def ct_frame(dom: RegularDomain, p, check: bool = True) -> CTFrame:
    """Cosmological time, Gauss map and retraction of p.

    T is the largest Lorentzian length |p - r| over points r of the initial
    singularity with p - r future timelike; the maximiser is r(p).
    """
    p = np.asarray(p, dtype=float)
    if check and not contains(dom, p):
        raise OutsideDomain(f"point {p.tolist()} is not in the domain")
    best = (-np.inf, None)
    # bands first so that ties go to the band
    for i, (a, b) in enumerate(dom.bands):
        lo, w = dom.strata[a].rho, dom.weights[i]
        u = -dom.sign0[i] * dom.normals[i]
        s = float(geo.mink_form(p - lo, u) / w)
        if not -1e-13 <= s <= 1 + 1e-13:
            continue
        s = min(max(s, 0.0), 1.0)
        r = lo + (s * w) * u
        T = _future_length(p - r)
        if T > best[0] + 1e-13:
            best = (T, ("band", i, s, r))
    for k, F in enumerate(dom.strata):
        T = _future_length(p - F.rho)
        if T > best[0] + 1e-13:
            best = (T, ("face", k, 0.0, F.rho))
    for j, (k, out) in enumerate(dom.rays):
        lo = dom.strata[k].rho
        t = max(0.0, float(geo.mink_form(p - lo, out)))
        r = lo + t * out
        T = _future_length(p - r)
        if T > best[0] + 1e-13:
            best = (T, ("ray", j, t, r))
    T, (kind, idx, s, r) = best
    if not np.isfinite(T):
        raise OutsideDomain("no point of the singularity lies in the past of p")
    N = (p - r) / T
    return CTFrame(float(T), N, np.array(r, dtype=float), kind, idx, s)


def time_gradient(dom: RegularDomain, p) -> np.ndarray:
    """Vector g with dT(w) = <g, w>."""
    f = ct_frame(dom, p)
    return -(p - f.r) / f.T


# ---------------------------------------------------------------------------
# the initial singularity


@dataclass(frozen=True, eq=False)
class SingularityTree:
    vertices: np.ndarray
    edges: tuple        # (vertex a, vertex b, leaf index, length)

    def vertex_distance(self, i: int, j: int) -> float:
        adj = {k: [] for k in range(len(self.vertices))}
        for a, b, _, w in self.edges:
            adj[a].append((b, w))
            adj[b].append((a, w))
        dist = {i: 0.0}
        todo = deque([i])
        while todo:
            v = todo.popleft()
            for nb, w in adj[v]:
                if nb not in dist:
                    dist[nb] = dist[v] + w
                    todo.append(nb)
        return dist[j]

    def locate(self, r, tol: float = 1e-9):
        """(edge index or None, vertex or parameter) for a point of the tree."""
        r = np.asarray(r, dtype=float)
        for k, v in enumerate(self.vertices):
            if np.max(np.abs(r - v)) < tol:
                return None, k
        for e, (a, b, _, w) in enumerate(self.edges):
            d = self.vertices[b] - self.vertices[a]
            s = float(np.dot(r - self.vertices[a], d) / np.dot(d, d))
            if 0 <= s <= 1 and np.max(np.abs(self.vertices[a] + s * d - r)) < tol:
                return e, s
        raise ValueError("point is not on the singularity tree")


def singularity_tree(dom: RegularDomain) -> SingularityTree:
    verts = np.array([F.rho for F in dom.strata])
    edges = tuple((a, b, i, float(dom.weights[i])) for i, (a, b) in enumerate(dom.bands))
    return SingularityTree(verts, edges)


def delta(tree: SingularityTree, r1, r2) -> float:
    """Path distance on the tree between two of its points."""
    def ends(loc):
        e, v = loc
        if e is None:
            return e, [(v, 0.0)]
        a, b, _, w = tree.edges[e]
        return e, [(a, v * w), (b, (1 - v) * w)]

    l1, l2 = tree.locate(r1), tree.locate(r2)
    e1, ends1 = ends(l1)
    e2, ends2 = ends(l2)
    if e1 is not None and e1 == e2:
        return abs(l1[1] - l2[1]) * tree.edges[e1][3]
    return min(d1 + tree.vertex_distance(v1, v2) + d2 for v1, d1 in ends1 for v2, d2 in ends2)


# ---------------------------------------------------------------------------
# holonomy


def as_so21(gamma):
    g = np.asarray(gamma, dtype=float)
    return geo.sl2_to_so21(g) if g.shape == (2, 2) else g


def flat_holonomy(dom: RegularDomain, gamma) -> MinkIsom:
    g = as_so21(gamma)
    if not lm.is_invariant(dom.lam, g):
        raise NotInvariant("lamination is not invariant under gamma")
    y = g @ dom.x0
    if dom.leaves_on(y, tol=1e-12):
        raise ImageOnLeaf("gamma moves the basepoint onto a leaf")
    return MinkIsom(g, rho(dom, y))


# ---------------------------------------------------------------------------
# the orthogonal family and its limit domain


def family_parameter(fam: lm.ParametricFamily, x) -> float:
    """Parameter s of the family leaf through x."""
    m, e = geo.geodesic_frame(fam.base)
    return float(np.arctanh(-geo.mink_form(x, e) / geo.mink_form(x, m)))


def family_rho(fam: lm.ParametricFamily, x0, x) -> np.ndarray:
    """Limit of rho for the continuous family: integral of the leaf normals.

    Only the constant-density case has the closed form used here.
    """
    if len(fam.values) != 1:
        raise ValueError("closed form needs a single density value")
    m, e = geo.geodesic_frame(fam.base)

    def F(s):
        s = min(max(s, fam.s0), fam.s1)
        return np.cosh(s) * m + np.sinh(s) * e

    return float(fam.values[0]) * (F(family_parameter(fam, x)) - F(family_parameter(fam, x0)))
