"""Figures written next to CLI reports.  Uses the non-interactive Agg backend."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

# fixed metadata keeps repeated renders byte-identical
_META = {"Software": None}


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=100, metadata=_META)
    plt.close(fig)
    return str(path)


def _disk(ax):
    t = np.linspace(0, 2 * np.pi, 400)
    ax.plot(np.cos(t), np.sin(t), color="0.6", lw=0.8)
    ax.set_aspect("equal")
    ax.set_xlim(-1.05, 1.05)
    ax.set_ylim(-1.05, 1.05)


def leaves_on_disk(ax, dom):
    """Draw the leaves as chords of the Klein disk."""
    from . import geometry as geo
    for leaf in dom.lam.leaves:
        a, b = geo.endpoints(leaf.normal)
        ax.plot([np.cos(a), np.cos(b)], [np.sin(a), np.sin(b)], color="C3",
                lw=0.5 + 2 * min(leaf.weight, 2.0))


def level_surface(points, strata, path, dom=None, title="level surface"):
    """Gauss images of level-surface samples in the Klein disk, coloured by stratum.

    points is an (n, 3) array of hyperboloid points."""
    P = np.asarray(points, dtype=float).reshape(-1, 3)
    fig, ax = plt.subplots(figsize=(5, 5))
    _disk(ax)
    if dom is not None:
        leaves_on_disk(ax, dom)
    if len(P):
        ax.scatter(P[:, 1] / P[:, 0], P[:, 2] / P[:, 0], c=np.asarray(strata), s=6, cmap="viridis")
    ax.set_title(title)
    return _save(fig, path)


def tree(vertices, edges, path):
    """Singularity tree projected to its two space coordinates."""
    V = np.asarray(vertices, dtype=float).reshape(-1, 3)
    fig, ax = plt.subplots(figsize=(5, 5))
    for a, b, *_ in edges:
        ax.plot(V[[a, b], 1], V[[a, b], 2], color="k", lw=1)
    if len(V):
        ax.scatter(V[:, 1], V[:, 2], c="C0", s=18, zorder=3)
    ax.set_aspect("equal", adjustable="datalim")
    ax.set_xlabel("x1")
    ax.set_ylabel("x2")
    ax.set_title("initial singularity")
    return _save(fig, path)


def boundary_curve(samples, path):
    """Boundary curve of the anti de Sitter domain on the torus S1 x S1."""
    xl = np.array([s[0] for s in samples]) % (2 * np.pi)
    xr = np.array([s[1] for s in samples]) % (2 * np.pi)
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.scatter(xl, xr, s=4, c=[s[2] for s in samples], cmap="viridis")
    ax.set_xlim(0, 2 * np.pi)
    ax.set_ylim(0, 2 * np.pi)
    ax.set_aspect("equal")
    ax.set_xlabel("left")
    ax.set_ylabel("right")
    ax.set_title("boundary curve")
    return _save(fig, path)


def convergence(ns, series, path, title="approximation error"):
    """Log-log plot of each error series against n."""
    fig, ax = plt.subplots(figsize=(5, 4))
    for name, errs in sorted(series.items()):
        ax.loglog(ns, errs, marker="o", label=name)
    ax.set_xlabel("n")
    ax.set_ylabel("max error")
    ax.grid(which="both", ls="--", lw=0.5, color="0.8")
    ax.legend()
    ax.set_title(title)
    return _save(fig, path)


def checks(report, path):
    """Bar chart of each check's value over its bound (log scale)."""
    rows = [c for c in report["checks"] if c["relation"] == "<=" and c["bound"] > 0]
    fig, ax = plt.subplots(figsize=(6, 0.4 * max(len(rows), 1) + 1.2))
    if rows:
        ratio = [max(c["value"], 1e-18) / c["bound"] for c in rows]
        colors = ["C2" if c["passed"] else "C3" for c in rows]
        ax.barh(range(len(rows)), ratio, color=colors)
        ax.set_yticks(range(len(rows)))
        ax.set_yticklabels([c["name"] for c in rows], fontsize=7)
        ax.set_xscale("log")
        ax.axvline(1.0, color="k", lw=0.8)
    ax.set_xlabel("value / bound")
    ax.set_title(report["suite"])
    return _save(fig, path)


def volume_curve(kappa, chi, ell, bmax, path):
    from . import spectra
    b = np.linspace(0, bmax, 200)
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.plot(b, [spectra.area(kappa, x, chi, ell) for x in b], label="area")
    ax.plot(b, [spectra.volume(kappa, x, chi, ell) for x in b], label="volume")
    ax.set_xlabel("b")
    ax.legend()
    ax.set_title(f"kappa = {kappa}")
    return _save(fig, path)
