"""Length spectra, Margulis invariants, spectral derivatives, areas and volumes."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import cocycles as cc
from . import geometry as geo
from . import laminations as lm
from .errors import BadRange, BranchAmbiguity, Elliptic, NotHyperbolic, NotInvariant


@dataclass(frozen=True)
class SpectrumEntry:
    ell: float
    em: float

    def as_dict(self):
        return {"ell": self.ell, "em": self.em}


def translation_length(A) -> float:
    A = geo.unimodular(np.asarray(A, dtype=float))
    tr = abs(float(np.trace(A)))
    if tr < 2 - 1e-12:
        raise Elliptic(f"|trace| = {tr} < 2")
    return 2.0 * float(np.arccosh(max(tr / 2, 1.0)))


def axis_normal(gamma) -> np.ndarray:
    """Unit spacelike vector v with gamma = +-exp(ell/2 * mink_sl2(v)).

    Accepts an SL(2,R) or SO(2,1) matrix.  Translation toward the attracting
    endpoint; so v is the normal whose positive side is on the left of the axis.
    """
    g = np.asarray(gamma, dtype=float)
    A = geo.so21_to_sl2(g) if g.shape == (3, 3) else geo.unimodular(g)
    _, Y = geo.mat_log_hyperbolic(A)
    return geo.sl2_mink(Y)


def margulis(gamma, tau) -> float:
    """<v, tau> for the linear part gamma and translation part tau."""
    return float(geo.mink_form(axis_normal(gamma), np.asarray(tau, dtype=float)))


def ds_spectrum(M, tol: float = 1e-12) -> SpectrumEntry:
    """(ell, M) with tr = +-2 ch(ell/2 + i M/2), ell >= 0, M in (-pi, pi]."""
    M = geo.unimodular(np.asarray(M, dtype=complex))
    tr = complex(np.trace(M))
    w = np.arccosh(tr / 2)
    if w.real < 0:
        w = -w
    # the sign of the trace is not defined on the projective class
    if w.imag > np.pi / 2:
        w -= 1j * np.pi
    elif w.imag < -np.pi / 2:
        w += 1j * np.pi
    ell, em = 2 * w.real, 2 * w.imag
    if abs(abs(em) - np.pi) < tol:
        raise BranchAmbiguity("imaginary part sits on the branch cut +-pi")
    return SpectrumEntry(float(ell), float(em))


def ads_spectrum(pair) -> SpectrumEntry:
    left, right = pair
    try:
        m = translation_length(left)
        n = translation_length(right)
    except Elliptic as exc:
        raise NotHyperbolic(str(exc)) from None
    if m == 0 or n == 0:
        raise NotHyperbolic("parabolic component")
    return SpectrumEntry(0.5 * (m + n), 0.5 * (n - m))


# ---------------------------------------------------------------------------
# derivatives along rays t * lambda


def _gamma_factors(lam, x0, A, check):
    g = geo.sl2_to_so21(A)
    if check and not lm.is_invariant(lam, g):
        raise NotInvariant("lamination is not invariant under gamma")
    y = g @ np.asarray(x0, dtype=float)
    return [(c.generator, c.weight) for c in lm.crossing_data(lam, x0, y)]


def flat_translation(lam, x0, gamma, check: bool = True) -> np.ndarray:
    """rho(gamma x0): weighted sum of leaf normals met on [x0, gamma x0]."""
    g = np.asarray(gamma, dtype=float)
    A = geo.so21_to_sl2(g) if g.shape == (3, 3) else g
    out = np.zeros(3)
    for X, w in _gamma_factors(lam, x0, A, check):
        out += w * geo.sl2_mink(X)
    return out


def spectral_derivative(lam, x0, gamma, kind: str = "deSitter", h: float = 1e-4,
                        check: bool = True):
    """Central differences at t = 0 of (ell, M) along t * lambda.

    kind "deSitter" uses the complex holonomy beta_{i t}(x0, gamma x0) gamma,
    kind "antiDeSitter" the pair (beta_{-t}, beta_{t}) times (gamma, gamma).
    check=False skips the invariance test; the first-order identity is
    algebraic in the crossing data and holds regardless.
    """
    g = np.asarray(gamma, dtype=float)
    A = geo.so21_to_sl2(g) if g.shape == (3, 3) else geo.unimodular(g)
    fac = _gamma_factors(lam, x0, A, check)

    def entry(t):
        if kind == "deSitter":
            return ds_spectrum(cc._product(fac, 1j * t) @ A)
        if kind == "antiDeSitter":
            return ads_spectrum((cc._product(fac, -t) @ A, cc._product(fac, t) @ A))
        raise ValueError(f"unknown kind {kind!r}")

    a, b = entry(h), entry(-h)
    return (a.ell - b.ell) / (2 * h), (a.em - b.em) / (2 * h)


# ---------------------------------------------------------------------------
# areas and volumes of level surfaces


def _check(kappa, b):
    if kappa not in (-1, 0, 1):
        raise ValueError("kappa must be -1, 0 or 1")
    if b < 0:
        raise BadRange("b must be non-negative")
    if kappa == -1 and b > np.pi / 2 + 1e-15:
        raise BadRange("b must not exceed pi/2 for kappa = -1")


def area(kappa: int, b: float, chi: float, ell: float) -> float:
    _check(kappa, b)
    if kappa == 0:
        return -2 * np.pi * b * b * chi + b * ell
    if kappa == -1:
        return -2 * np.pi * np.sin(b) ** 2 * chi + ell * np.sin(b) * np.cos(b)
    return -2 * np.pi * np.sinh(b) ** 2 * chi + ell * np.sinh(b) * np.cosh(b)


def volume(kappa: int, b: float, chi: float, ell: float) -> float:
    """Exact antiderivative of area in b, vanishing at b = 0."""
    _check(kappa, b)
    if kappa == 0:
        return -2 * np.pi * chi * b ** 3 / 3 + ell * b * b / 2
    if kappa == -1:
        return -2 * np.pi * chi * (2 * b - np.sin(2 * b)) / 4 + ell * np.sin(b) ** 2 / 2
    return -2 * np.pi * chi * (np.sinh(2 * b) / 4 - b / 2) + ell * np.sinh(b) ** 2 / 2
