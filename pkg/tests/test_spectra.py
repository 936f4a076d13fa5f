"""Length spectra, Margulis invariants and level-surface volumes."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from lamspace import flat
from lamspace import geometry as geo
from lamspace import laminations as lm
from lamspace import spectra as sp
from lamspace.errors import BadRange, Elliptic, NotHyperbolic


def test_translation_length_examples():
    assert sp.translation_length(np.diag([np.e, 1 / np.e])) == pytest.approx(2.0)
    assert sp.translation_length([[1.0, 1.0], [0.0, 1.0]]) == 0.0
    with pytest.raises(Elliptic):
        sp.translation_length(geo.so21_to_sl2(geo.rotation(0.5)))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-2, 2), min_size=6, max_size=6))
def test_translation_length_conjugation_invariant(c):
    A = geo.mat_exp(geo.mink_sl2([0.2 * c[0], c[1], c[2]]))
    if abs(np.trace(A)) < 2.01:
        return
    g = geo.mat_exp(geo.mink_sl2(c[3:]))
    assert sp.translation_length(g @ A @ np.linalg.inv(g)) == pytest.approx(sp.translation_length(A), abs=1e-8)


def test_margulis_examples():
    g = geo.boost(1.0, axis=1)
    v = sp.axis_normal(g)
    assert abs(abs(v[2]) - 1) < 1e-12
    tau = np.array([0.2, 0.0, 0.7])
    assert sp.margulis(g, tau) == pytest.approx(0.7 * np.sign(v[2]))
    assert sp.margulis(g, np.zeros(3)) == 0.0


def test_margulis_single_leaf(one_leaf):
    """One crossing of weight a: the translation is a u, so the invariant is a <v, u>."""
    A = geo.mat_exp(geo.mink_sl2([0.2, -2.5, 0.3]))
    g = geo.sl2_to_so21(A)
    (c,) = lm.crossing_data(one_leaf.lam, one_leaf.x0, g @ one_leaf.x0)
    tau = sp.flat_translation(one_leaf.lam, one_leaf.x0, A, check=False)
    np.testing.assert_allclose(tau, c.weight * c.toward, atol=1e-14)
    v = sp.axis_normal(A)
    assert sp.margulis(A, tau) == pytest.approx(c.weight * geo.mink_form(v, c.toward))
    # the pi-rotation holonomy of the axis lamination translates by the weight
    R = geo.pi_rotation(geo.geodesic_point(one_leaf.normals[0], 0.3))
    h = flat.flat_holonomy(one_leaf, R)
    assert np.linalg.norm(h.translation) == pytest.approx(one_leaf.weights[0])


def test_ds_spectrum_examples():
    w = 0.5 + 0.3j
    M = np.diag([np.exp(w), np.exp(-w)])
    e = sp.ds_spectrum(M)
    assert (e.ell, e.em) == pytest.approx((1.0, 0.6))
    e = sp.ds_spectrum(np.diag([np.e, 1 / np.e]).astype(complex))
    assert (e.ell, e.em) == pytest.approx((2.0, 0.0))
    g = np.array([[1, 2j], [0.5, 1 + 1j]])
    g = g / np.sqrt(np.linalg.det(g))
    f = sp.ds_spectrum(g @ M @ np.linalg.inv(g))
    assert (f.ell, f.em) == pytest.approx((1.0, 0.6))


def test_ads_spectrum_examples():
    L = np.diag([np.exp(1.0), np.exp(-1.0)])
    R = np.diag([np.exp(1.5), np.exp(-1.5)])
    e = sp.ads_spectrum((L, R))
    assert (e.ell, e.em) == pytest.approx((2.5, 0.5))
    e = sp.ads_spectrum((R, L))
    assert (e.ell, e.em) == pytest.approx((2.5, -0.5))
    assert sp.ads_spectrum((L, L)).em == 0
    with pytest.raises(NotHyperbolic):
        sp.ads_spectrum((L, [[1.0, 1.0], [0.0, 1.0]]))


def test_spectral_derivative_trivial(empty_dom, one_leaf):
    A = geo.so21_to_sl2(geo.boost(0.9))
    assert sp.spectral_derivative(empty_dom.lam, empty_dom.x0, A) == (0.0, 0.0)
    # the axis lamination is invariant and gamma x0 crosses nothing
    assert sp.spectral_derivative(one_leaf.lam, one_leaf.x0, A) == pytest.approx((0.0, 0.0))


def test_spectral_derivative_one_crossing(one_leaf):
    """A hyperbolic element moving x0 across the leaf: dM/dt is the Margulis invariant."""
    A = geo.mat_exp(geo.mink_sl2([0.2, -2.5, 0.3]))
    g = geo.sl2_to_so21(A)
    assert len(lm.crossing_data(one_leaf.lam, one_leaf.x0, g @ one_leaf.x0)) == 1
    m0 = sp.margulis(A, sp.flat_translation(one_leaf.lam, one_leaf.x0, A, check=False))
    assert abs(m0) > 0.05
    for kind in ("deSitter", "antiDeSitter"):
        dl, dm = sp.spectral_derivative(one_leaf.lam, one_leaf.x0, A, kind, check=False)
        assert dl == pytest.approx(0.0, abs=1e-6)
        assert dm == pytest.approx(m0, abs=1e-6)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2 ** 31))
def test_spectral_derivative_is_margulis(seed):
    rng = np.random.default_rng(seed)
    lam = lm.random_lamination(rng, 5)
    x0 = lm.random_basepoint(rng, lam)
    A = geo.mat_exp(geo.mink_sl2(rng.normal(size=3) * np.array([0.3, 1.5, 1.5])))
    if abs(np.trace(A)) < 2.2:
        return
    m0 = sp.margulis(A, sp.flat_translation(lam, x0, A, check=False))
    for kind in ("deSitter", "antiDeSitter"):
        dl, dm = sp.spectral_derivative(lam, x0, A, kind, check=False)
        assert dl == pytest.approx(0.0, abs=1e-5)
        assert dm == pytest.approx(m0, abs=1e-5)


def test_volume_examples():
    assert sp.area(0, 1.0, -2.0, 3.0) == pytest.approx(4 * np.pi + 3)
    assert sp.volume(0, 1.0, -2.0, 3.0) == pytest.approx(4 * np.pi / 3 + 1.5)
    assert sp.area(-1, np.pi / 2, -2.0, 0.0) == pytest.approx(4 * np.pi)
    for kappa in (-1, 0, 1):
        assert sp.area(kappa, 0.0, -2.0, 1.0) == 0.0
        assert sp.volume(kappa, 0.0, -2.0, 1.0) == 0.0
    with pytest.raises(BadRange):
        sp.area(-1, 2.0, -2.0, 0.0)
    with pytest.raises(BadRange):
        sp.volume(1, -0.1, -2.0, 0.0)


@pytest.mark.parametrize("kappa, b", [(-1, 1.2), (0, 1.7), (1, 0.9)])
@pytest.mark.parametrize("chi, ell", [(-2.0, 0.0), (-6.0, 2.5)])
def test_volume_against_quad(kappa, b, chi, ell):
    ref, _ = quad(lambda t: sp.area(kappa, t, chi, ell), 0.0, b, epsabs=1e-13, epsrel=1e-13)
    assert sp.volume(kappa, b, chi, ell) == pytest.approx(ref, rel=1e-10)
