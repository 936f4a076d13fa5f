"""Anti de Sitter bending, earthquakes, boundary curves, holonomy, past frames."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lamspace import ads
from lamspace import cocycles as cc
from lamspace import flat
from lamspace import geometry as geo
from lamspace import laminations as lm
from lamspace import sampling
from lamspace.errors import NotInvariant


def test_ads_bend_trivial(empty_dom, one_leaf):
    x = geo.h2_from_polar(0.8, 2.0)
    np.testing.assert_allclose(ads.ads_bend(empty_dom, x), geo.pi_rotation(x), atol=1e-14)
    # same side as the basepoint: nothing crossed
    y = np.array([np.cosh(0.3), 0.0, -np.sinh(0.3)])
    np.testing.assert_allclose(ads.ads_bend(one_leaf, y), geo.pi_rotation(y), atol=1e-14)


def test_ads_bend_lands_in_ads(five_leaves, rng):
    for _ in range(30):
        x = lm.random_h2_point(rng, 2.0)
        A = ads.ads_bend(five_leaves, x)
        assert np.linalg.det(A) == pytest.approx(1.0)


def test_ads_bend_isometric_across_band(one_leaf):
    """A polyline crossing the leaf keeps its length (timelike distances on P(Id))."""
    a = geo.h2_from_polar(1.0, -np.pi / 2 + 0.2)
    b = geo.h2_from_polar(1.0, np.pi / 2 - 0.1)
    pts = []
    for t in np.linspace(0, 1, 1001):
        q = (1 - t) * a + t * b
        pts.append(q / np.sqrt(-geo.mink_form(q, q)))
    h2 = sum(geo.h2_distance(p, q) for p, q in zip(pts, pts[1:]))
    img = [ads.ads_bend(one_leaf, p) for p in pts]
    # spacelike separation: |tr(X^-1 Y)| = 2 ch d
    seg = [np.arccosh(max(1.0, abs(np.trace(np.linalg.inv(P) @ Q)) / 2)) for P, Q in zip(img, img[1:])]
    assert sum(seg) / h2 == pytest.approx(1.0, abs=1e-4)


def test_earthquake_examples(empty_dom, one_leaf):
    x = geo.h2_from_polar(0.8, 2.0)
    np.testing.assert_allclose(ads.earthquake(empty_dom, "left", x), x)
    y = np.array([np.cosh(1), 0, np.sinh(1)])
    a = one_leaf.weights[0]
    X = geo.mink_sl2(lm.crossing_data(one_leaf.lam, one_leaf.x0, y)[0].toward)
    np.testing.assert_allclose(ads.earthquake(one_leaf, "left", y),
                               geo.sl2_to_so21(geo.mat_exp(0.5 * a * X)) @ y, atol=1e-14)
    np.testing.assert_allclose(ads.earthquake(one_leaf, "right", y),
                               geo.sl2_to_so21(geo.mat_exp(-0.5 * a * X)) @ y, atol=1e-14)
    with pytest.raises(ValueError):
        ads.earthquake(one_leaf, "up", y)


def test_earthquake_injective(five_leaves, rng):
    pts = [lm.random_h2_point(rng, 2.0) for _ in range(1000)]
    img = np.array([ads.earthquake(five_leaves, "left", p) for p in pts])
    d = np.linalg.norm(img[:, None, :] - img[None, :, :], axis=-1)
    np.fill_diagonal(d, np.inf)
    assert d.min() > 1e-9


def test_earthquake_inverse(empty_dom, one_leaf, five_leaves, rng):
    x, y = geo.h2_from_polar(1, 0.5), geo.h2_from_polar(1, 4.0)
    assert ads.earthquake_inverse_check(empty_dom, x, y) == 0
    assert ads.earthquake_inverse_check(one_leaf, one_leaf.x0, np.array([np.cosh(1), 0, np.sinh(1)])) < 1e-12
    for _ in range(20):
        x, y = lm.random_h2_point(rng, 2.0), lm.random_h2_point(rng, 2.0)
        assert ads.earthquake_inverse_check(five_leaves, x, y) < 1e-8


def test_boundary_samples(empty_dom, one_leaf, five_leaves):
    for xl, xr, _ in ads.boundary_samples(empty_dom):
        assert xl == pytest.approx(xr)
    rows = ads.boundary_samples(one_leaf)
    off = [r for r in rows if abs(ads._wrap(r[0] - r[1])) > 1e-9]
    assert {r[2] for r in rows} == {0, 1}
    # one stratum is the diagonal, the other is moved by the pair of half-shears
    assert off and all(r[2] == off[0][2] for r in off)
    for dom in (one_leaf, five_leaves):
        assert ads.achronal_violation(ads.boundary_samples(dom)) <= 1e-12


def test_holonomy_examples(empty_dom, one_leaf):
    g = geo.boost(0.6) @ geo.rotation(1.1)
    bm, bp = ads.ads_holonomy(empty_dom, g)
    A = geo.so21_to_sl2(g)
    assert geo.proj_dist(bm, A) < 1e-12 and geo.proj_dist(bp, A) < 1e-12
    g = geo.boost(0.7)
    assert lm.is_invariant(one_leaf.lam, g)
    bm, bp = ads.ads_holonomy(one_leaf, g)
    assert geo.proj_dist(bm, bp) < 1e-12
    with pytest.raises(NotInvariant):
        ads.ads_holonomy(one_leaf, geo.rotation(0.4))


def test_holonomy_composition(one_leaf):
    R = geo.pi_rotation(geo.geodesic_point(one_leaf.normals[0], 0.3))
    g = geo.boost(0.5)
    for a, b in ((R, g), (g, R), (R, R)):
        ha = ads.ads_holonomy(one_leaf, a)
        hb = ads.ads_holonomy(one_leaf, b)
        hab = ads.ads_holonomy(one_leaf, ads.as_sl2(a) @ ads.as_sl2(b))
        for k in range(2):
            assert geo.proj_dist(ha[k] @ hb[k], hab[k]) < 1e-10
        hyp = ads.hyperbolic_holonomy(one_leaf, ads.as_sl2(a) @ ads.as_sl2(b))
        assert geo.proj_dist(ads.hyperbolic_holonomy(one_leaf, a) @ ads.hyperbolic_holonomy(one_leaf, b), hyp) < 1e-10


def test_past_frame_empty(empty_dom):
    x = geo.h2_from_polar(0.6, 1.0)
    f = ads.past_frame(empty_dom, 1.7 * x)
    assert f.tau == pytest.approx(np.arctan(1.7))
    assert geo.proj_dist(f.rho_minus, np.eye(2)) < 1e-14
    assert geo.proj_dist(f.rho_plus, geo.mink_to_ads(x)) < 1e-14


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2 ** 31))
def test_past_frame_quarter_turn(seed):
    rng = np.random.default_rng(seed)
    dom = sampling.random_domain(rng, 5)
    for smp in sampling.sample_points(dom, rng, 5):
        f = ads.past_frame(dom, smp.p)
        assert geo.ads_timelike_distance(f.rho_minus, f.rho_plus) == pytest.approx(np.pi / 2, abs=1e-8)
        assert np.linalg.det(f.point) == pytest.approx(1.0)


def test_past_frame_band_interpolates(one_leaf):
    """Inside the band rho_- runs along the dual geodesic of the leaf."""
    N = geo.project_to_geodesic(one_leaf.x0, one_leaf.normals[0])
    prev = None
    for s in np.linspace(0, 1, 6):
        f = ads.past_frame(one_leaf, flat.embed_band(one_leaf, 0, N, 1.2, s))
        # rho_- is a rotation about the leaf, so it commutes with the leaf generator
        G = geo.mink_sl2(one_leaf.normals[0])
        assert np.max(np.abs(f.rho_minus @ G - G @ f.rho_minus)) < 1e-12
        if prev is not None:
            assert geo.proj_dist(f.rho_minus, prev) > 0
        prev = f.rho_minus
    bm, bp = cc.ads_cocycle(one_leaf.lam, one_leaf.x0, np.array([np.cosh(1), 0, np.sinh(1)]))
    assert geo.proj_dist(prev, bm @ np.linalg.inv(bp)) < 1e-12
