"""Spacetimes over Pi0: developing maps, holonomy, rays, lattices, BTZ chart."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lamspace import qd
from lamspace.errors import DegenerateLattice, RadiusRange, TimeRange

POINTS = {"flat": (0.3, -0.4, 1.7), "hyperbolic": (0.3, -0.4, 1.7),
          "deSitter": (0.3, -0.4, 0.6), "antiDeSitter": (0.3, -0.4, 0.8)}


def test_develop_examples():
    np.testing.assert_allclose(qd.develop("flat", (0, 0, 2)), [0, 0, 2])
    w, c = qd.develop("hyperbolic", (0, 0, np.sqrt(2)))
    assert w == pytest.approx(1 / np.sqrt(2)) and c == pytest.approx(1 / np.sqrt(2))
    A = qd.develop("antiDeSitter", (0, 0, 1))
    np.testing.assert_allclose(A, np.sqrt(0.5) * (np.eye(2) + qd.J2), atol=1e-15)
    assert np.linalg.det(A) == pytest.approx(1.0)
    with pytest.raises(TimeRange):
        qd.develop("hyperbolic", (0, 0, 0.5))
    with pytest.raises(TimeRange):
        qd.develop("deSitter", (0, 0, 1.5))


@pytest.mark.parametrize("kind", qd.KINDS)
def test_pullback_matches_closed_form(kind):
    rng = np.random.default_rng(7)
    lo, hi = {"hyperbolic": (1.1, 3.0), "deSitter": (0.1, 0.9)}.get(kind, (0.1, 3.0))
    for _ in range(20):
        p = (rng.uniform(-1, 1), rng.uniform(-3, 3), rng.uniform(lo, hi))
        assert qd.pullback_residual(kind, p) < 1e-5


@pytest.mark.parametrize("kind", qd.KINDS)
@settings(max_examples=25, deadline=None)
@given(st.floats(-2, 2), st.floats(-3, 3), st.booleans())
def test_holonomy_equivariance(kind, p, q, rot):
    pt = POINTS[kind]
    h = qd.holonomy(kind, complex(p, q), rotation=rot)
    moved = qd.r_pi(pt) if rot else qd.sigma(complex(p, q), pt)
    got = h(qd.develop(kind, pt))
    want = qd.develop(kind, moved)
    assert qd.point_distance(kind, got, want) < 1e-10 * max(1.0, np.max(np.abs(qd.as_vector(kind, want))))


def test_holonomy_examples():
    M, t = qd.holonomy("flat", 0.4 + 0.7j).data
    np.testing.assert_allclose(t, [0, 0.7, 0])
    assert M[0, 0] == pytest.approx(np.cosh(0.4)) and M[0, 2] == pytest.approx(np.sinh(0.4))
    # v = iq rotates w by q and keeps c
    h = qd.holonomy("hyperbolic", 0.9j)
    w, c = h((1.0 + 0.5j, 0.3))
    assert w == pytest.approx((1.0 + 0.5j) * np.exp(0.9j)) and c == pytest.approx(0.3)
    L, R = qd.holonomy("antiDeSitter", 0.6).data
    np.testing.assert_allclose(L, R)
    np.testing.assert_allclose(L, np.diag([np.exp(0.3), np.exp(-0.3)]))


def test_kerr_examples():
    par = qd.KerrParams(1.0, 0.5)
    r = qd.kerr_radius(par, 1.0)
    assert r * r == pytest.approx(0.625)
    assert qd.kerr_tau(par, r) == pytest.approx(1.0)
    assert qd.kerr_metric(par, r)[0] == pytest.approx(-0.225)
    assert qd.kerr_metric(par, 1.0 - 1e-12)[0] == pytest.approx(0.0, abs=1e-10)
    with pytest.raises(RadiusRange):
        qd.kerr_tau(par, 1.2)
    with pytest.raises(RadiusRange):
        qd.KerrParams(0.5, 1.0)


def test_kerr_pullback():
    par = qd.KerrParams(1.3, 0.4)
    for r in np.linspace(0.45, 1.25, 9):
        assert qd.kerr_residual(par, r, 0.3, -0.2) < 1e-5


def test_hyperbolic_ray():
    w, c = qd.ray("hyperbolic", 1e-6, (1, 1, 2))
    assert abs(w - (1 + 1j)) < 1e-5 and abs(c - 2) < 1e-5
    assert qd.ray_limit_point("hyperbolic", (1, 1, 2)) == (1 + 1j, 2.0)
    devs = []
    for s in (1e-2, 1e-3, 1e-4):
        w, c = qd.ray("hyperbolic", s, (1, 1, 2))
        devs.append(abs(w - (1 + 1j)) / s + abs(c - 2) / s)
    # first-order deviation stays bounded and settles
    assert max(devs) < 10 and abs(devs[1] - devs[2]) < 1e-2


@pytest.mark.parametrize("kind", ["hyperbolic", "antiDeSitter"])
def test_ray_holonomy_limit(kind):
    v = 0.7 - 0.4j
    lim = qd.ray_holonomy_limit(kind, v).data
    got = qd.ray_holonomy(kind, 1e-6, v).data
    for a, b in zip(got, lim):
        assert np.max(np.abs(a - b)) < 1e-5
    if kind == "hyperbolic":
        w, c = qd.ray_holonomy_limit(kind, v)((0.2 + 0.1j, 0.5))
        assert w == pytest.approx(0.2 + 0.1j + v) and c == 0.5


def test_ray_holonomy_equivariant():
    s, v, p = 0.05, 0.7 - 0.4j, (0.2, 0.3, 0.8)
    for kind in ("hyperbolic", "antiDeSitter"):
        h = qd.ray_holonomy(kind, s, v)
        got = h(qd.ray(kind, s, p))
        want = qd.ray(kind, s, qd.sigma(v, p))
        assert qd.point_distance(kind, got, want) < 1e-9


def test_lattice_examples():
    assert qd.lattice_check(1)["a"] == pytest.approx(1)
    out = qd.lattice_check(1j)
    assert out["type"] == "cylinder" and out["a"] == pytest.approx(-1)
    out = qd.lattice_check(1, 1j)
    assert out["type"] == "torus" and out["modulus"] == pytest.approx(1j)
    assert out["area"] == pytest.approx(1.0)
    with pytest.raises(DegenerateLattice):
        qd.lattice_check(1, 2)
    with pytest.raises(DegenerateLattice):
        qd.lattice_check(0)
    with pytest.raises(DegenerateLattice):
        qd.lattice_check(1, rotation=True)


@settings(max_examples=50, deadline=None)
@given(st.complex_numbers(min_magnitude=0.1, max_magnitude=5), st.complex_numbers(min_magnitude=0.1, max_magnitude=5))
def test_modulus_in_fundamental_domain(v1, v2):
    try:
        t = qd.lattice_check(v1, v2)["modulus"]
    except DegenerateLattice:
        return
    assert t.imag > 0 and abs(t.real) <= 0.5 + 1e-12 and abs(t) >= 1 - 1e-9


def test_tau_invariant_under_lattice():
    p = (0.2, -1.0, 0.7)
    for v in (1.0, 0.3 + 2j):
        assert qd.sigma(v, p)[2] == p[2]
