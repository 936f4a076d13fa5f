import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lamspace import geometry as geo
from lamspace import laminations as lm
from lamspace import specfile
from lamspace.errors import ParseError, ValidationError


def test_validate_examples():
    assert lm.validate(lm.Lamination()).ok
    same = lm.Lamination((lm.Leaf(np.array([0.0, 0, 1]), 0.5), lm.Leaf(np.array([0.0, 0, -1]), 0.5)))
    diag = lm.validate(same)
    assert not diag.ok and any("coincide" in f for f in diag.failures)
    u2 = -(geo.boost(1.0, axis=2) @ np.array([0.0, 0, 1]))
    assert geo.mink_form([0, 0, 1], u2) == pytest.approx(-np.cosh(1))
    ok = lm.Lamination((lm.Leaf(np.array([0.0, 0, 1]), 0.5), lm.Leaf(u2, 0.5)))
    assert lm.validate(ok).ok


def test_validate_lists_every_failure():
    lam = lm.lamination([(0.0, 2.0, -1.0), (1.0, 3.0, 0.5)])
    diag = lm.validate(lam)
    assert len(diag.failures) == 2
    assert "weight" in diag.failures[0] and "intersect" in diag.failures[1]


def test_crossing_examples():
    lam = lm.Lamination((lm.Leaf(np.array([0.0, 0, 1]), 0.5),))
    x = np.array([np.sqrt(2), 0, -1])
    y = np.array([np.sqrt(2), 0, 1])
    cr = lm.crossing_data(lam, x, y)
    assert len(cr) == 1 and cr[0].weight == 0.5
    np.testing.assert_allclose(cr[0].toward, [0, 0, 1])
    np.testing.assert_allclose(geo.sl2_mink(cr[0].generator), [0, 0, 1])
    assert lm.crossing_data(lam, np.array([1.0, 0, 0]), y)[0].weight == 0.25
    assert lm.crossing_data(lam, y, np.array([np.cosh(1), 0, np.sinh(1)])) == []
    assert lm.total_mass(lam, x, np.array([1.0, 0, 0])) == 0.25


def test_total_mass_additive():
    assert lm.total_mass(lm.Lamination(), geo.h2_from_polar(1, 0), geo.h2_from_polar(1, 3)) == 0
    lam = lm.lamination([(0.3, 2.8, 0.3), (0.1, 3.0, 0.7)])
    x = geo.h2_from_polar(2.0, 4.7)
    y = geo.h2_from_polar(2.0, 1.57)
    assert lm.total_mass(lam, x, y) == pytest.approx(1.0)


def test_approximation_examples():
    base = geo.geodesic(np.pi / 2, 3 * np.pi / 2)
    fam = lm.lebesgue_family(base, 0.0, 1.0, 1.0)
    lam = lm.approximate(fam, 4)
    assert len(lam) == 4
    np.testing.assert_allclose(lam.weights, 0.25)
    for leaf, s in zip(lam.leaves, (1 / 8, 3 / 8, 5 / 8, 7 / 8)):
        np.testing.assert_allclose(leaf.normal, fam.leaf_normal(s), atol=1e-14)
    one = lm.approximate(fam, 1)
    assert len(one) == 1 and one.weights[0] == pytest.approx(1.0)
    np.testing.assert_allclose(one.leaves[0].normal, fam.leaf_normal(0.5))
    assert len(lm.approximate(lm.lebesgue_family(base, 0, 1, 0.0), 8)) == 0


def test_approximation_is_a_lamination():
    fam = lm.lebesgue_family(geo.geodesic(0.4, 3.0), -1.0, 1.0, 2.0)
    for n in (3, 16, 64):
        lam = lm.approximate(fam, n)
        assert lm.validate(lam).ok
        assert lam.weights.sum() == pytest.approx(4.0)


def test_invariance_examples():
    assert len(lm.push(lm.Lamination(), geo.boost(1.0))) == 0
    lam = lm.lamination([(0.0, np.pi, 0.5)])
    assert lm.is_invariant(lam, geo.boost(0.8))
    R = geo.sl2_to_so21(geo.pi_rotation(geo.h2_from_polar(0.5, 1.0)))
    assert not lm.is_invariant(lam, R)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 31))
def test_random_laminations_validate(seed):
    rng = np.random.default_rng(seed)
    lam = lm.random_lamination(rng, int(rng.integers(0, 8)))
    assert lm.validate(lam).ok


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 31))
def test_crossings_reverse(seed):
    rng = np.random.default_rng(seed)
    lam = lm.random_lamination(rng, 5)
    x, y = lm.random_h2_point(rng), lm.random_h2_point(rng)
    a = lm.crossing_data(lam, x, y)
    b = lm.crossing_data(lam, y, x)
    assert [c.index for c in a] == [c.index for c in reversed(b)]
    for ca, cb in zip(a, reversed(b)):
        np.testing.assert_allclose(ca.toward, -cb.toward)


# ---------------------------------------------------------------------------
# spec files


def test_load_fixtures(fixtures_dir):
    empty = specfile.load_lamination(fixtures_dir / "empty.json")
    assert len(empty.lam) == 0
    one = specfile.load_lamination(fixtures_dir / "one_leaf.json")
    assert len(one.lam) == 1 and one.lam.weights[0] == 0.5
    assert one.lam.leaves[0].endpoints == pytest.approx((0.0, np.pi))


def test_dump_round_trip(fixtures_dir, tmp_path):
    import json
    dom = specfile.load_lamination(fixtures_dir / "half_plane.json")
    p = tmp_path / "x.json"
    p.write_text(json.dumps(specfile.dump_spec(dom)))
    again = specfile.load_lamination(p)
    assert lm.same_lamination(dom.lam, again.lam)


@pytest.mark.parametrize("name, error, needle", [
    ("malformed.json", ParseError, "line 3"),
    ("missing_basepoint.json", ParseError, "basepoint"),
    ("wrong_type.json", ParseError, "leaves[0].endpoints"),
    ("overlapping.json", ValidationError, "leaves 0 and 1"),
    ("same_leaf_twice.json", ValidationError, "coincide"),
    ("negative_weight.json", ValidationError, "weight"),
    ("coincident.json", ValidationError, "endpoints coincide"),
    ("bad_basepoint.json", ValidationError, "hyperboloid"),
    ("basepoint_on_leaf.json", ValidationError, "on leaf"),
])
def test_invalid_fixtures(fixtures_dir, name, error, needle):
    with pytest.raises(error) as exc:
        specfile.load_lamination(fixtures_dir / "invalid" / name)
    assert needle in str(exc.value)
