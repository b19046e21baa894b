"""Cones, diamonds, hulls, Sylvester law, chart independence."""

import numpy as np
import pytest

from causalflag.causal import (
    ChartedChart,
    Diamond,
    FutureRelation,
    causal_hull,
    chart_independence_check,
    classify_orbit,
    cone_margin,
    diamond_membership,
    future_membership,
    in_cone,
    random_positive_coord,
    random_signature_coord,
    sylvester_orbit_check,
)
from causalflag.errors import EmptyInput, NotTransverse
from causalflag.groups import model_preset
from causalflag.kmat import KMat
from causalflag.linalg import signature
from causalflag.reps import domain_center, dual_center
from causalflag.shilov import chart_point

LAGRANGIAN = ["sp4", "su22", "sostar8"]


def test_cone_margin_oracles():
    model = model_preset("sp4")
    assert cone_margin(model, KMat.eye("R", 2)) == pytest.approx(1.0)
    assert not in_cone(model, KMat("R", np.diag([1.0, -1.0])))
    so = model_preset("so42")
    assert in_cone(so, np.array([0.0, 0.0, 0.0, 1.0]))
    assert not in_cone(so, np.array([1.0, 0.0, 0.0, 1.0]))  # lightlike
    assert not in_cone(so, np.array([0.0, 0.0, 0.0, -1.0]))


def test_future_membership_cases():
    model = model_preset("sp4")
    X = KMat("R", np.zeros((2, 2)))
    assert future_membership(model, X, KMat.eye("R", 2)) == FutureRelation.STRICT_FUTURE
    assert future_membership(model, X, -1.0 * KMat.eye("R", 2)) == FutureRelation.STRICT_PAST
    assert future_membership(model, X, X) == FutureRelation.EQUAL
    assert future_membership(model, X, KMat("R", np.diag([1.0, 0.0]))) == FutureRelation.LIGHTCONE
    assert future_membership(model, X, KMat("R", np.diag([1.0, -1.0]))) == FutureRelation.NEITHER


def test_diamond_membership():
    model = model_preset("su22")
    lo = -1.0 * KMat.eye("C", 2)
    hi = KMat.eye("C", 2)
    d = Diamond(model, lo, hi)
    assert diamond_membership(d, KMat.zeros("C", 2))
    assert not diamond_membership(d, 2.0 * KMat.eye("C", 2))
    assert not diamond_membership(d, hi)  # open by default
    assert diamond_membership(d, hi, closed=True)
    with pytest.raises(NotTransverse):
        Diamond(model, hi, lo)


def test_hull_contains_inputs_and_diamonds():
    model = model_preset("sp4")
    pts = [KMat("R", np.zeros((2, 2))), KMat.eye("R", 2), KMat("R", np.diag([5.0, 1.0]))]
    hull = causal_hull(model, pts)
    for X in pts:
        assert hull.membership(X)
    assert hull.membership(0.5 * KMat.eye("R", 2))  # midpoint of a causal pair
    assert not hull.membership(-1.0 * KMat.eye("R", 2))
    with pytest.raises(EmptyInput):
        causal_hull(model, [])


def test_hull_idempotence_small():
    model = model_preset("sp4")
    rng = np.random.default_rng(8)
    pts = [random_signature_coord(model, rng.integers(0, 3), rng) for _ in range(5)]
    h1 = causal_hull(model, pts)
    inside = []
    for X, Y in h1.pairs[:5]:
        inside.append(X + 0.5 * (Y - X))
    h2 = causal_hull(model, pts + inside)
    for _ in range(200):
        Z = random_signature_coord(model, rng.integers(0, 3), rng)
        m1, m2 = h1.margin(Z), h2.margin(Z)
        if abs(m1) <= 1e-7 or abs(m2) <= 1e-7:
            continue
        assert (m1 > 0) == (m2 > 0)


@pytest.mark.parametrize("name", LAGRANGIAN)
def test_sylvester_orbit_check_small(name):
    model = model_preset(name)
    for i in range(model.r + 1):
        rep = sylvester_orbit_check(model, i, 300, seed=21)
        assert rep["failures"] == 0
        # every observed orbit has at least i positive directions
        assert all(v == 0 for k, v in rep["histogram"].items() if int(k) < i)


def test_classify_orbit():
    model = model_preset("sp4")
    assert classify_orbit(model, KMat("R", np.diag([1.0, -1.0]))) == (1, 1)
    assert classify_orbit(model, KMat.eye("R", 2)) == (2, 0)
    so = model_preset("so42")
    assert classify_orbit(so, np.array([0.0, 0.0, 0.0, 1.0])) == (2, 0)
    assert classify_orbit(so, np.array([2.0, 0.0, 0.0, 1.0])) == (1, 1)


def test_signature_coord_sampler_hits_the_label():
    model = model_preset("sostar8")
    rng = np.random.default_rng(5)
    for i in range(3):
        for _ in range(10):
            X = random_signature_coord(model, i, rng)
            assert signature(X).as_tuple() == (i, 2 - i, 0)


def test_chart_independence_small():
    model = model_preset("sp4")
    rng = np.random.default_rng(31)
    pts = []
    for _ in range(5):
        X = random_positive_coord(model, rng)
        pts.append(chart_point(model, (0.8 / X.opnorm()) * X))
    chart_a = ChartedChart.standard(model)
    chart_b = ChartedChart.at_point(dual_center(model), domain_center(model))
    rep = chart_independence_check(pts, chart_a, chart_b, 500, seed=7)
    assert rep["disagreements"] == 0


def test_charted_chart_roundtrip():
    model = model_preset("su22")
    rng = np.random.default_rng(2)
    chart = ChartedChart.at_point(dual_center(model), domain_center(model))
    X = random_positive_coord(model, rng)
    X = (0.5 / X.opnorm()) * X
    p = chart_point(model, X)
    assert chart.contains(p)
    q = chart.point(chart.coords(p))
    assert p.distance(q) < 1e-8
