"""Group models, projections, Levi embedding."""

import numpy as np
import pytest

from causalflag.errors import ModelMismatch, NotUnimodular, OddRank, UnknownPreset
from causalflag.groups import (
    GroupElement,
    alpha_r,
    cartan_projection,
    form_defect,
    group_exp,
    in_levi_block_form,
    levi_block,
    lyapunov_projection,
    model_preset,
    random_lie_element,
    tau_p,
)
from causalflag.kmat import KMat

FAMILIES = ["sp4", "su22", "sostar8", "so42"]


def random_element(model, rng, scale=0.5):
    Z = random_lie_element(model, rng)
    Z = (scale / max(Z.norm(), 1e-300)) * Z
    return group_exp(model, Z)


def test_preset_shapes():
    assert model_preset("sp4").dim == 4
    assert model_preset("su22").dim == 4
    assert model_preset("sostar8").dim == 4  # quaternionic 4x4, embeds as 8x8
    assert model_preset("so42").dim == 6
    with pytest.raises(UnknownPreset):
        model_preset("nope")


def test_form_squares():
    for name in ["sp4", "su22", "sostar8"]:
        model = model_preset(name)
        J = model.form()
        assert (J @ J + KMat.eye(model.tag, model.dim)).norm() < 1e-14
    b = model_preset("so42").form()
    assert (b @ b - KMat.eye("R", 6)).norm() < 1e-14


@pytest.mark.parametrize("name", FAMILIES)
def test_exp_lands_in_group_and_inverse_works(name):
    model = model_preset(name)
    rng = np.random.default_rng(3)
    for _ in range(10):
        g = random_element(model, rng)
        assert form_defect(model, g.g) < 1e-10
        prod = g @ g.inv()
        assert (prod.g - KMat.eye(model.tag, model.dim)).norm() < 1e-10


def test_form_defect_gate():
    model = model_preset("sp4")
    with pytest.raises(ModelMismatch):
        GroupElement(model, 2.0 * KMat.eye("R", 4))


def test_cartan_projection_of_levi_diagonal():
    model = model_preset("sp4")
    g = tau_p(np.diag([3.0, 1.0 / 3.0]), model)
    mu = cartan_projection(g)
    assert np.allclose(mu, [np.log(3.0), np.log(3.0)], atol=1e-12)
    assert abs(alpha_r(mu) - 2.0 * np.log(3.0)) < 1e-12


def test_lyapunov_matches_cartan_on_diagonalizable():
    model = model_preset("sp4")
    g = tau_p(np.diag([3.0, 1.0 / 3.0]), model)
    lam = lyapunov_projection(g, cross_check=True)
    assert np.allclose(lam, cartan_projection(g), atol=1e-10)


@pytest.mark.parametrize("name", FAMILIES)
def test_cartan_dominant_and_nonnegative(name):
    model = model_preset(name)
    rng = np.random.default_rng(5)
    for _ in range(20):
        mu = cartan_projection(random_element(model, rng, scale=1.5))
        assert np.all(mu >= 0.0)
        assert np.all(np.diff(mu) <= 1e-12)


def test_tau_p_is_a_homomorphism_into_the_group():
    rng = np.random.default_rng(9)
    for name in ["sp4", "su22", "sostar8"]:
        model = model_preset(name)
        A = np.array([[1.0, 0.7], [0.0, 1.0]])
        B = np.array([[2.0, 0.0], [0.3, 0.5]])
        B /= np.sqrt(np.linalg.det(B))
        lhs = tau_p(A, model) @ tau_p(B, model)
        rhs = tau_p(A @ B, model)
        assert (lhs.g - rhs.g).norm() < 1e-10
        assert tau_p(A, model).form_defect() < 1e-12


def test_tau_p_rejections():
    with pytest.raises(OddRank):
        tau_p(np.eye(2), model_preset("sp6"))
    with pytest.raises(NotUnimodular):
        tau_p(2.0 * np.eye(2), model_preset("sp4"))
    with pytest.raises(ModelMismatch):
        tau_p(np.eye(2), model_preset("so42"))


def test_levi_block_detection():
    model = model_preset("sp4")
    g = tau_p(np.diag([2.0, 0.5]), model)
    assert in_levi_block_form(g)
    assert np.allclose(levi_block(g).a, np.diag([2.0, 0.5]))
    rng = np.random.default_rng(1)
    h = random_element(model, rng)
    # a generic element has off-diagonal blocks
    assert not in_levi_block_form(h @ g @ h.inv())


def test_json_roundtrip():
    model = model_preset("sostar8")
    rng = np.random.default_rng(2)
    g = random_element(model, rng)
    h = GroupElement.from_json(g.to_json())
    assert (g.g - h.g).norm() < 1e-14
