import pytest
import numpy as np
import jax
import jax.numpy as jnp
import jax.random as jr

from cvqmem.gaussian import (
    GaussianState,
    SymplecticMap,
    LossBudget,
    vacuum,
    squeezed_state,
    two_mode_squeezed,
    symplectic_eigenvalues,
    symplectic_form,
    tensor_product,
    reduce_state,
    displace,
    rotated_variances,
    identity_map,
    phase_rotation,
    apply_symplectic,
    apply_loss,
    add_noise,
    infer_total_loss,
    memory_input_variances,
)


def test_vacuum():
    state = vacuum(1)
    np.testing.assert_allclose(state.mean, [0.0, 0.0])
    np.testing.assert_allclose(state.cov, np.diag([0.5, 0.5]))
    np.testing.assert_allclose(vacuum(2).cov, np.eye(4) / 2)
    np.testing.assert_allclose(symplectic_eigenvalues(vacuum(3).cov), [0.5] * 3, atol=1e-12)
    with pytest.raises(ValueError):
        vacuum(0)


def test_squeezed_state():
    np.testing.assert_allclose(squeezed_state(4, 0).cov, np.diag([0.125, 2.0]), atol=1e-15)
    np.testing.assert_allclose(squeezed_state(1, 37).cov, np.eye(2) / 2, atol=1e-15)
    state = squeezed_state(4, 90, (3.8, 0.0))
    np.testing.assert_allclose(state.cov, np.diag([2.0, 0.125]), atol=1e-15)
    np.testing.assert_allclose(state.mean, [3.8, 0.0])
    assert state.is_pure()


@pytest.mark.parametrize("s", [0.0, -1.0, 2e6])
def test_squeezed_state_invalid(s):
    with pytest.raises(ValueError):
        squeezed_state(s, 0)


def test_rotated_variances():
    state = squeezed_state(4, 30)
    np.testing.assert_allclose(rotated_variances(state, 30), (0.125, 2.0), atol=1e-12)


def test_two_mode_squeezed():
    state = two_mode_squeezed(4)
    duan = state.variance([1, 0, 1, 0]) + state.variance([0, 1, 0, -1])
    assert duan == pytest.approx(0.5, abs=1e-12)
    assert state.is_pure()
    np.testing.assert_allclose(two_mode_squeezed(1).cov, np.eye(4) / 2, atol=1e-15)
    marginal = reduce_state(state, 0)
    np.testing.assert_allclose(marginal.cov, np.eye(2) * (4 + 0.25) / 4)


@pytest.mark.parametrize("s", [0.5, 2.0, 4.0, 10.0])
def test_two_mode_squeezed_duan(s):
    state = two_mode_squeezed(s)
    duan = state.variance([1, 0, 1, 0]) + state.variance([0, 1, 0, -1])
    assert duan == pytest.approx(2 / s, rel=1e-12)


def test_state_validation():
    with pytest.raises(ValueError, match="symmetric"):
        GaussianState(jnp.zeros(2), jnp.array([[0.5, 0.1], [0.0, 0.5]]))
    with pytest.raises(ValueError, match="uncertainty"):
        GaussianState(jnp.zeros(2), jnp.diag(jnp.array([0.1, 0.5])))
    with pytest.raises(ValueError):
        GaussianState(jnp.zeros(3), jnp.eye(2) / 2)
    # intermediate moments may skip the check
    GaussianState(jnp.zeros(2), jnp.diag(jnp.array([0.1, 0.5])), validate=False)


def test_apply_loss():
    state = apply_loss(squeezed_state(4, 0), 0, 0.567)
    np.testing.assert_allclose(np.diag(state.cov), [0.287375, 1.3505], atol=1e-12)
    state = apply_loss(squeezed_state(4, 0), 0, 0.72)
    np.testing.assert_allclose(np.diag(state.cov), [0.23, 1.58], atol=1e-12)
    original = two_mode_squeezed(4)
    unchanged = apply_loss(original, 1, 1.0)
    np.testing.assert_allclose(unchanged.cov, original.cov)
    np.testing.assert_allclose(apply_loss(squeezed_state(4, 0, (2, 2)), 0, 0.0).cov, np.eye(2) / 2)


@pytest.mark.parametrize("eta", [-0.1, 1.2])
def test_apply_loss_invalid(eta):
    with pytest.raises(ValueError, match="'eta'"):
        apply_loss(vacuum(1), 0, eta)


def test_apply_loss_mode_out_of_range():
    with pytest.raises(ValueError):
        apply_loss(vacuum(2), 2, 0.5)


def test_loss_composition():
    keys = jr.split(jr.key(7), 3)
    etas = jr.uniform(keys[0], (1000, 2))
    s = jr.uniform(keys[1], (1000,), minval=0.1, maxval=20.0)
    phi = jr.uniform(keys[2], (1000,), maxval=180.0)

    def lossy(V, eta):
        return eta * V + (1 - eta) / 2 * jnp.eye(2)

    def cov(s, phi):
        t = jnp.deg2rad(phi)
        R = jnp.array([[jnp.cos(t), -jnp.sin(t)], [jnp.sin(t), jnp.cos(t)]])
        return R @ jnp.diag(jnp.array([1 / (2 * s), s / 2])) @ R.T

    def error(eta, s, phi):
        V = cov(s, phi)
        two_steps = lossy(lossy(V, eta[0]), eta[1])
        return jnp.max(jnp.abs(two_steps - lossy(V, eta[0] * eta[1])))

    assert float(jnp.max(jax.vmap(error)(etas, s, phi))) < 1e-12

    # the state-level operation agrees with the same law
    state = squeezed_state(4, 20, (1.0, -2.0))
    a = apply_loss(apply_loss(state, 0, 0.8), 0, 0.6)
    b = apply_loss(state, 0, 0.48)
    np.testing.assert_allclose(a.cov, b.cov, atol=1e-12)
    np.testing.assert_allclose(a.mean, b.mean, atol=1e-12)


def test_uncertainty_preserved_by_random_maps():
    """Random passive-active two-mode maps keep all symplectic eigenvalues ≥ 1/2."""
    keys = jr.split(jr.key(3), 4)
    n = 1000
    angles = jr.uniform(keys[0], (n, 3), maxval=2 * jnp.pi)
    logs = jr.normal(keys[1], (n, 2)) * 0.8
    s = jnp.exp(jr.normal(keys[2], (n,)))
    etas = jr.uniform(keys[3], (n,))

    def rot(t):
        return jnp.array([[jnp.cos(t), -jnp.sin(t)], [jnp.sin(t), jnp.cos(t)]])

    def smap(a, r):
        R = jax.scipy.linalg.block_diag(rot(a[0]), rot(a[1]))
        c, sn = jnp.cos(a[2]), jnp.sin(a[2])
        BS = jnp.block([[c * jnp.eye(2), sn * jnp.eye(2)], [-sn * jnp.eye(2), c * jnp.eye(2)]])
        Sq = jnp.diag(jnp.array([jnp.exp(-r[0]), jnp.exp(r[0]), jnp.exp(-r[1]), jnp.exp(r[1])]))
        return BS @ R @ Sq

    def min_nu(a, r, s, eta):
        a_ = (s + 1 / s) / 4
        c_ = (s - 1 / s) / 4
        V = jnp.array(
            [[a_, 0, -c_, 0], [0, a_, 0, c_], [-c_, 0, a_, 0], [0, c_, 0, a_]]
        )
        S = smap(a, r)
        V = S @ V @ S.T
        V = V.at[:2, :2].multiply(eta).at[:2, :2].add((1 - eta) / 2 * jnp.eye(2))
        V = V.at[:2, 2:].multiply(jnp.sqrt(eta)).at[2:, :2].multiply(jnp.sqrt(eta))
        omega = symplectic_form(2)
        return jnp.min(symplectic_eigenvalues(V)), jnp.max(jnp.abs(S @ omega @ S.T - omega))

    nu, err = jax.vmap(min_nu)(angles, logs, s, etas)
    assert float(jnp.max(err)) < 1e-10
    assert float(jnp.min(nu)) >= 0.5 - 1e-9


def test_symplectic_map():
    with pytest.raises(ValueError, match="symplectic"):
        SymplecticMap(jnp.diag(jnp.array([2.0, 2.0])))
    state = squeezed_state(4, 10, (1.0, 2.0))
    same = apply_symplectic(state, identity_map(1))
    np.testing.assert_allclose(same.cov, state.cov)
    np.testing.assert_allclose(apply_symplectic(vacuum(1), phase_rotation(90)).cov, np.eye(2) / 2, atol=1e-15)


def test_pi_pulse_twice():
    state = squeezed_state(4, 0, (1.5, -0.5))
    pulse = phase_rotation(90)
    twice = apply_symplectic(apply_symplectic(state, pulse), pulse)
    np.testing.assert_allclose(twice.mean, -state.mean, atol=1e-12)
    np.testing.assert_allclose(twice.cov, state.cov, atol=1e-12)
    # (x, p) -> (-p, x)
    once = apply_symplectic(state, pulse)
    np.testing.assert_allclose(once.mean, [0.5, 1.5], atol=1e-12)


def test_symplectic_composition_and_inverse():
    a = phase_rotation(30, 2, 0)
    b = phase_rotation(45, 2, 1)
    composed = a @ b
    np.testing.assert_allclose((composed @ composed.inverse()).matrix, np.eye(4), atol=1e-12)
    with pytest.raises(ValueError):
        apply_symplectic(vacuum(1), composed)


def test_tensor_reduce_displace():
    state = tensor_product(squeezed_state(4, 0), vacuum(1))
    assert state.n_modes == 2
    np.testing.assert_allclose(reduce_state(state, 1).cov, np.eye(2) / 2)
    moved = displace(state, 1, (1.0, 2.0))
    np.testing.assert_allclose(moved.mean, [0, 0, 1, 2])


def test_add_noise():
    noisy = add_noise(vacuum(1), 0, (0.1, 0.3))
    np.testing.assert_allclose(np.diag(noisy.cov), [0.6, 0.8])
    with pytest.raises(ValueError):
        add_noise(vacuum(1), 0, (-0.1, 0.0))


def test_loss_budget():
    budget = LossBudget(0.80, 0.90, 0.79)
    assert budget.eta_tot == pytest.approx(0.5688)
    assert budget.memory_gain == pytest.approx(np.sqrt(0.72))
    with pytest.raises(ValueError, match="'eta_ent'"):
        LossBudget(0.8, 1.1, 0.79)


def test_infer_total_loss():
    estimate = infer_total_loss(0.29, 1.34, 4)
    assert estimate.eta == pytest.approx(0.56)
    assert abs(estimate.residual) < 1e-9
    assert infer_total_loss(0.125, 2.0, 4).eta == pytest.approx(1.0)
    assert infer_total_loss(0.5, 0.5, 4).eta == pytest.approx(0.0)


def test_infer_total_loss_warns():
    with pytest.warns(UserWarning, match="residual"):
        infer_total_loss(0.29, 1.0, 4)


@pytest.mark.parametrize("args", [(0.1, 1.34, 4), (0.29, 2.5, 4), (0.29, 1.34, 1)])
def test_infer_total_loss_invalid(args):
    with pytest.raises(ValueError):
        infer_total_loss(*args)


def test_memory_input_variances():
    sq, anti = memory_input_variances(4, LossBudget(0.8, 0.9, 0.79))
    assert sq == pytest.approx(0.23)
    assert anti == pytest.approx(1.58)
