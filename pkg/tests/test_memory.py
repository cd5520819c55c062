import pytest
import numpy as np
import jax.random as jr

from cvqmem.gaussian import (
    vacuum,
    displace,
    symplectic_form,
    squeezed_state,
    two_mode_squeezed,
    reduce_state,
    symplectic_eigenvalues,
)
from cvqmem.memory import (
    MemoryParams,
    ModeBasis,
    PRESETS,
    get_preset,
    interaction_map,
    feedback_map,
    storage_map,
    optimal_gain,
    store_ideal,
    store_noisy,
    basis_map,
    basis_transform,
    storage_in_local_picture,
    to_light_frame,
    to_atomic_frame,
    added_noise_variances,
    infer_added_noise,
    excess_noise,
    simulate_kappa_readout,
    calibrate_kappa,
    simulate_gain_readout,
    calibrate_feedback_gain,
)
from cvqmem.fidelity import gaussian_overlap, variance_blocks


@pytest.fixture
def preset():
    return get_preset()


def test_presets():
    params = get_preset("vapor-cell-2010")
    assert params.G == pytest.approx(0.8485, abs=1e-4)
    assert params.swap_coefficient == pytest.approx(0.92, abs=5e-3)
    assert PRESETS["perfect"].G == 1.0
    with pytest.raises(ValueError, match="Unknown preset"):
        get_preset("nope")


@pytest.mark.parametrize(
    "kwargs", [{"kappa": 3.0}, {"kappa": -1.0}, {"var_Sx": -0.1}, {"Z2": 0.0}]
)
def test_params_invalid(kwargs):
    with pytest.raises(ValueError):
        MemoryParams(**kwargs)


def test_for_phase(preset):
    assert preset.for_phase(0).var_Sx == pytest.approx(0.08)
    assert preset.for_phase(90).var_Sp == pytest.approx(0.32)
    assert preset.for_phase(45) is preset


def test_interaction_map():
    S = np.asarray(interaction_map(MemoryParams()).matrix)
    assert S[0, 0] == pytest.approx(np.sqrt(1 - 1 / 6.4))
    np.testing.assert_allclose(
        interaction_map(MemoryParams(kappa=0.0)).matrix, np.eye(4), atol=1e-15
    )
    # full coupling: light and atoms exchanged up to the Z² scaling
    swap = np.asarray(interaction_map(MemoryParams(Z2=4.0, kappa=2.0)).matrix)
    np.testing.assert_allclose(np.diag(swap), 0.0, atol=1e-15)
    assert swap[0, 3] == pytest.approx(2.0)
    assert swap[3, 0] == pytest.approx(-0.5)


def test_interaction_map_symplectic():
    keys = jr.split(jr.key(11), 2)
    Z2 = np.asarray(jr.uniform(keys[0], (1000,), minval=1.0, maxval=20.0))
    u = np.asarray(jr.uniform(keys[1], (1000,), minval=1e-3, maxval=0.999))
    omega = np.asarray(symplectic_form(2))
    for z2, k in zip(Z2, u * np.sqrt(Z2)):
        S = np.asarray(interaction_map(MemoryParams(Z2=float(z2), kappa=float(k))).matrix)
        np.testing.assert_allclose(S @ omega @ S.T, omega, atol=1e-12)


def test_optimal_gain():
    params = MemoryParams()
    assert optimal_gain(params) == pytest.approx(0.9186, abs=1e-4)
    numeric = optimal_gain(params, method="numeric")
    assert numeric == pytest.approx(optimal_gain(params, method="analytic"), abs=1e-9)
    assert optimal_gain(MemoryParams(Z2=1e8)) == pytest.approx(1.0, abs=1e-7)
    S = np.asarray(storage_map(params.with_optimal_gain()).matrix)
    assert S[3, 3] == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ValueError):
        optimal_gain(MemoryParams(kappa=0.5), method="analytic")
    with pytest.raises(ValueError):
        optimal_gain(MemoryParams(kappa=0.0))


def test_optimal_gain_other_coupling():
    params = MemoryParams(kappa=1.5)
    g = optimal_gain(params)
    S = np.asarray((feedback_map(g) @ interaction_map(params)).matrix)
    assert S[3, 3] == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize(
    "var_xA, phi, variances, fidelity",
    [
        (0.5, 0.0, (2.421875, 0.125), 0.9511),
        (0.5, 90.0, (0.546875, 2.0), 0.6100),
        (0.43, 0.0, None, 0.958),
        (0.43, 90.0, None, 0.639),
    ],
)
def test_store_ideal(var_xA, phi, variances, fidelity):
    params = MemoryParams(var_xA_init=var_xA)
    pure = squeezed_state(4, phi)
    stored = store_ideal(pure, params)
    if variances is not None:
        np.testing.assert_allclose(np.diag(stored.cov), variances, atol=1e-12)
    assert gaussian_overlap(pure, to_light_frame(stored)) == pytest.approx(fidelity, abs=1e-3)


def test_store_ideal_means():
    params = MemoryParams()
    stored = store_ideal(squeezed_state(4, 0, (3.8, 1.0)), params)
    # x_A = p_L, p_A = -x_L
    np.testing.assert_allclose(stored.mean, [1.0, -3.8], atol=1e-12)
    with pytest.raises(ValueError):
        store_ideal(two_mode_squeezed(4), params)


@pytest.mark.parametrize(
    "phi, expected", [(0.0, (2.0228, 0.52)), (90.0, (0.7228, 1.90))]
)
def test_store_noisy(preset, phi, expected):
    stored = store_noisy(squeezed_state(4, phi), preset.for_phase(phi))
    np.testing.assert_allclose(np.diag(stored.cov), expected, atol=1e-4)


def test_store_noisy_means(preset):
    stored = store_noisy(squeezed_state(4, 0, (3.8, 0.0)), preset)
    np.testing.assert_allclose(stored.mean, [0.0, -3.8 * preset.G], atol=1e-12)


def test_store_noisy_perfect_is_ideal():
    params = PRESETS["perfect"]
    pure = squeezed_state(4, 30, (1.0, 2.0))
    stored = to_light_frame(store_noisy(pure, params))
    np.testing.assert_allclose(stored.cov, pure.cov, atol=1e-12)
    np.testing.assert_allclose(stored.mean, pure.mean, atol=1e-12)


def test_frames_roundtrip():
    state = squeezed_state(4, 20, (1.0, -2.0))
    back = to_atomic_frame(to_light_frame(state))
    np.testing.assert_allclose(back.cov, state.cov, atol=1e-12)
    np.testing.assert_allclose(back.mean, state.mean, atol=1e-12)


def test_added_noise_variances(preset):
    var_ox, var_op = added_noise_variances(preset)
    assert var_ox == pytest.approx(0.84375 * 0.43 + 0.1 + 0.14, abs=1e-12)
    assert var_op == pytest.approx(0.44, abs=1e-12)


@pytest.mark.parametrize(
    "phi, stored, expected",
    [(0.0, (2.02, 0.52), (0.08, 0.29)), (90.0, (0.72, 1.90), (0.13, 0.32))],
)
def test_infer_added_noise(preset, phi, stored, expected):
    noise = infer_added_noise(stored, preset, phi)
    assert noise.var_Sx == pytest.approx(expected[0], abs=0.01)
    assert noise.var_Sp == pytest.approx(expected[1], abs=0.01)
    assert not noise.negative


def test_infer_added_noise_roundtrip(preset):
    params = preset.replace(var_Sx=0.05, var_Sp=0.2)
    stored = store_noisy(squeezed_state(4, 90), params)
    noise = infer_added_noise(tuple(np.diag(stored.cov)), params, 90)
    assert noise.var_Sx == pytest.approx(0.05, abs=1e-12)
    assert noise.var_Sp == pytest.approx(0.2, abs=1e-12)


def test_infer_added_noise_negative(preset):
    with pytest.warns(UserWarning, match="Negative"):
        noise = infer_added_noise((1.0, 0.1), preset, 0)
    assert noise.negative


def test_excess_noise(preset):
    excess = excess_noise(variance_blocks(), preset)
    assert excess.x == pytest.approx(0.4725, abs=1e-4)
    assert excess.p == pytest.approx(0.38, abs=1e-4)
    assert excess.ideal_x == pytest.approx(0.3628, abs=1e-4)
    # within the quoted uncertainties of 0.47(6) and 0.38(11)
    assert abs(excess.x - 0.47) < 0.06
    assert abs(excess.p - 0.38) < 0.11
    with pytest.raises(ValueError):
        excess_noise([], preset)


def test_sideband_to_cossin_product():
    cs = basis_transform(two_mode_squeezed(4), ModeBasis.SIDEBAND, ModeBasis.COSSIN)
    cov = np.asarray(cs.cov)
    np.testing.assert_allclose(cov[:2, 2:], 0.0, atol=1e-12)
    np.testing.assert_allclose(cov[:2, :2], np.diag([0.125, 2.0]), atol=1e-12)
    np.testing.assert_allclose(cov[2:, 2:], np.diag([0.125, 2.0]), atol=1e-12)


def test_basis_cycles():
    bases = list(ModeBasis)
    for a in bases:
        for b in bases:
            there = basis_map(a, b)
            back = basis_map(b, a)
            np.testing.assert_allclose((back @ there).matrix, np.eye(4), atol=1e-12)
            for c in bases:
                cycle = basis_map(c, a) @ basis_map(b, c) @ there
                np.testing.assert_allclose(cycle.matrix, np.eye(4), atol=1e-12)
    np.testing.assert_allclose(basis_map("sideband", "local").matrix, np.eye(4), atol=1e-12)
    with pytest.raises(ValueError):
        basis_map("sideband", "nope")


def test_local_picture_perfect():
    tms = two_mode_squeezed(4)
    stored = to_light_frame(storage_in_local_picture(tms, PRESETS["perfect"]))
    np.testing.assert_allclose(stored.cov, tms.cov, atol=1e-12)


def test_local_picture_sideband_to_cell():
    upper = displace(vacuum(2), 0, [1.0, 2.0])
    stored = to_light_frame(storage_in_local_picture(upper, PRESETS["perfect"]))
    cell1, cell2 = reduce_state(stored, 0), reduce_state(stored, 1)
    np.testing.assert_allclose(cell1.mean, [1.0, 2.0], atol=1e-12)
    np.testing.assert_allclose(cell2.mean, [0.0, 0.0], atol=1e-12)
    np.testing.assert_allclose(cell2.cov, vacuum().cov, atol=1e-12)


def test_local_picture_cell_marginal(preset):
    symmetric = preset.replace(var_xA_init=0.0, var_Sx=0.2, var_Sp=0.2)
    tms = two_mode_squeezed(4)
    cell = reduce_state(storage_in_local_picture(tms, symmetric), 0)
    single = store_noisy(reduce_state(tms, 0), symmetric)
    np.testing.assert_allclose(cell.cov, single.cov, atol=1e-12)
    nu = symplectic_eigenvalues(storage_in_local_picture(tms, preset).cov)
    assert float(nu.min()) >= 0.5 - 1e-9


def test_calibrate_kappa():
    params = MemoryParams()
    assert simulate_kappa_readout(params, 5.0) == pytest.approx(5.0)
    assert calibrate_kappa(simulate_kappa_readout(params, 5.0), 5.0) == pytest.approx(1.0)
    weak = MemoryParams(kappa=0.8)
    assert calibrate_kappa(simulate_kappa_readout(weak, 5.0), 5.0) == pytest.approx(0.64)
    with pytest.raises(ValueError):
        calibrate_kappa(1.0, 0.0)


@pytest.mark.parametrize("g0", [0.0, 0.5, 1.3])
def test_calibrate_feedback_gain(g0):
    params = MemoryParams(g=g0)
    g = calibrate_feedback_gain(simulate_gain_readout(params, 5.0), 5.0, params)
    assert g == pytest.approx(optimal_gain(params), abs=1e-9)
    calibrated = params.replace(g=g)
    assert simulate_gain_readout(calibrated, 5.0) == pytest.approx(-5.0, abs=1e-9)


def test_calibrate_feedback_gain_unit_transfer():
    params = MemoryParams(kappa=0.8, g=0.3)
    g = calibrate_feedback_gain(simulate_gain_readout(params, 5.0), 5.0, params)
    # (1 - κ/Z²) / √(1 - κ²/Z²)
    assert g == pytest.approx(0.875 / np.sqrt(0.9), abs=1e-9)
    assert simulate_gain_readout(params.replace(g=g), 5.0) == pytest.approx(-5.0, abs=1e-9)
    assert g < optimal_gain(params)
