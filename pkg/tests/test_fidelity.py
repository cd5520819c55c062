import pytest
import numpy as np
import jax.numpy as jnp

from cvqmem.gaussian import (
    GaussianState,
    squeezed_state,
    two_mode_squeezed,
    vacuum,
    apply_loss,
    add_noise,
    apply_symplectic,
    phase_rotation,
)
from cvqmem.memory import get_preset, PRESETS
from cvqmem.fidelity import (
    Alphabet,
    EXPERIMENT_PHASES,
    STORED_RECORDS,
    MEASURED_PHASE_VARIANCES,
    overlap_from_moments,
    gaussian_overlap,
    stored_overlap,
    overlap_table,
    variance_blocks,
    average_fidelity,
    fidelity_curve,
    ideal_fidelities,
    stored_light_cov,
)


def _mixed(var_x, var_p, mean=(0.0, 0.0)):
    return GaussianState(jnp.asarray(mean), jnp.diag(jnp.array([var_x, var_p])))


def test_gaussian_overlap():
    assert gaussian_overlap(squeezed_state(4, 0), _mixed(0.52, 1.99)) == pytest.approx(0.6234, abs=1e-4)
    assert gaussian_overlap(squeezed_state(4, 90), _mixed(1.95, 0.73)) == pytest.approx(0.5441, abs=1e-4)
    assert gaussian_overlap(vacuum(1), vacuum(1)) == pytest.approx(1.0)


def test_gaussian_overlap_invalid():
    with pytest.raises(ValueError, match="pure"):
        gaussian_overlap(_mixed(1.0, 1.0), vacuum(1))
    with pytest.raises(ValueError, match="Mode counts"):
        gaussian_overlap(vacuum(1), two_mode_squeezed(4))


@pytest.mark.parametrize("theta", [17.0, 45.0, 90.0, 133.0, 270.0])
def test_gaussian_overlap_rotation_invariant(theta):
    pure = squeezed_state(4, 30, (1.2, -0.7))
    mixed = add_noise(apply_loss(squeezed_state(3, 10, (0.9, -0.2)), 0, 0.7), 0, (0.1, 0.3))
    R = phase_rotation(theta)
    rotated = gaussian_overlap(apply_symplectic(pure, R), apply_symplectic(mixed, R))
    assert rotated == pytest.approx(gaussian_overlap(pure, mixed), abs=1e-12)


def test_overlap_from_moments_batched():
    V = jnp.diag(jnp.array([0.125, 2.0]))
    deltas = jnp.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    values = overlap_from_moments(V, V, deltas)
    assert values.shape == (3,)
    assert float(values[0]) == pytest.approx(1.0)
    assert float(values[1]) == pytest.approx(np.exp(-0.5 / 0.25))


def test_records():
    assert len(STORED_RECORDS) == 18
    assert len(variance_blocks()) == 4


@pytest.mark.parametrize("record", STORED_RECORDS, ids=lambda r: f"{r.mean_x_in}-{r.mean_p_in}-{r.phi_deg}")
def test_stored_overlap(record):
    assert stored_overlap(record) == pytest.approx(record.overlap, abs=0.015)


def test_stored_overlap_rows():
    table = {(r.record.mean_x_in, r.record.mean_p_in, r.record.phi_deg): r for r in overlap_table()}
    assert table[(0.0, 0.0, 0.0)].computed == pytest.approx(0.62, abs=0.01)
    assert table[(0.0, 0.0, 90.0)].computed == pytest.approx(0.55, abs=0.01)
    assert table[(0.0, 3.8, 0.0)].computed == pytest.approx(0.60, abs=0.01)
    assert table[(7.6, 7.6, 0.0)].computed == pytest.approx(0.15, abs=0.01)
    assert table[(7.6, 7.6, 90.0)].computed == pytest.approx(0.27, abs=0.015)
    within = sum(r.deviation <= 0.01 for r in table.values())
    assert within >= 15


def test_alphabet():
    alphabet = Alphabet(3.8)
    assert alphabet.phases == EXPERIMENT_PHASES
    xi, w = alphabet.displacement_grid(8)
    assert xi.shape == (64, 2)
    assert float(w.sum()) == pytest.approx(1.0)
    assert float(jnp.max(jnp.abs(xi))) < 3.8
    xi0, w0 = Alphabet(0.0).displacement_grid(32)
    np.testing.assert_allclose(xi0, [[0.0, 0.0]])
    continuous = Alphabet.continuous(3.8)
    assert continuous.is_continuous
    assert continuous.phase_grid(4).tolist() == [0.0, 45.0, 90.0, 135.0]
    with pytest.raises(ValueError):
        Alphabet(-1.0)
    with pytest.raises(ValueError):
        Alphabet(1.0, 4.0, ())


def test_stored_light_cov():
    cov = stored_light_cov(0.0, get_preset(), stored=MEASURED_PHASE_VARIANCES)
    np.testing.assert_allclose(cov, np.diag([0.52, 2.02]))
    with pytest.raises(ValueError, match="No stored"):
        stored_light_cov(45.0, get_preset(), stored=MEASURED_PHASE_VARIANCES)


def test_average_fidelity_experimental():
    params = get_preset()
    f0 = average_fidelity(Alphabet(0.0), params, stored=MEASURED_PHASE_VARIANCES)
    f38 = average_fidelity(Alphabet(3.8), params, stored=MEASURED_PHASE_VARIANCES)
    f76 = average_fidelity(Alphabet(7.6), params, stored=MEASURED_PHASE_VARIANCES)
    assert f0 == pytest.approx(0.586, abs=2e-3)
    assert 0.50 <= f38 <= 0.56
    assert f0 >= f38 >= f76


def test_average_fidelity_model():
    params = get_preset()
    assert average_fidelity(Alphabet(0.0), params) == pytest.approx(0.585, abs=3e-3)
    curve = fidelity_curve([0.0, 3.8, 7.6], params)
    values = [f for _, f in curve]
    assert values == sorted(values, reverse=True)


def test_average_fidelity_perfect_memory():
    alphabet = Alphabet(3.8, 4.0)
    assert average_fidelity(alphabet, PRESETS["perfect"]) == pytest.approx(1.0, abs=1e-9)


def test_average_fidelity_continuous_phases():
    with pytest.raises(ValueError):
        average_fidelity(Alphabet.continuous(3.8), get_preset())


def test_average_fidelity_not_converged():
    with pytest.raises(RuntimeError, match="not converged"):
        average_fidelity(Alphabet(50.0), get_preset(), nodes=4)


def test_ideal_fidelities():
    result = ideal_fidelities(get_preset(), var_xA_values=(0.5, 0.43))
    assert result[0.5]["phi0"] == pytest.approx(0.95, abs=0.01)
    assert result[0.5]["phi90"] == pytest.approx(0.61, abs=0.01)
    assert result[0.5]["mean"] == pytest.approx(0.78, abs=0.01)
    assert result[0.43]["phi0"] == pytest.approx(0.958, abs=1e-3)
