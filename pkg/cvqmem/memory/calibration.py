from __future__ import annotations

import numpy as np

from ..gaussian import phase_rotation
from .interaction import interaction_map, storage_map
from .params import MemoryParams

_MIN_INJECTED = 1e-9


def _check_injected(injected_mean: float) -> None:
    if abs(injected_mean) < _MIN_INJECTED:
        raise ValueError(
            f"'injected_mean' should exceed {_MIN_INJECTED} in magnitude, got {injected_mean}"
        )


def simulate_kappa_readout(params: MemoryParams, injected_mean: float) -> float:
    """
    Mean of x_L in the readout pulse after the sequence: a light pulse with
    ⟨p_L⟩ = injected_mean interacts with the atoms, a π-pulse rotates the
    atomic spin, and a second light pulse reads it out. Equals κ²·injected_mean.
    """
    S = np.asarray(interaction_map(params).matrix)
    pi_pulse = np.asarray(phase_rotation(90, 2, 1).matrix)
    r = np.array([0.0, injected_mean, 0.0, 0.0])
    r = pi_pulse @ (S @ r)
    # fresh light pulse, atoms keep their mean
    r[:2] = 0.0
    r = S @ r
    return float(r[0])


def calibrate_kappa(simulated_means: float, injected_mean: float) -> float:
    """κ² from the readout mean of :func:`simulate_kappa_readout`."""
    _check_injected(injected_mean)
    return float(simulated_means / injected_mean)


def simulate_gain_readout(params: MemoryParams, injected_mean: float) -> float:
    """Stored ⟨p_A^fin⟩ for a light pulse with ⟨x_L⟩ = injected_mean."""
    S = np.asarray(storage_map(params).matrix)
    r = S @ np.array([injected_mean, 0.0, 0.0, 0.0])
    return float(r[3])


def calibrate_feedback_gain(
    readout_mean: float, injected_mean: float, params: MemoryParams
) -> float:
    """
    Feedback gain giving unit transfer ⟨p_A^fin⟩ = −⟨x_L⟩, from a readout
    taken with the current gain ``params.g``. The transfer is linear in g with
    slope √(1 − κ²/Z²), so one step is exact. At κ = 1 the result is
    :func:`optimal_gain`; other couplings trade atomic noise for unit gain.
    """
    _check_injected(injected_mean)
    transfer = -readout_mean / injected_mean
    c = params.swap_coefficient
    if c == 0:
        raise ValueError("Feedback has no effect at kappa² = Z2")
    return float(params.g + (1.0 - transfer) / c)
