from __future__ import annotations
from warnings import warn
from typing import NamedTuple

import numpy as np
import jax.numpy as jnp
import equinox as eqx

from .state import GaussianState, squeezed_state, rotated_variances


def _check_transmission(name: str, eta: float) -> None:
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"'{name}' should be in [0, 1], got {eta}")


class LossBudget(eqx.Module):
    """
    Transmissions of the light path: propagation to the memory (``eta_loss``),
    entrance windows of the cells (``eta_ent``) and detection (``eta_det``).
    """

    eta_loss: float = 1.0
    eta_ent: float = 1.0
    eta_det: float = 1.0

    def __check_init__(self):
        _check_transmission("eta_loss", self.eta_loss)
        _check_transmission("eta_ent", self.eta_ent)
        _check_transmission("eta_det", self.eta_det)

    @property
    def eta_tot(self) -> float:
        return self.eta_loss * self.eta_ent * self.eta_det

    @property
    def memory_gain(self) -> float:
        """G = √(η_loss η_ent), the ratio of stored to input mean values."""
        return float(np.sqrt(self.eta_loss * self.eta_ent))


def apply_loss(state: GaussianState, mode: int, eta: float) -> GaussianState:
    """Beamsplitter loss of transmission ``eta`` mixing vacuum into one mode."""
    _check_transmission("eta", eta)
    idx = state.mode_indices(mode)
    dim = 2 * state.n_modes
    scale = jnp.ones(dim, dtype=state.cov.dtype).at[idx].set(np.sqrt(eta))
    noise = jnp.zeros(dim, dtype=state.cov.dtype).at[idx].set((1 - eta) / 2)
    mean = scale * state.mean
    cov = scale[:, None] * state.cov * scale[None, :] + jnp.diag(noise)
    return GaussianState(mean, cov)


class LossEstimate(NamedTuple):
    eta: float
    residual: float


def infer_total_loss(
    measured_var_sq: float, measured_var_antisq: float, s: float
) -> LossEstimate:
    """
    Transmission η explaining a measured squeezed variance,
    η/(2s) + (1 − η)/2 = measured_var_sq. The residual is the mismatch of the
    anti-squeezed quadrature, ηs/2 + (1 − η)/2 − measured_var_antisq.
    """
    if not s > 1:
        if s == 1:
            raise ValueError("'s' = 1 carries no information on the loss")
        raise ValueError(f"'s' should be larger than 1, got {s}")
    lo, hi = 1 / (2 * s), s / 2
    if not lo <= measured_var_sq <= 0.5:
        raise ValueError(
            f"'measured_var_sq' should be in [{lo:.6g}, 0.5], got {measured_var_sq}"
        )
    if not 0.5 <= measured_var_antisq <= hi:
        raise ValueError(
            f"'measured_var_antisq' should be in [0.5, {hi:.6g}], got {measured_var_antisq}"
        )
    eta = (0.5 - measured_var_sq) / (0.5 - lo)
    residual = eta * hi + (1 - eta) / 2 - measured_var_antisq
    if abs(residual) > 0.05:
        warn(
            f"Anti-squeezed variance is inconsistent with pure loss, residual {residual:.3g}"
        )
    return LossEstimate(float(eta), float(residual))


def memory_input_variances(s: float, budget: LossBudget, phi: float = 0.0) -> tuple:
    """
    Squeezed and anti-squeezed variances of the state reaching the atoms, i.e.
    the pure input attenuated by η_loss·η_ent.
    """
    state = apply_loss(squeezed_state(s, phi), 0, budget.eta_loss * budget.eta_ent)
    return rotated_variances(state, phi)


def add_noise(state: GaussianState, mode: int, variances: tuple) -> GaussianState:
    """Classical Gaussian noise with the given (Var x, Var p) added to one mode."""
    var_x, var_p = variances
    if var_x < 0 or var_p < 0:
        raise ValueError(f"'variances' should be non-negative, got {variances}")
    idx = state.mode_indices(mode)
    noise = jnp.zeros(2 * state.n_modes, dtype=state.cov.dtype).at[idx].set(
        jnp.array([var_x, var_p])
    )
    return GaussianState(state.mean, state.cov + jnp.diag(noise))
