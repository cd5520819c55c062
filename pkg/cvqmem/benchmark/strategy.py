from __future__ import annotations
import logging
from warnings import warn
from typing import NamedTuple, Optional

import jax
import jax.numpy as jnp
import equinox as eqx
from jaxtyping import Array, ArrayLike, Float

from ..global_defs import get_default_dtype, SYMMETRY_TOL, UNCERTAINTY_TOL
from ..fidelity import Alphabet, overlap_from_moments

logger = logging.getLogger(__name__)

PHASE_TOL = 1e-4
NODE_TOL = 1e-6

ACHIEVABLE = "achievable-lower-bound"
SEESAW = "seesaw-estimate"
ENVELOPE = "monotone-envelope"


def _check_cov(name: str, A: jax.Array) -> None:
    if float(jnp.max(jnp.abs(A - A.T))) > SYMMETRY_TOL:
        raise ValueError(f"'{name}' should be symmetric")
    det = float(A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0])
    if float(A[0, 0]) <= 0 or det < 0.25 - UNCERTAINTY_TOL:
        raise ValueError(
            f"'{name}' violates the uncertainty relation, det = {det:.6g} < 1/4"
        )


class ClassicalStrategy(eqx.Module):
    """
    Gaussian measure-and-prepare channel. The input is measured with outcome
    noise ``measurement_noise`` added to its quadratures, and a Gaussian state
    with covariance ``reprep_cov`` and mean ``displacement_gain`` times the
    outcome is prepared.

    Both covariances must satisfy V + iΩ/2 ≥ 0, which makes the measurement a
    valid POVM and the re-prepared state physical. ``validate=False`` admits
    the unphysical noiseless limit for cross-checks.
    """

    measurement_noise: Float[Array, "2 2"]
    reprep_cov: Float[Array, "2 2"]
    displacement_gain: float

    def __init__(
        self,
        measurement_noise: ArrayLike,
        reprep_cov: ArrayLike,
        displacement_gain: float,
        validate: bool = True,
    ):
        dtype = get_default_dtype()
        M = jnp.asarray(measurement_noise, dtype=dtype)
        W = jnp.asarray(reprep_cov, dtype=dtype)
        if M.shape != (2, 2) or W.shape != (2, 2):
            raise ValueError("Strategy covariances should be 2×2")
        if validate:
            _check_cov("measurement_noise", M)
            _check_cov("reprep_cov", W)
        self.measurement_noise = M
        self.reprep_cov = W
        self.displacement_gain = float(displacement_gain)

    @classmethod
    def heterodyne(cls, displacement_gain: float = 1.0) -> ClassicalStrategy:
        """Heterodyne detection followed by coherent-state re-preparation."""
        half = jnp.eye(2) / 2
        return cls(half, half, displacement_gain)


class BenchmarkResult(NamedTuple):
    value: float
    kind: str
    truncation_tail: float
    iterations: int
    seed: Optional[int] = None

    def to_dict(self) -> dict:
        return self._asdict()


def _squeezed_covs(s: float, phases_deg: jax.Array) -> jax.Array:
    t = jnp.deg2rad(phases_deg)
    c, sn = jnp.cos(t), jnp.sin(t)
    a, b = 1 / (2 * s), s / 2
    xx = a * c**2 + b * sn**2
    pp = a * sn**2 + b * c**2
    xp = (a - b) * c * sn
    return jnp.stack([jnp.stack([xx, xp], -1), jnp.stack([xp, pp], -1)], -2)


@jax.jit
def _strategy_value(M, W, k, lam, V_phases, nodes, weights):
    """
    Average overlap of the pure inputs (covariances ``V_phases``, means on
    ``nodes``) with the channel output, whose mean is k√λ ξ and covariance
    W + k²(λV + (1 − λ)/2 + M).
    """
    eye = jnp.eye(2)
    delta = (k * jnp.sqrt(lam) - 1) * nodes

    def per_phase(V):
        out = W + k**2 * (lam * V + (1 - lam) / 2 * eye + M)
        return jnp.sum(weights * overlap_from_moments(V, out, delta))

    return jnp.mean(jax.vmap(per_phase)(V_phases))


def channel_gain(
    strategy: ClassicalStrategy, gain_target: float, attenuate_input: bool
) -> tuple:
    """(k, λ): re-preparation gain and input attenuation of the benchmark setting."""
    if not 0 <= gain_target <= 1:
        raise ValueError(f"'gain_target' should be in [0, 1], got {gain_target}")
    if attenuate_input:
        return strategy.displacement_gain, gain_target**2
    return gain_target, 1.0


def strategy_fidelity(
    strategy: ClassicalStrategy,
    alphabet: Alphabet,
    gain_target: float,
    attenuate_input: bool = True,
    nodes: int = 32,
    n_phases: int = 64,
    check: bool = True,
) -> float:
    """
    Alphabet-averaged fidelity of a Gaussian measure-and-prepare channel.

    With ``attenuate_input`` the inputs first pass a loss channel of
    transmission ``gain_target**2`` and the strategy's own displacement gain is
    used; otherwise the inputs are measured directly and the re-prepared
    mean is fixed to ``gain_target`` times the outcome.

    Continuous phase sets are sampled at ``n_phases`` equally spaced angles.
    With ``check`` the phase count and the quadrature nodes are doubled once
    and a warning is issued if the value moves by more than the tolerances
    (1e-4 for phases, 1e-6 for nodes); the refined value is returned.
    """
    k, lam = channel_gain(strategy, gain_target, attenuate_input)
    M, W = strategy.measurement_noise, strategy.reprep_cov

    def evaluate(n_nodes, n_ph):
        xi, w = alphabet.displacement_grid(n_nodes)
        V = _squeezed_covs(alphabet.s, alphabet.phase_grid(n_ph))
        return float(_strategy_value(M, W, k, lam, V, xi, w))

    value = evaluate(nodes, n_phases)
    if not check:
        return value

    if alphabet.is_continuous:
        refined = evaluate(nodes, 2 * n_phases)
        if abs(refined - value) > PHASE_TOL:
            warn(
                f"Phase average not converged: {value:.8g} with {n_phases} phases, "
                f"{refined:.8g} with {2 * n_phases}"
            )
        value, n_phases = refined, 2 * n_phases
    if alphabet.d_max > 0:
        refined = evaluate(2 * nodes, n_phases)
        if abs(refined - value) > NODE_TOL:
            warn(
                f"Quadrature not converged at d_max={alphabet.d_max}: {value:.10g} "
                f"with {nodes} nodes, {refined:.10g} with {2 * nodes}"
            )
        value = refined
    logger.debug("strategy fidelity %.12g at d_max=%s", value, alphabet.d_max)
    return value
