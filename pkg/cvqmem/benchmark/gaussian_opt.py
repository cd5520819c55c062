from __future__ import annotations
import logging
from warnings import warn
from typing import Optional, Tuple

import numpy as np
import jax
import jax.numpy as jnp
import jax.random as jr
from scipy.optimize import minimize

from ..global_defs import get_seed
from ..fidelity import Alphabet
from ..utils import DataTracer
from .strategy import (
    ClassicalStrategy,
    BenchmarkResult,
    ACHIEVABLE,
    _squeezed_covs,
    _strategy_value,
    channel_gain,
    strategy_fidelity,
)

logger = logging.getLogger(__name__)


def _noise_cov(scale: jax.Array, log_sq: jax.Array, angle: jax.Array) -> jax.Array:
    """ν R(θ) diag(e^a, e^{−a}) Rᵀ, which satisfies det ≥ 1/4 for ν ≥ 1/2."""
    c, s = jnp.cos(angle), jnp.sin(angle)
    R = jnp.array([[c, -s], [s, c]])
    return scale * R @ jnp.diag(jnp.array([jnp.exp(log_sq), jnp.exp(-log_sq)])) @ R.T


def _unpack(theta: jax.Array):
    a, alpha, b, c, beta, w = theta[:6]
    M = _noise_cov(0.5 * (1 + b**2), a, alpha)
    W = _noise_cov(0.5 * (1 + w**2), c, beta)
    return M, W


def strategy_from_params(
    theta: np.ndarray, gain_target: float, attenuate_input: bool = True
) -> ClassicalStrategy:
    """
    Maps the unconstrained optimizer vector (a, α, b, c, β, w[, k]) to a
    valid strategy. In fixed-gain mode ``k`` is absent and set to ``gain_target``.
    """
    theta = jnp.asarray(theta)
    M, W = _unpack(theta)
    k = theta[6] if attenuate_input else gain_target
    return ClassicalStrategy(M, W, float(k))


def _initial_points(
    key: jax.Array, restarts: int, gain_target: float, attenuate_input: bool
) -> np.ndarray:
    n_params = 7 if attenuate_input else 6
    # heterodyne + coherent re-preparation at unit channel gain
    x0 = np.zeros((1, n_params))
    if attenuate_input:
        x0[0, 6] = 1 / gain_target
    if restarts == 1:
        return x0

    k1, k2, k3 = jr.split(key, 3)
    n = restarts - 1
    log_sq = 0.5 * jr.normal(k1, (n, 2))
    angles = jr.uniform(k2, (n, 2), maxval=np.pi)
    extra = 0.3 * jr.normal(k3, (n, 2))
    rand = np.stack(
        [log_sq[:, 0], angles[:, 0], extra[:, 0], log_sq[:, 1], angles[:, 1], extra[:, 1]],
        axis=1,
    )
    if attenuate_input:
        k = jr.uniform(jr.fold_in(key, 1), (n, 1), maxval=1.5 / gain_target)
        rand = np.concatenate([rand, np.asarray(k)], axis=1)
    return np.concatenate([x0, rand], axis=0)


def optimize_gaussian_strategy(
    alphabet: Alphabet,
    gain_target: float,
    attenuate_input: bool = True,
    seed: Optional[int] = None,
    restarts: int = 5,
    maxfev: int = 2000,
    nodes: int = 32,
    n_phases: int = 64,
) -> Tuple[ClassicalStrategy, BenchmarkResult]:
    """
    Best Gaussian measure-and-prepare strategy found by Nelder-Mead with
    ``restarts`` starting points. The first start is heterodyne detection with
    coherent re-preparation; the others are drawn from ``seed``.

    The returned value is a fidelity achieved by a physical classical channel,
    hence a lower bound on the benchmark.
    """
    if gain_target <= 0 and attenuate_input:
        raise ValueError("'gain_target' should be positive in attenuated mode")
    if restarts < 1:
        raise ValueError(f"'restarts' should be positive, got {restarts}")
    if seed is None:
        seed = get_seed()

    xi, weights = alphabet.displacement_grid(nodes)
    V = _squeezed_covs(alphabet.s, alphabet.phase_grid(n_phases))
    lam = gain_target**2 if attenuate_input else 1.0

    @jax.jit
    def objective(theta):
        M, W = _unpack(theta)
        k = theta[6] if attenuate_input else gain_target
        return -_strategy_value(M, W, k, lam, V, xi, weights)

    starts = _initial_points(jr.key(seed), restarts, gain_target, attenuate_input)
    tracer = DataTracer()
    best_x, best_val, total_fev = None, -np.inf, 0
    for i, x0 in enumerate(starts):
        res = minimize(
            lambda t: float(objective(jnp.asarray(t))),
            x0,
            method="Nelder-Mead",
            options={"maxfev": maxfev, "xatol": 1e-8, "fatol": 1e-10},
        )
        total_fev += res.nfev
        value = -float(res.fun)
        tracer.append(value)
        logger.info("restart %d: fidelity %.10g after %d evaluations", i, value, res.nfev)
        if not res.success:
            warn(f"Nelder-Mead restart {i} did not converge: {res.message}")
        if value > best_val:
            best_x, best_val = res.x, value

    strategy = strategy_from_params(best_x, gain_target, attenuate_input)
    k, _ = channel_gain(strategy, gain_target, attenuate_input)
    logger.info(
        "best strategy over %d restarts: gain %.6g, fidelity %.10g", len(tracer), k, tracer.best()
    )
    value = strategy_fidelity(
        strategy, alphabet, gain_target, attenuate_input, nodes, n_phases, check=True
    )
    return strategy, BenchmarkResult(
        value=float(np.clip(value, 0.0, 1.0)),
        kind=ACHIEVABLE,
        truncation_tail=0.0,
        iterations=int(total_fev),
        seed=int(seed),
    )
