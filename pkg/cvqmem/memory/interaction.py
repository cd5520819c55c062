from __future__ import annotations
from typing import Literal

import numpy as np
import jax.numpy as jnp
from scipy.optimize import brentq

from ..gaussian import GaussianState, SymplecticMap, tensor_product
from .params import MemoryParams

# Mode order of the joint system: light (x_L, p_L) first, atoms (x_A, p_A) second.
LIGHT, ATOMS = 0, 1


def interaction_map(params: MemoryParams) -> SymplecticMap:
    """
    Atom-light interaction on (x_L, p_L, x_A, p_A):

        x_L' = c x_L + κ p_A        p_L' = c p_L − (κ/Z²) x_A
        x_A' = c x_A + κ p_L        p_A' = c p_A − (κ/Z²) x_L

    with c = √(1 − κ²/Z²). At κ = 0 this is the identity, at κ² = Z² a swap
    up to squeezing by Z².
    """
    c = params.swap_coefficient
    k = params.kappa
    kz = k / params.Z2
    S = jnp.array(
        [
            [c, 0.0, 0.0, k],
            [0.0, c, -kz, 0.0],
            [0.0, k, c, 0.0],
            [-kz, 0.0, 0.0, c],
        ]
    )
    return SymplecticMap(S)


def feedback_map(g: float) -> SymplecticMap:
    """
    Displacement of p_A by −g times the light quadrature x_L. The conjugate
    kick p_L ← p_L − g x_A only touches the measured and discarded light.
    """
    S = jnp.array(
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, -g, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [-g, 0.0, 0.0, 1.0],
        ]
    )
    return SymplecticMap(S)


def storage_map(params: MemoryParams) -> SymplecticMap:
    return feedback_map(params.g) @ interaction_map(params)


def _p_atom_residual(g: float, params: MemoryParams) -> float:
    S = (feedback_map(g) @ interaction_map(params)).matrix
    return float(S[3, 3])


def optimal_gain(
    params: MemoryParams, method: Literal["auto", "analytic", "numeric"] = "auto"
) -> float:
    """
    Feedback gain cancelling the initial p_A in the stored p_A.

    The analytic value √(1 − 1/Z²) holds at κ = 1; other couplings are solved
    numerically on the composed maps.
    """
    if params.kappa <= 0:
        raise ValueError("'kappa' should be positive to cancel the atomic noise")
    if method == "auto":
        method = "analytic" if params.kappa == 1 else "numeric"

    if method == "analytic":
        if params.kappa != 1:
            raise ValueError("The analytic gain requires kappa = 1")
        return float(np.sqrt(1 - 1 / params.Z2))
    if method == "numeric":
        hi = 2 * params.swap_coefficient / params.kappa + 1.0
        return float(brentq(_p_atom_residual, 0.0, hi, args=(params,), xtol=1e-14))
    raise ValueError(f"Unknown method '{method}'")


def _initial_atoms(params: MemoryParams) -> GaussianState:
    cov = jnp.diag(jnp.array([params.var_xA_init, params.var_pA_init]))
    return GaussianState(jnp.zeros(2), cov, validate=False)


def store_ideal(input_light: GaussianState, params: MemoryParams) -> GaussianState:
    """
    Stores a single light mode into the atoms by the interaction followed by
    homodyne detection of x_L and feedback onto p_A. The feedback of the
    measured value is represented by its exact Gaussian reduction, i.e. the
    atomic marginal of the composed map.

    At κ = 1 and optimal g: x_A^fin = √(1 − 1/Z²) x_A + p_L, p_A^fin = −x_L.
    """
    if input_light.n_modes != 1:
        raise ValueError(
            f"'input_light' should be a single mode, got {input_light.n_modes} modes"
        )
    joint = tensor_product(input_light, _initial_atoms(params))
    S = storage_map(params).matrix
    mean = S @ joint.mean
    cov = S @ joint.cov @ S.T
    idx = np.array([2 * ATOMS, 2 * ATOMS + 1])
    return GaussianState(mean[idx], cov[np.ix_(idx, idx)])
