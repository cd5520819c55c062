from __future__ import annotations
import logging
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import jax
import jax.numpy as jnp

from ..gaussian import squeezed_cov, squeezed_state
from ..memory import (
    MemoryParams,
    store_ideal,
    store_noisy,
    to_light_frame,
    DEFAULT_SQUEEZING,
)
from .alphabet import Alphabet, EXPERIMENT_PHASES
from .overlap import overlap_from_moments, gaussian_overlap

logger = logging.getLogger(__name__)

QUADRATURE_TOL = 1e-6


@jax.jit
def _weighted_overlap(V_pure, V_stored, gain, nodes, weights):
    delta = (gain - 1) * nodes
    return jnp.sum(weights * overlap_from_moments(V_pure, V_stored, delta))


def stored_light_cov(
    phi: float,
    memory: MemoryParams,
    s: float = DEFAULT_SQUEEZING,
    stored: Optional[Mapping[float, Tuple[float, float]]] = None,
) -> jnp.ndarray:
    """
    Covariance, in light quadratures, of the state stored from a squeezed input
    at phase ``phi``: the measured (Var x_A, Var p_A) when ``stored`` is given,
    the store_noisy prediction otherwise.
    """
    if stored is None:
        atoms = store_noisy(squeezed_state(s, phi), memory.for_phase(phi))
        return to_light_frame(atoms).cov
    for key, (var_xA, var_pA) in stored.items():
        if np.isclose(key, phi):
            return jnp.diag(jnp.array([var_pA, var_xA]))
    raise ValueError(f"No stored variances for phase {phi}")


def _phase_average(alphabet, memory, nodes, stored) -> float:
    xi, w = alphabet.displacement_grid(nodes)
    values = []
    for phi in alphabet.phases:
        V_pure = squeezed_cov(alphabet.s, phi)
        V_stored = stored_light_cov(phi, memory, alphabet.s, stored)
        values.append(float(_weighted_overlap(V_pure, V_stored, memory.G, xi, w)))
    return float(np.mean(values))


def average_fidelity(
    alphabet: Alphabet,
    memory: MemoryParams,
    nodes: int = 32,
    stored: Optional[Mapping[float, Tuple[float, float]]] = None,
) -> float:
    """
    Overlap between input and stored state averaged over the alphabet, by
    tensor-product Gauss-Legendre quadrature over the displacement square
    and an unweighted mean over the phases. Stored means are the input
    means times the memory gain G.

    Args:
        stored: Measured (Var x_A, Var p_A) per phase. When omitted, the
            store_noisy model with the per-phase noise of ``memory`` is used.

    Raises:
        RuntimeError: doubling the nodes changes the result by more than 1e-6.
    """
    if alphabet.is_continuous:
        raise ValueError("'average_fidelity' needs a discrete set of phases")
    value = _phase_average(alphabet, memory, nodes, stored)
    if alphabet.d_max > 0:
        refined = _phase_average(alphabet, memory, 2 * nodes, stored)
        logger.debug(
            "average fidelity d_max=%s: %.12g (%d nodes), %.12g (%d nodes)",
            alphabet.d_max, value, nodes, refined, 2 * nodes,
        )
        if abs(refined - value) > QUADRATURE_TOL:
            raise RuntimeError(
                f"Quadrature not converged at d_max={alphabet.d_max}: "
                f"{value:.10g} vs {refined:.10g} with {nodes} and {2 * nodes} nodes"
            )
        value = refined
    return value


def fidelity_curve(
    d_max_list: Sequence[float],
    memory: MemoryParams,
    s: float = DEFAULT_SQUEEZING,
    phases: Sequence[float] = EXPERIMENT_PHASES,
    nodes: int = 32,
    stored: Optional[Mapping[float, Tuple[float, float]]] = None,
) -> List[Tuple[float, float]]:
    return [
        (float(d), average_fidelity(Alphabet(d, s, tuple(phases)), memory, nodes, stored))
        for d in d_max_list
    ]


def ideal_fidelities(
    memory: MemoryParams,
    s: float = DEFAULT_SQUEEZING,
    var_xA_values: Sequence[float] = (0.5,),
) -> Dict[float, Dict[str, float]]:
    """
    Overlaps of the lossless, noiseless storage for squeezed vacuum at the two
    experimental phases, for each initial atomic variance in ``var_xA_values``.
    """
    result = {}
    for var_xA in var_xA_values:
        params = memory.replace(var_xA_init=var_xA)
        row = {}
        for phi in EXPERIMENT_PHASES:
            pure = squeezed_state(s, phi)
            stored = to_light_frame(store_ideal(pure, params))
            row[f"phi{int(phi)}"] = gaussian_overlap(pure, stored)
        row["mean"] = float(np.mean(list(row.values())))
        result[float(var_xA)] = row
    return result
