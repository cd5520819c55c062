from __future__ import annotations
import logging
from typing import Optional, Tuple

import numpy as np
import jax
import jax.numpy as jnp

from ..global_defs import BENCHMARK_TAIL_TOL
from ..fidelity import Alphabet
from ..fock import displaced_squeezed_fock, coherent_fock, loss_kraus, attenuate_pure_states
from ..fock.fock import _displaced_squeezed_amplitudes, default_cutoff
from ..utils import DataTracer, pinvh_sqrt, psd_part, top_eigh
from .strategy import BenchmarkResult, SEESAW

logger = logging.getLogger(__name__)

MONOTONE_TOL = 1e-10


def _alphabet_states(
    alphabet: Alphabet, cutoff: Optional[int], nodes: int, n_phases: int, tail_tol: float
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, float, int]:
    """Pure alphabet states in the number basis, their weights and the outcome nodes."""
    phases = np.asarray(alphabet.phase_grid(n_phases))
    xi, w = alphabet.displacement_grid(nodes)
    xi, w = np.asarray(xi), np.asarray(w)

    if cutoff is None:
        cutoff = max(
            default_cutoff(
                lambda n: _displaced_squeezed_amplitudes(alphabet.s, phi, d, n),
                tol=tail_tol,
            )
            for phi in phases
            for d in xi
        )
        logger.info("automatic cutoff %d", cutoff)

    psis, weights, tail = [], [], 0.0
    for phi in phases:
        for d, wd in zip(xi, w):
            state = displaced_squeezed_fock(alphabet.s, phi, d, cutoff, tail_tol)
            psis.append(np.asarray(state.amplitudes))
            weights.append(wd / len(phases))
            tail = max(tail, state.tail)
    return np.stack(psis), np.asarray(weights), xi, w, tail, cutoff


def _initial_povm(outcomes: np.ndarray, weights: np.ndarray, cutoff: int) -> jax.Array:
    """
    Truncated heterodyne measurement: weighted coherent projectors on the
    outcome nodes, rescaled to sum to at most the identity, plus the remainder
    as an extra outcome.
    """
    betas = np.stack([np.asarray(coherent_fock(y, cutoff).amplitudes) for y in outcomes])
    proj = jnp.einsum("m,ma,mb->mab", weights, betas, betas.conj())
    return _complete(proj)


def _complete(ops: jax.Array) -> jax.Array:
    X = pinvh_sqrt(jnp.sum(ops, axis=0))
    povm = jnp.einsum("ab,mbc,cd->mad", X, ops, X)
    eye = jnp.eye(ops.shape[-1], dtype=povm.dtype)
    remainder = psd_part(eye - jnp.sum(povm, axis=0))
    return jnp.concatenate([povm, remainder[None]], axis=0)


def _complete_last(ops: jax.Array) -> jax.Array:
    """Normalizes ``ops`` and adds the missing weight to the last outcome."""
    X = pinvh_sqrt(jnp.sum(ops, axis=0))
    povm = jnp.einsum("ab,mbc,cd->mad", X, ops, X)
    eye = jnp.eye(ops.shape[-1], dtype=povm.dtype)
    remainder = psd_part(eye - jnp.sum(povm, axis=0))
    return povm.at[-1].add(remainder)


def _score(povm: jax.Array, A: jax.Array) -> jax.Array:
    return jnp.real(jnp.einsum("jab,jba->", povm, A))


@jax.jit
def _reprepare(povm, psis, rhos, weights):
    """Optimal re-prepared state per outcome, the top eigenvector of B_j."""
    p = jnp.real(jnp.einsum("jab,iba->ij", povm, rhos))
    B = jnp.einsum("i,ij,ia,ib->jab", weights, p, psis, psis.conj())
    vals, vecs = top_eigh(B)
    return jnp.sum(vals), vecs


@jax.jit
def _measure(povm, vecs, psis, rhos, weights):
    """Two candidate measurements for fixed re-preparations and their scores."""
    q = jnp.abs(jnp.einsum("ja,ia->ij", vecs.conj(), psis)) ** 2
    A = jnp.einsum("i,ij,iab->jab", weights, q, rhos)
    current = _score(povm, A)

    product = _complete_last(A @ povm @ A)
    vals, tops = top_eigh(A)
    rank_one = _complete_last(
        jnp.einsum("j,ja,jb->jab", vals, tops, tops.conj())
    )
    score_product = _score(product, A)
    score_rank_one = _score(rank_one, A)
    return current, product, score_product, rank_one, score_rank_one


def seesaw_truncated(
    alphabet: Alphabet,
    gain_target: float,
    cutoff: Optional[int] = None,
    nodes: int = 8,
    n_phases: int = 8,
    max_iter: int = 200,
    rtol: float = 1e-6,
    tail_tol: float = BENCHMARK_TAIL_TOL,
    tracer: Optional[DataTracer] = None,
) -> BenchmarkResult:
    """
    Alternating optimization of a general measure-and-prepare channel in the
    truncated number basis. Inputs are attenuated to transmission
    ``gain_target**2`` and then measured; the discrete alphabet uses
    ``nodes`` Gauss-Legendre points per axis and ``n_phases`` phases for a
    continuous phase set.

    Re-preparations are updated exactly (top eigenvectors). The measurement
    update keeps the better of a multiplicative and a rank-one candidate and
    is rejected when neither improves the objective, so the recorded
    objective is non-decreasing. The result is an estimate: it neither
    bounds the benchmark from above nor is it guaranteed optimal.

    Raises:
        ValueError: an alphabet state has tail mass above ``tail_tol``.
        RuntimeError: the objective decreases or becomes non-finite.
    """
    if not 0 < gain_target <= 1:
        raise ValueError(f"'gain_target' should be in (0, 1], got {gain_target}")
    if max_iter < 1:
        raise ValueError(f"'max_iter' should be positive, got {max_iter}")
    if tracer is None:
        tracer = DataTracer()

    psis, weights, xi, w, tail, cutoff = _alphabet_states(
        alphabet, cutoff, nodes, n_phases, tail_tol
    )
    psis = jnp.asarray(psis)
    weights = jnp.asarray(weights)
    rhos = attenuate_pure_states(psis, loss_kraus(gain_target**2, cutoff))
    povm = _initial_povm(gain_target * xi, w, cutoff)
    logger.info(
        "seesaw: %d states, %d outcomes, cutoff %d, tail %.2e",
        psis.shape[0], povm.shape[0], cutoff, tail,
    )

    previous = -np.inf
    last = None
    iterations = 0
    for it in range(max_iter):
        iterations = it + 1
        value, vecs = _reprepare(povm, psis, rhos, weights)
        value = float(value)
        if not np.isfinite(value):
            raise RuntimeError(f"Non-finite objective at iteration {it}")
        if value < previous - MONOTONE_TOL:
            raise RuntimeError(
                f"Objective decreased from {previous:.12g} to {value:.12g} at iteration {it}"
            )
        tracer.append(value)
        logger.debug("iteration %d: fidelity %.12g", it, value)
        if last is not None and abs(value - last) <= rtol * abs(value):
            break
        last = value

        current, product, s_product, rank_one, s_rank_one = _measure(
            povm, vecs, psis, rhos, weights
        )
        s_product, s_rank_one = float(s_product), float(s_rank_one)
        previous = float(current)
        if max(s_product, s_rank_one) > previous:
            if s_product >= s_rank_one:
                povm, previous = product, s_product
            else:
                povm, previous = rank_one, s_rank_one
    else:
        logger.warning("seesaw stopped after %d iterations without converging", max_iter)

    value = float(np.clip(value, 0.0, 1.0))
    logger.info("seesaw fidelity %.10g after %d iterations", value, iterations)
    return BenchmarkResult(
        value=value,
        kind=SEESAW,
        truncation_tail=float(tail),
        iterations=iterations,
        seed=None,
    )
