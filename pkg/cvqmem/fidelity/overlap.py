from __future__ import annotations

import jax
import jax.numpy as jnp

from ..gaussian import GaussianState


@jax.jit
def overlap_from_moments(V1: jax.Array, V2: jax.Array, delta: jax.Array) -> jax.Array:
    """
    tr(ρ₁ρ₂) = exp(−½ δᵀ(V₁ + V₂)⁻¹ δ) / √det(V₁ + V₂) for single-mode
    covariances; ``delta`` may carry leading batch dimensions.
    """
    sigma = V1 + V2
    det = sigma[0, 0] * sigma[1, 1] - sigma[0, 1] * sigma[1, 0]
    dx, dp = delta[..., 0], delta[..., 1]
    quad = (sigma[1, 1] * dx**2 - 2 * sigma[0, 1] * dx * dp + sigma[0, 0] * dp**2) / det
    return jnp.exp(-0.5 * quad) / jnp.sqrt(det)


def gaussian_overlap(pure: GaussianState, mixed: GaussianState) -> float:
    """
    Overlap ⟨ψ|ρ|ψ⟩ of a pure Gaussian state with another Gaussian state of
    the same number of modes.
    """
    if pure.n_modes != mixed.n_modes:
        raise ValueError(
            f"Mode counts differ: {pure.n_modes} and {mixed.n_modes}"
        )
    if not pure.is_pure():
        raise ValueError("The first argument of 'gaussian_overlap' should be pure")
    sigma = pure.cov + mixed.cov
    sign, logdet = jnp.linalg.slogdet(sigma)
    if sign <= 0 or not jnp.isfinite(logdet):
        raise ValueError("Singular covariance sum in 'gaussian_overlap'")
    delta = pure.mean - mixed.mean
    quad = delta @ jnp.linalg.solve(sigma, delta)
    return float(jnp.exp(-0.5 * quad - 0.5 * logdet))
