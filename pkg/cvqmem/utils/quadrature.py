from typing import Tuple
import numpy as np
import jax.numpy as jnp


def gauss_legendre(n_points: int, a: float, b: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Gauss-Legendre nodes and weights on [a, b]. Weights sum to ``b - a``.
    """
    if n_points < 1:
        raise ValueError(f"'n_points' should be positive, got {n_points}")
    points, weights = np.polynomial.legendre.leggauss(n_points)
    nodes = 0.5 * (b - a) * points + 0.5 * (b + a)
    return nodes, 0.5 * (b - a) * weights


def square_grid(d_max: float, n_points: int) -> Tuple[jnp.ndarray, jnp.ndarray]:
    """
    Tensor-product Gauss-Legendre rule for the uniform density on the square
    ``|x|, |p| <= d_max``.

    Returns:
        nodes: shape (n_points**2, 2), displacement vectors (x, p).
        weights: shape (n_points**2,), summing to one.

    ``d_max = 0`` collapses to the single point at the origin.
    """
    if d_max < 0:
        raise ValueError(f"'d_max' should be non-negative, got {d_max}")
    if d_max == 0:
        return jnp.zeros((1, 2)), jnp.ones(1)

    x, w = gauss_legendre(n_points, -d_max, d_max)
    w = w / (2 * d_max)
    xx, pp = np.meshgrid(x, x, indexing="ij")
    nodes = np.stack([xx.ravel(), pp.ravel()], axis=1)
    weights = np.outer(w, w).ravel()
    return jnp.asarray(nodes), jnp.asarray(weights)


def uniform_phases(n_phases: int) -> jnp.ndarray:
    """Equally spaced squeezing orientations over [0, 180) degrees."""
    if n_phases < 1:
        raise ValueError(f"'n_phases' should be positive, got {n_phases}")
    return jnp.arange(n_phases) * (180.0 / n_phases)
