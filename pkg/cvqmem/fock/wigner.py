from __future__ import annotations
from typing import Optional, Tuple

import numpy as np
import jax
import jax.numpy as jnp
import equinox as eqx

from ..gaussian import GaussianState, symplectic_eigenvalues


class WignerGrid(eqx.Module):
    """
    Square phase-space grid for trapezoidal integration of single-mode Wigner
    functions. ``center=None`` lets :func:`wigner_overlap` center the grid on
    the midpoint of the two states.
    """

    extent: float = 10.0
    resolution: int = eqx.field(static=True, default=801)
    center: Optional[Tuple[float, float]] = eqx.field(static=True, default=None)

    def __check_init__(self):
        if not self.extent > 0:
            raise ValueError(f"'extent' should be positive, got {self.extent}")
        if self.resolution < 3:
            raise ValueError(f"'resolution' should be at least 3, got {self.resolution}")

    def axes(self) -> Tuple[jnp.ndarray, jnp.ndarray]:
        cx, cp = (0.0, 0.0) if self.center is None else self.center
        u = jnp.linspace(-self.extent, self.extent, self.resolution)
        return cx + u, cp + u

    def weights(self) -> jnp.ndarray:
        h = 2 * self.extent / (self.resolution - 1)
        w = jnp.full(self.resolution, h).at[0].set(h / 2).at[-1].set(h / 2)
        return w

    def values(self, state: GaussianState) -> jnp.ndarray:
        """Wigner function of a single-mode Gaussian state on the grid, [x, p]."""
        _check_single_mode(state)
        x, p = self.axes()
        return _gaussian_wigner(state.mean, state.cov, x, p)


def _check_single_mode(state: GaussianState) -> None:
    if state.n_modes != 1:
        raise ValueError(f"Wigner grids hold single modes, got {state.n_modes} modes")


@jax.jit
def _gaussian_wigner(mean, cov, x, p):
    inv = jnp.linalg.inv(cov)
    dx = x[:, None] - mean[0]
    dp = p[None, :] - mean[1]
    quad = inv[0, 0] * dx**2 + 2 * inv[0, 1] * dx * dp + inv[1, 1] * dp**2
    return jnp.exp(-0.5 * quad) / (2 * jnp.pi * jnp.sqrt(jnp.linalg.det(cov)))


def _check_extent(state: GaussianState, grid: WignerGrid) -> None:
    sigma = float(jnp.sqrt(jnp.max(jnp.linalg.eigvalsh(state.cov))))
    center = np.zeros(2) if grid.center is None else np.asarray(grid.center)
    offset = float(np.max(np.abs(np.asarray(state.mean) - center)))
    if offset + 6 * sigma > grid.extent:
        raise ValueError(
            f"Grid extent {grid.extent} doesn't cover 6σ = {6 * sigma:.3g} "
            f"around a mean {offset:.3g} away from the grid center"
        )


def _centered(a: GaussianState, b: GaussianState, grid: WignerGrid) -> WignerGrid:
    if grid.center is not None:
        return grid
    mid = tuple(float(v) for v in (a.mean + b.mean) / 2)
    return WignerGrid(grid.extent, grid.resolution, mid)


def wigner_normalization_error(state: GaussianState, grid: WignerGrid = WignerGrid()) -> float:
    """|∫W − 1| of a state on the grid."""
    _check_single_mode(state)
    grid = _centered(state, state, grid)
    _check_extent(state, grid)
    w = grid.weights()
    return abs(float(w @ grid.values(state) @ w) - 1.0)


def wigner_overlap(
    a: GaussianState, b: GaussianState, grid: WignerGrid = WignerGrid()
) -> float:
    """tr(ρ_a ρ_b) = 2π ∫ W_a W_b dx dp by the trapezoid rule on ``grid``."""
    _check_single_mode(a)
    _check_single_mode(b)
    grid = _centered(a, b, grid)
    _check_extent(a, grid)
    _check_extent(b, grid)
    w = grid.weights()
    integrand = grid.values(a) * grid.values(b)
    return float(2 * jnp.pi * (w @ integrand @ w))


def thermal_photon_number(cov) -> float:
    """Mean photon number ν − 1/2 of a single-mode state with symplectic eigenvalue ν."""
    nu = symplectic_eigenvalues(cov)
    if nu.shape[0] != 1:
        raise ValueError("'cov' should be a single-mode covariance")
    return float(nu[0] - 0.5)
