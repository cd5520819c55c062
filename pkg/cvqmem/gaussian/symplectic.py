from __future__ import annotations
from typing import Optional, Sequence

import numpy as np
import jax.numpy as jnp
import equinox as eqx
from jaxtyping import Array, ArrayLike, Float

from ..global_defs import get_default_dtype, SYMPLECTIC_TOL
from .state import GaussianState, symplectic_form


class SymplecticMap(eqx.Module):
    """
    Affine symplectic map r ↦ S r + shift on the quadrature vector.
    """

    matrix: Float[Array, "2n 2n"]
    shift: Float[Array, "2n"]

    def __init__(self, matrix: ArrayLike, shift: Optional[ArrayLike] = None):
        dtype = get_default_dtype()
        matrix = jnp.asarray(matrix, dtype=dtype)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] % 2:
            raise ValueError(f"'matrix' should be square of even size, got {matrix.shape}")
        if shift is None:
            shift = jnp.zeros(matrix.shape[0], dtype=dtype)
        shift = jnp.asarray(shift, dtype=dtype).reshape(-1)
        if shift.shape[0] != matrix.shape[0]:
            raise ValueError("'shift' length doesn't match 'matrix'")

        omega = symplectic_form(matrix.shape[0] // 2)
        err = float(jnp.max(jnp.abs(matrix @ omega @ matrix.T - omega)))
        if err > SYMPLECTIC_TOL:
            raise ValueError(f"'matrix' is not symplectic, |SΩSᵀ - Ω| = {err:.3e}")

        self.matrix = matrix
        self.shift = shift

    @property
    def n_modes(self) -> int:
        return self.matrix.shape[0] // 2

    def __matmul__(self, other: SymplecticMap) -> SymplecticMap:
        """Composition, ``(A @ B)(r) = A(B(r))``."""
        if other.n_modes != self.n_modes:
            raise ValueError("Can't compose maps on different numbers of modes")
        return SymplecticMap(
            self.matrix @ other.matrix, self.matrix @ other.shift + self.shift
        )

    def inverse(self) -> SymplecticMap:
        n = self.n_modes
        omega = symplectic_form(n)
        # S⁻¹ = -Ω Sᵀ Ω for symplectic S
        inv = -omega @ self.matrix.T @ omega
        return SymplecticMap(inv, -inv @ self.shift)

    def embed(self, n_modes: int, modes: Sequence[int]) -> SymplecticMap:
        """Acts with this map on ``modes`` of an ``n_modes`` system, identity elsewhere."""
        if len(modes) != self.n_modes:
            raise ValueError(f"'modes' should have length {self.n_modes}")
        idx = np.concatenate([[2 * m, 2 * m + 1] for m in modes])
        if idx.max() >= 2 * n_modes or len(set(modes)) != len(modes):
            raise ValueError(f"Invalid 'modes' {modes} for {n_modes} modes")
        matrix = jnp.eye(2 * n_modes, dtype=self.matrix.dtype)
        matrix = matrix.at[np.ix_(idx, idx)].set(self.matrix)
        shift = jnp.zeros(2 * n_modes, dtype=self.matrix.dtype).at[idx].set(self.shift)
        return SymplecticMap(matrix, shift)


def identity_map(n_modes: int) -> SymplecticMap:
    return SymplecticMap(jnp.eye(2 * n_modes))


def phase_rotation(theta: float, n_modes: int = 1, mode: int = 0) -> SymplecticMap:
    """
    Rotation of one mode by theta degrees in phase space:
    x' = cosθ x − sinθ p, p' = sinθ x + cosθ p.
    theta = 90 is the π-pulse exchanging (x, p) → (−p, x).
    """
    t = np.deg2rad(theta)
    R = jnp.array([[np.cos(t), -np.sin(t)], [np.sin(t), np.cos(t)]])
    return SymplecticMap(R).embed(n_modes, [mode])


def apply_symplectic(state: GaussianState, smap: SymplecticMap) -> GaussianState:
    if smap.n_modes != state.n_modes:
        raise ValueError(
            f"Map on {smap.n_modes} modes can't act on a {state.n_modes}-mode state"
        )
    S = smap.matrix
    return GaussianState(S @ state.mean + smap.shift, S @ state.cov @ S.T)
