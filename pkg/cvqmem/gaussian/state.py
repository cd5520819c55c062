from __future__ import annotations
from typing import Sequence, Union

import numpy as np
import jax.numpy as jnp
import equinox as eqx
from jaxtyping import Array, ArrayLike, Float

from ..global_defs import (
    get_default_dtype,
    SYMMETRY_TOL,
    UNCERTAINTY_TOL,
    MAX_SQUEEZING,
)


def symplectic_form(n_modes: int) -> Float[Array, "2n 2n"]:
    """Ω for the quadrature ordering (x₁, p₁, ..., x_N, p_N)."""
    omega = jnp.array([[0.0, 1.0], [-1.0, 0.0]], dtype=get_default_dtype())
    return jnp.kron(jnp.eye(n_modes, dtype=omega.dtype), omega)


def symplectic_eigenvalues(cov: ArrayLike) -> Float[Array, "n"]:
    """
    Symplectic eigenvalues of a covariance matrix, in ascending order.
    Computed from the Hermitian matrix i V^{1/2} Ω V^{1/2}, whose eigenvalues
    come in pairs ±ν.
    """
    cov = jnp.asarray(cov, dtype=get_default_dtype())
    n_modes = cov.shape[0] // 2
    vals, U = jnp.linalg.eigh((cov + cov.T) / 2)
    sqrt_cov = (U * jnp.sqrt(jnp.clip(vals, 0.0))[None, :]) @ U.T
    H = 1j * sqrt_cov @ symplectic_form(n_modes) @ sqrt_cov
    nu = jnp.linalg.eigvalsh(H)
    return nu[n_modes:]


def _rotation(phi_deg: float) -> Float[Array, "2 2"]:
    phi = jnp.deg2rad(phi_deg)
    c, s = jnp.cos(phi), jnp.sin(phi)
    return jnp.array([[c, -s], [s, c]], dtype=get_default_dtype())


class GaussianState(eqx.Module):
    """
    Gaussian state of N bosonic modes given by its mean vector and covariance
    matrix, quadratures ordered (x₁, p₁, ..., x_N, p_N) with vacuum variance 1/2.

    The constructor checks symmetry and the uncertainty relation
    (all symplectic eigenvalues ≥ 1/2). Pass ``validate=False`` only for
    intermediate moments that are not states on their own.
    """

    mean: Float[Array, "2n"]
    cov: Float[Array, "2n 2n"]

    def __init__(self, mean: ArrayLike, cov: ArrayLike, validate: bool = True):
        dtype = get_default_dtype()
        mean = jnp.asarray(mean, dtype=dtype).reshape(-1)
        cov = jnp.asarray(cov, dtype=dtype)

        if cov.ndim != 2 or cov.shape[0] != cov.shape[1]:
            raise ValueError(f"'cov' should be a square matrix, got shape {cov.shape}")
        if cov.shape[0] % 2 or cov.shape[0] == 0:
            raise ValueError(f"'cov' should have even positive size, got {cov.shape[0]}")
        if mean.shape[0] != cov.shape[0]:
            raise ValueError(
                f"'mean' of length {mean.shape[0]} doesn't match 'cov' of size {cov.shape[0]}"
            )
        if not bool(jnp.all(jnp.isfinite(cov))) or not bool(jnp.all(jnp.isfinite(mean))):
            raise ValueError("'mean' and 'cov' should be finite")

        if validate:
            asym = float(jnp.max(jnp.abs(cov - cov.T)))
            if asym > SYMMETRY_TOL:
                raise ValueError(f"'cov' should be symmetric, asymmetry {asym:.3e}")
            nu_min = float(jnp.min(symplectic_eigenvalues(cov)))
            if nu_min < 0.5 - UNCERTAINTY_TOL:
                raise ValueError(
                    f"'cov' violates the uncertainty relation, smallest symplectic "
                    f"eigenvalue {nu_min:.12g} < 1/2"
                )

        self.mean = mean
        self.cov = (cov + cov.T) / 2

    @property
    def n_modes(self) -> int:
        return self.cov.shape[0] // 2

    def mode_indices(self, mode: int) -> np.ndarray:
        if not 0 <= mode < self.n_modes:
            raise ValueError(f"'mode' {mode} out of range for {self.n_modes} modes")
        return np.array([2 * mode, 2 * mode + 1])

    def purity(self) -> float:
        """tr ρ² = 1/√det(2V)."""
        return float(1 / jnp.sqrt(jnp.linalg.det(2 * self.cov)))

    def is_pure(self, tol: float = 1e-9) -> bool:
        return abs(float(jnp.linalg.det(2 * self.cov)) - 1.0) <= tol

    def variance(self, coeffs: ArrayLike) -> float:
        """Variance of the linear combination Σ_k coeffs[k] r_k of quadratures."""
        coeffs = jnp.asarray(coeffs, dtype=self.cov.dtype)
        return float(coeffs @ self.cov @ coeffs)

    def __repr__(self) -> str:
        return f"GaussianState(n_modes={self.n_modes}, mean={self.mean}, cov={self.cov})"


def _check_squeezing(s: float) -> None:
    if not s > 0:
        raise ValueError(f"'s' should be positive, got {s}")
    if s > MAX_SQUEEZING or 1 / s > MAX_SQUEEZING:
        raise ValueError(f"'s' = {s} exceeds the supported squeezing range")


def vacuum(n_modes: int = 1) -> GaussianState:
    if n_modes < 1:
        raise ValueError(f"'n_modes' should be positive, got {n_modes}")
    dtype = get_default_dtype()
    return GaussianState(
        jnp.zeros(2 * n_modes, dtype=dtype), jnp.eye(2 * n_modes, dtype=dtype) / 2
    )


def squeezed_cov(s: float, phi: float = 0.0) -> Float[Array, "2 2"]:
    """
    Covariance of a pure squeezed state, squeezed along the direction at angle
    ``phi`` degrees from the x axis: phi=0 squeezes x, phi=90 squeezes p.
    """
    _check_squeezing(s)
    R = _rotation(phi)
    D = jnp.diag(jnp.array([1 / (2 * s), s / 2], dtype=get_default_dtype()))
    return R @ D @ R.T


def squeezed_state(
    s: float, phi: float = 0.0, displacement: Sequence[float] = (0.0, 0.0)
) -> GaussianState:
    return GaussianState(jnp.asarray(displacement), squeezed_cov(s, phi))


def two_mode_squeezed(s: float) -> GaussianState:
    """
    Two-mode squeezed vacuum on the (+, −) sideband pair, with x₊ + x₋ and
    p₊ − p₋ squeezed: Var(x₊ + x₋)/2 = Var(p₊ − p₋)/2 = 1/(2s).
    """
    _check_squeezing(s)
    a = (s + 1 / s) / 4
    c = (s - 1 / s) / 4
    cov = jnp.array(
        [
            [a, 0.0, -c, 0.0],
            [0.0, a, 0.0, c],
            [-c, 0.0, a, 0.0],
            [0.0, c, 0.0, a],
        ],
        dtype=get_default_dtype(),
    )
    return GaussianState(jnp.zeros(4), cov)


def tensor_product(*states: GaussianState) -> GaussianState:
    if not states:
        raise ValueError("'states' should not be empty")
    mean = jnp.concatenate([st.mean for st in states])
    blocks = [st.cov for st in states]
    dim = sum(b.shape[0] for b in blocks)
    cov = jnp.zeros((dim, dim), dtype=get_default_dtype())
    i = 0
    for b in blocks:
        n = b.shape[0]
        cov = cov.at[i : i + n, i : i + n].set(b)
        i += n
    return GaussianState(mean, cov, validate=False)


def reduce_state(state: GaussianState, modes: Union[int, Sequence[int]]) -> GaussianState:
    """Marginal on the given modes, kept in the order given."""
    if isinstance(modes, int):
        modes = [modes]
    idx = np.concatenate([state.mode_indices(m) for m in modes])
    return GaussianState(state.mean[idx], state.cov[np.ix_(idx, idx)], validate=False)


def displace(state: GaussianState, mode: int, d: Sequence[float]) -> GaussianState:
    idx = state.mode_indices(mode)
    mean = state.mean.at[idx].add(jnp.asarray(d, dtype=state.mean.dtype))
    return GaussianState(mean, state.cov, validate=False)


def rotated_variances(state: GaussianState, phi: float, mode: int = 0) -> tuple:
    """
    Variances of the quadratures along and across the direction at angle phi,
    i.e. the squeezed and anti-squeezed variances of a state prepared at phase phi.
    """
    idx = state.mode_indices(mode)
    V = state.cov[np.ix_(idx, idx)]
    phi = np.deg2rad(phi)
    u = jnp.array([np.cos(phi), np.sin(phi)])
    v = jnp.array([-np.sin(phi), np.cos(phi)])
    return float(u @ V @ u), float(v @ V @ v)
