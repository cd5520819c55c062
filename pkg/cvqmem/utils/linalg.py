from typing import Optional
import jax
import jax.numpy as jnp
from jax.scipy.linalg import eigh


def _get_eigs_inv(vals: jax.Array, tol: Optional[float], atol: float) -> jax.Array:
    vals_abs = jnp.abs(vals)
    if tol is None:
        if vals_abs.dtype == jnp.float64:
            tol = 1e-12
        elif vals_abs.dtype == jnp.float32:
            tol = 1e-6
        else:
            raise ValueError(f"Invalid dtype {vals_abs.dtype} for inversion.")

    inv_factor = 1 + ((tol * jnp.max(vals_abs) + atol) / vals_abs) ** 6
    eigs_inv = 1 / (vals * inv_factor)
    return jnp.where(vals_abs > 0.0, eigs_inv, 0.0)


def pinvh_sqrt(H: jax.Array, tol: Optional[float] = None, atol: float = 0.0) -> jax.Array:
    """
    Regularized inverse square root of a positive semidefinite Hermitian matrix.
    Eigenvalues far below ``tol * max`` are smoothly cut off, so that
    ``X H X`` is a projector-like operator bounded by the identity.
    """
    vals, U = eigh(H)
    vals = jnp.clip(vals, 0.0)
    inv = _get_eigs_inv(vals, tol, atol)
    inv_sqrt = jnp.sqrt(jnp.clip(inv, 0.0))
    return (U * inv_sqrt[None, :]) @ U.conj().T


def psd_part(H: jax.Array) -> jax.Array:
    """Projects a Hermitian matrix onto the positive semidefinite cone."""
    H = (H + H.conj().T) / 2
    vals, U = eigh(H)
    vals = jnp.clip(vals, 0.0)
    return (U * vals[None, :]) @ U.conj().T


def top_eigh(H: jax.Array) -> tuple:
    """
    Largest eigenvalue and eigenvector of a (batched) Hermitian matrix.
    """
    vals, vecs = jnp.linalg.eigh(H)
    return vals[..., -1], vecs[..., :, -1]


def is_symmetric(A: jax.Array, tol: float) -> bool:
    return bool(jnp.max(jnp.abs(A - A.T), initial=0.0) <= tol)
