from __future__ import annotations
from typing import Callable, Optional, Sequence

import numpy as np
import jax.numpy as jnp
import equinox as eqx
from jaxtyping import Array, Complex

from ..global_defs import FOCK_TAIL_TOL, FOCK_MAX_CUTOFF, BENCHMARK_TAIL_TOL, MAX_SQUEEZING


class FockArray(eqx.Module):
    """
    Number-basis representation truncated at photon number ``cutoff``.

    ``amplitudes`` is a vector for pure states (Schmidt coefficients on
    |n⟩|n⟩ for two-mode squeezed vacuum) or a matrix for density matrices.
    ``tail`` is the probability mass beyond the cutoff, lost by truncation.
    """

    amplitudes: Complex[Array, "..."]
    tail: float
    cutoff: int = eqx.field(static=True)

    def __init__(self, amplitudes, tail: float, cutoff: Optional[int] = None):
        amplitudes = jnp.asarray(amplitudes, dtype=jnp.complex128)
        if not bool(jnp.all(jnp.isfinite(amplitudes))):
            raise ValueError("'amplitudes' should be finite")
        if cutoff is None:
            cutoff = amplitudes.shape[0] - 1
        if amplitudes.shape[0] != cutoff + 1:
            raise ValueError(f"'amplitudes' should have length cutoff + 1 = {cutoff + 1}")
        self.amplitudes = amplitudes
        self.tail = float(tail)
        self.cutoff = int(cutoff)

    @property
    def is_pure(self) -> bool:
        return self.amplitudes.ndim == 1

    def probabilities(self) -> jnp.ndarray:
        if self.is_pure:
            return jnp.abs(self.amplitudes) ** 2
        return jnp.real(jnp.diagonal(self.amplitudes))

    def norm(self) -> float:
        return float(jnp.sum(self.probabilities()))

    def density_matrix(self) -> jnp.ndarray:
        if self.is_pure:
            return jnp.outer(self.amplitudes, self.amplitudes.conj())
        return self.amplitudes

    def truncate(self, cutoff: int) -> FockArray:
        """Drops photon numbers above ``cutoff``; the dropped mass joins the tail."""
        if not 0 <= cutoff <= self.cutoff:
            raise ValueError(f"'cutoff' should be in [0, {self.cutoff}], got {cutoff}")
        if self.is_pure:
            amps = self.amplitudes[: cutoff + 1]
        else:
            amps = self.amplitudes[: cutoff + 1, : cutoff + 1]
        truncated = FockArray(amps, self.tail, cutoff)
        dropped = self.norm() - truncated.norm()
        return FockArray(amps, self.tail + dropped, cutoff)


def _check_cutoff(cutoff: Optional[int]) -> None:
    if cutoff is not None and (cutoff < 0 or cutoff > FOCK_MAX_CUTOFF):
        raise ValueError(f"'cutoff' should be in [0, {FOCK_MAX_CUTOFF}], got {cutoff}")


def _squeezing_parameter(s: float) -> float:
    if not s > 0:
        raise ValueError(f"'s' should be positive, got {s}")
    if s > MAX_SQUEEZING or 1 / s > MAX_SQUEEZING:
        raise ValueError(f"'s' = {s} exceeds the supported squeezing range")
    return 0.5 * np.log(s)


def default_cutoff(
    amplitude_fn: Callable[[int], np.ndarray],
    tol: float = FOCK_TAIL_TOL,
    cap: int = FOCK_MAX_CUTOFF,
) -> int:
    """
    Smallest cutoff whose tail mass is below ``tol``, where ``amplitude_fn(n)``
    returns the unnormalized amplitudes up to photon number n. Capped at ``cap``.
    """
    probs = np.abs(amplitude_fn(cap)) ** 2
    tails = 1.0 - np.cumsum(probs)
    below = np.nonzero(tails < tol)[0]
    return int(below[0]) if below.size else cap


def _tms_coefficients(s: float, cutoff: int) -> np.ndarray:
    r = _squeezing_parameter(s)
    lam = np.tanh(r)
    n = np.arange(cutoff + 1)
    return np.sqrt(1 - lam**2) * lam**n


def tms_fock(s: float, cutoff: Optional[int] = None) -> FockArray:
    """
    Schmidt amplitudes c_n = √(1 − λ²) λⁿ of two-mode squeezed vacuum,
    λ = (√s − 1/√s)/(√s + 1/√s).
    """
    _check_cutoff(cutoff)
    if cutoff is None:
        cutoff = default_cutoff(lambda n: _tms_coefficients(s, n))
    c = _tms_coefficients(s, cutoff)
    tail = max(1.0 - float(np.sum(c**2)), 0.0)
    return FockArray(c, tail, cutoff)


def _displaced_squeezed_amplitudes(
    s: float, phi: float, displacement: Sequence[float], cutoff: int
) -> np.ndarray:
    """
    ⟨n|D(α)S(ζ)|0⟩ with α = (x + ip)/√2 and ζ = r e^{2iφ}, from the condition
    b|ψ⟩ = 0 with b = (a − α) cosh r + (a† − α*) e^{2iφ} sinh r:

        √(n+1) cosh r c_{n+1} = γ c_n − e^{2iφ} sinh r √n c_{n−1},
        γ = α cosh r + α* e^{2iφ} sinh r.
    """
    r = _squeezing_parameter(s)
    x, p = displacement
    alpha = (x + 1j * p) / np.sqrt(2)
    phase = np.exp(2j * np.deg2rad(phi))
    ch, sh = np.cosh(r), np.sinh(r)

    c = np.zeros(cutoff + 1, dtype=np.complex128)
    c[0] = np.exp(-0.5 * abs(alpha) ** 2 - 0.5 * np.conj(alpha) ** 2 * phase * np.tanh(r))
    c[0] /= np.sqrt(ch)
    gamma = alpha * ch + np.conj(alpha) * phase * sh
    for n in range(cutoff):
        prev = c[n - 1] if n > 0 else 0.0
        c[n + 1] = (gamma * c[n] - phase * sh * np.sqrt(n) * prev) / (ch * np.sqrt(n + 1))
    return c


def displaced_squeezed_fock(
    s: float,
    phi: float = 0.0,
    displacement: Sequence[float] = (0.0, 0.0),
    cutoff: Optional[int] = None,
    tail_tol: float = BENCHMARK_TAIL_TOL,
) -> FockArray:
    """
    Normalized number-basis amplitudes of the squeezed state with covariance
    ``squeezed_cov(s, phi)`` and mean ``displacement``.

    Raises:
        ValueError: the tail beyond ``cutoff`` exceeds ``tail_tol``.
    """
    _check_cutoff(cutoff)
    if cutoff is None:
        cutoff = default_cutoff(
            lambda n: _displaced_squeezed_amplitudes(s, phi, displacement, n)
        )
    c = _displaced_squeezed_amplitudes(s, phi, displacement, cutoff)
    norm = float(np.sum(np.abs(c) ** 2))
    tail = max(1.0 - norm, 0.0)
    if tail > tail_tol:
        raise ValueError(
            f"Cutoff {cutoff} too small: tail mass {tail:.3e} exceeds {tail_tol:.1e}"
        )
    return FockArray(c / np.sqrt(norm), tail, cutoff)


def coherent_fock(
    displacement: Sequence[float], cutoff: Optional[int] = None, tail_tol: float = 1.0
) -> FockArray:
    return displaced_squeezed_fock(1.0, 0.0, displacement, cutoff, tail_tol)


def photon_statistics(fock: FockArray) -> jnp.ndarray:
    """
    Photon-number distribution; for two-mode squeezed vacuum this is the
    distribution of either reduced mode.
    """
    return fock.probabilities()
