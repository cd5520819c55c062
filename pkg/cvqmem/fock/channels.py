import numpy as np
import jax
import jax.numpy as jnp
from scipy.special import gammaln

from .fock import FockArray


def loss_kraus(eta: float, cutoff: int) -> jnp.ndarray:
    """
    Kraus operators A_l of the pure-loss channel with transmission ``eta``
    in the truncated number basis, stacked as ``[l, m, n]``:

        A_l |n⟩ = √C(n, l) η^{(n−l)/2} (1 − η)^{l/2} |n − l⟩.
    """
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"'eta' should be in [0, 1], got {eta}")
    dim = cutoff + 1
    n = np.arange(dim)[None, :]
    l = np.arange(dim)[:, None]
    valid = n >= l
    nl = np.where(valid, n - l, 0)
    log_binom = 0.5 * (gammaln(n + 1) - gammaln(l + 1) - gammaln(nl + 1))
    coef = np.exp(log_binom) * np.power(eta, nl / 2) * np.power(1 - eta, l / 2)
    coef = np.where(valid, coef, 0.0)

    kraus = np.zeros((dim, dim, dim))
    ls, ns = np.nonzero(valid)
    kraus[ls, ns - ls, ns] = coef[ls, ns]
    return jnp.asarray(kraus)


@jax.jit
def attenuate_pure_states(psis: jax.Array, kraus: jax.Array) -> jax.Array:
    """Density matrices Σ_l A_l |ψ⟩⟨ψ| A_l† for a batch of vectors ``psis``."""
    vecs = jnp.einsum("lmn,bn->blm", kraus, psis)
    return jnp.einsum("blm,bln->bmn", vecs, vecs.conj())


def apply_loss_fock(state: FockArray, eta: float) -> FockArray:
    """Pure-loss channel on a single-mode number-basis state; returns a density matrix."""
    kraus = loss_kraus(eta, state.cutoff)
    if state.is_pure:
        rho = attenuate_pure_states(state.amplitudes[None, :], kraus)[0]
    else:
        rho = jnp.einsum("lmn,nk,ljk->mj", kraus, state.amplitudes, kraus.conj())
    return FockArray(rho, state.tail, state.cutoff)
