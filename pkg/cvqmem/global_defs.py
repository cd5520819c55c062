from typing import Optional
from jaxtyping import DTypeLike
from functools import partial
import jax
import jax.numpy as jnp
import jax.random as jr


jax.config.update("jax_enable_x64", True)


DTYPE = jnp.float64

# Covariance symmetry, checked elementwise
SYMMETRY_TOL = 1e-12
# Lower bound slack on symplectic eigenvalues, absorbs round-off of ~10 chained maps
UNCERTAINTY_TOL = 1e-9
# S Ω Sᵀ = Ω, elementwise
SYMPLECTIC_TOL = 1e-10
MAX_SQUEEZING = 1e6
# Default truncation tail for number-basis amplitudes
FOCK_TAIL_TOL = 1e-8
FOCK_MAX_CUTOFF = 200
# Tail allowed for alphabet states in the benchmark workspace
BENCHMARK_TAIL_TOL = 1e-4


def set_default_dtype(dtype: DTypeLike) -> None:
    if not jnp.issubdtype(dtype, jnp.floating):
        raise ValueError("'dtype' should be float types")
    global DTYPE
    DTYPE = dtype


def get_default_dtype() -> jnp.dtype:
    return DTYPE


def get_complex_dtype() -> jnp.dtype:
    return jnp.result_type(DTYPE, 1j)


def set_random_seed(seed: int) -> None:
    if seed < 0:
        raise ValueError(f"'seed' should be non-negative, got {seed}")
    global KEY, SEED
    SEED = int(seed)
    KEY = jr.key(SEED)


set_random_seed(0)


def get_seed() -> int:
    return SEED


def get_subkeys(num: Optional[int] = None) -> jax.Array:
    global KEY
    KEY, new_keys = _gen_keys(KEY, num)
    return new_keys


@partial(jax.jit, static_argnums=1)
def _gen_keys(key, num: Optional[int] = None) -> jax.Array:
    nkeys = 2 if num is None else num + 1
    new_keys = jr.split(key, nkeys)
    key = new_keys[0]
    new_keys = new_keys[1] if num is None else new_keys[1:]
    return key, new_keys
