from __future__ import annotations
from warnings import warn
from typing import Iterable, NamedTuple, Optional, Sequence, Tuple


from ..gaussian import (
    GaussianState,
    apply_loss,
    add_noise,
    apply_symplectic,
    phase_rotation,
    squeezed_cov,
)
from ..utils import DataTracer
from .basis import ModeBasis, basis_map
from .params import MemoryParams, DEFAULT_SQUEEZING


def to_light_frame(state: GaussianState) -> GaussianState:
    """
    Maps stored atomic quadratures back to the light quadratures they hold,
    x = −p_A, p = x_A, on every mode.
    """
    for mode in range(state.n_modes):
        state = apply_symplectic(state, phase_rotation(90, state.n_modes, mode))
    return state


def to_atomic_frame(state: GaussianState) -> GaussianState:
    """Inverse of :func:`to_light_frame`, x_A = p, p_A = −x."""
    for mode in range(state.n_modes):
        state = apply_symplectic(state, phase_rotation(-90, state.n_modes, mode))
    return state


def _atomic_noise(params: MemoryParams) -> Tuple[float, float]:
    """Noise beyond the transmission loss on (x_A, p_A)."""
    return (
        params.swap_coefficient**2 * params.var_xA_init + params.var_Sx,
        params.var_Sp,
    )


def added_noise_variances(params: MemoryParams) -> Tuple[float, float]:
    """
    (Var O_x, Var O_p): all noise reaching the stored x_A and p_A, vacuum
    admixture from the loss included.
    """
    vac = (1 - params.G**2) / 2
    nx, np_ = _atomic_noise(params)
    return nx + vac, np_ + vac


def _store_modes(
    state: GaussianState, params: MemoryParams, modes: Sequence[int]
) -> GaussianState:
    G = params.G
    if not 0 <= G <= 1:
        raise ValueError(f"Memory gain should be in [0, 1], got {G}")
    noise = _atomic_noise(params)
    n = state.n_modes
    for mode in modes:
        state = apply_loss(state, mode, G**2)
        state = apply_symplectic(state, phase_rotation(-90, n, mode))
        state = add_noise(state, mode, noise)
    return state


def store_noisy(input_pure_light: GaussianState, params: MemoryParams) -> GaussianState:
    """
    Storage with the transmission and entrance losses and the extra noise of a
    real memory:

        x_A^fin = √(1 − 1/Z²) x_A + G p_L + √(1 − G²) p_vac + S_x
        p_A^fin = −G x_L − √(1 − G²) x_vac + S_p
    """
    if input_pure_light.n_modes != 1:
        raise ValueError("'input_pure_light' should be a single mode")
    return _store_modes(input_pure_light, params, [0])


def storage_in_local_picture(
    input_state: GaussianState,
    params: MemoryParams,
    modes: Sequence[int] = (0, 1),
) -> GaussianState:
    """
    Stores a pair of light sidebands into two atomic cells. The memory acts on
    the cos and sin modes, and the cells are its local modes; the upper
    sideband ends up in cell 1 and the lower in cell 2.

    ``modes`` picks the (+, −) pair out of a larger state; the stored cells
    replace them in place and the other modes are left untouched.
    """
    n = input_state.n_modes
    if len(modes) != 2 or n < 2:
        raise ValueError(f"Storage needs a pair of modes, got {modes} of {n}")
    to_cs = basis_map(ModeBasis.SIDEBAND, ModeBasis.COSSIN).embed(n, modes)
    to_local = basis_map(ModeBasis.COSSIN, ModeBasis.LOCAL).embed(n, modes)
    state = apply_symplectic(input_state, to_cs)
    state = _store_modes(state, params, modes)
    return apply_symplectic(state, to_local)


class AddedNoise(NamedTuple):
    var_Sx: float
    var_Sp: float
    negative: bool


def infer_added_noise(
    stored_vars: Tuple[float, float],
    params: MemoryParams,
    phi: float,
    s: float = DEFAULT_SQUEEZING,
) -> AddedNoise:
    """
    Inverts the stored variances (Var x_A, Var p_A) of a squeezed-vacuum input
    at phase ``phi`` for the extra noise (Var S_x, Var S_p). Negative values
    are returned as they are and flagged.
    """
    var_xA, var_pA = stored_vars
    if var_xA < 0 or var_pA < 0:
        raise ValueError(f"'stored_vars' should be non-negative, got {stored_vars}")
    V = squeezed_cov(s, phi)
    G2 = params.G**2
    vac = (1 - G2) / 2
    var_Sx = var_xA - params.swap_coefficient**2 * params.var_xA_init - G2 * float(V[1, 1]) - vac
    var_Sp = var_pA - G2 * float(V[0, 0]) - vac
    negative = var_Sx < 0 or var_Sp < 0
    if negative:
        warn(
            f"Negative added noise ({var_Sx:.4g}, {var_Sp:.4g}) at phi={phi}, "
            "the stored variances are below the model's loss floor"
        )
    return AddedNoise(float(var_Sx), float(var_Sp), negative)


class ExcessNoise(NamedTuple):
    x: float
    x_err: Optional[float]
    p: float
    p_err: Optional[float]
    ideal_x: float


def excess_noise(
    blocks: Iterable[Tuple[float, float, float]],
    params: MemoryParams,
    s: float = DEFAULT_SQUEEZING,
) -> ExcessNoise:
    """
    Noise the memory adds on top of the transmission loss, averaged over
    measured (phi, Var x_A, Var p_A) blocks. ``ideal_x`` is what the finite
    initial atomic squeezing alone leaves, (1 − 1/Z²)·Var(x_A).
    """
    G2 = params.G**2
    vac = (1 - G2) / 2
    xs, ps = DataTracer(), DataTracer()
    for phi, var_xA, var_pA in blocks:
        V = squeezed_cov(s, phi)
        xs.append(var_xA - G2 * float(V[1, 1]) - vac)
        ps.append(var_pA - G2 * float(V[0, 0]) - vac)
    if not len(xs):
        raise ValueError("'blocks' should not be empty")
    return ExcessNoise(
        float(xs.mean()),
        xs.uncertainty(),
        float(ps.mean()),
        ps.uncertainty(),
        params.swap_coefficient**2 * params.var_xA_init,
    )
