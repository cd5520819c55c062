from __future__ import annotations
from typing import Literal, NamedTuple

import numpy as np

from ..gaussian import (
    GaussianState,
    two_mode_squeezed,
    vacuum,
    tensor_product,
    reduce_state,
    apply_symplectic,
    phase_rotation,
)
from ..memory import (
    MemoryParams,
    added_noise_variances,
    storage_in_local_picture,
    to_light_frame,
    DEFAULT_SQUEEZING,
)

SEPARABLE_BOUND = 2.0

_SIGNS = {
    "+-": (1.0, -1.0),
    "-+": (-1.0, 1.0),
}


def duan_E(state: GaussianState, sign_convention: Literal["+-", "-+"] = "+-") -> float:
    """
    Duan sum of a two-mode state: Var(x₁ + x₂) + Var(p₁ − p₂) for ``"+-"``,
    Var(x₁ − x₂) + Var(p₁ + p₂) for ``"-+"``. Values below 2 certify
    entanglement.
    """
    if state.n_modes != 2:
        raise ValueError(f"'duan_E' needs a 2-mode state, got {state.n_modes} modes")
    try:
        sx, sp = _SIGNS[sign_convention]
    except KeyError:
        raise ValueError(f"Unknown sign convention '{sign_convention}'") from None
    return state.variance([1.0, 0.0, sx, 0.0]) + state.variance([0.0, 1.0, 0.0, sp])


def eof_lower_bound(E: float) -> float:
    """
    Entanglement of formation in ebits of a symmetric two-mode Gaussian state
    with Duan sum E. With Δ = E/2 and c± = (Δ^{1/2} ± Δ^{−1/2})²/4,
    EoF = c₊ log₂ c₊ − c₋ log₂ c₋ for Δ < 1 and 0 otherwise.
    """
    if E < 0:
        raise ValueError(f"'E' should be non-negative, got {E}")
    if E >= SEPARABLE_BOUND:
        return 0.0
    if E == 0:
        return float("inf")
    delta = E / 2
    c_plus = (np.sqrt(delta) + 1 / np.sqrt(delta)) ** 2 / 4
    c_minus = (np.sqrt(delta) - 1 / np.sqrt(delta)) ** 2 / 4
    return float(c_plus * np.log2(c_plus) - c_minus * np.log2(c_minus))


class EprReport(NamedTuple):
    E: float
    separable: bool
    eof_lower_bound: float

    def to_dict(self) -> dict:
        return self._asdict()


def epr_report(E: float) -> EprReport:
    return EprReport(float(E), bool(E >= SEPARABLE_BOUND), eof_lower_bound(E))


def stored_pair_state(params: MemoryParams, s: float = DEFAULT_SQUEEZING) -> GaussianState:
    """Both sidebands of a two-mode squeezed state stored, in light quadratures."""
    return to_light_frame(storage_in_local_picture(two_mode_squeezed(s), params))


def hybrid_state(params: MemoryParams, s: float = DEFAULT_SQUEEZING) -> GaussianState:
    """
    The upper sideband stored in cell 1 (in light quadratures) together with the
    propagating lower sideband. The memory's second input is left in vacuum.
    """
    # modes: (+, −, vacuum into the second memory input)
    light = tensor_product(two_mode_squeezed(s), vacuum(1))
    stored = storage_in_local_picture(light, params, modes=(0, 2))
    pair = reduce_state(stored, [0, 1])
    return apply_symplectic(pair, phase_rotation(90, 2, 0))


def hybrid_E(params: MemoryParams, s: float = DEFAULT_SQUEEZING) -> float:
    """
    Duan sum between the stored upper sideband and the propagating lower one,
    (1 + G)²/(2s) + s(1 − G)²/2 + Var(O_x) + Var(O_p).
    """
    G = params.G
    var_ox, var_op = added_noise_variances(params)
    return (1 + G) ** 2 / (2 * s) + s * (1 - G) ** 2 / 2 + var_ox + var_op
