from __future__ import annotations
import enum
from typing import Union

import numpy as np

from ..gaussian import GaussianState, SymplecticMap, apply_symplectic


class ModeBasis(str, enum.Enum):
    """Labelings of a pair of modes."""

    SIDEBAND = "sideband"  # (+, −) light sidebands
    COSSIN = "cos-sin"  # (c, s) cosine and sine modes
    LOCAL = "local"  # (1, 2) individual atomic cells


_R = 1 / np.sqrt(2)

# (x_c, p_c, x_s, p_s) from (x₊, p₊, x₋, p₋)
_SIDEBAND_TO_COSSIN = _R * np.array(
    [
        [1.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 1.0],
        [0.0, -1.0, 0.0, 1.0],
        [1.0, 0.0, -1.0, 0.0],
    ]
)

# (x₁, p₁, x₂, p₂) from (x_c, p_c, x_s, p_s)
_COSSIN_TO_LOCAL = _R * np.array(
    [
        [1.0, 0.0, 0.0, 1.0],
        [0.0, 1.0, -1.0, 0.0],
        [1.0, 0.0, 0.0, -1.0],
        [0.0, 1.0, 1.0, 0.0],
    ]
)


def _to_cossin(basis: ModeBasis) -> np.ndarray:
    if basis is ModeBasis.SIDEBAND:
        return _SIDEBAND_TO_COSSIN
    if basis is ModeBasis.LOCAL:
        return _COSSIN_TO_LOCAL.T
    return np.eye(4)


def basis_map(source: Union[ModeBasis, str], target: Union[ModeBasis, str]) -> SymplecticMap:
    """
    Orthogonal symplectic map between two labelings. Every pair is routed
    through the cos-sin picture, so any cycle of transforms is the identity.
    """
    try:
        source, target = ModeBasis(source), ModeBasis(target)
    except ValueError as e:
        raise ValueError(f"Unknown basis pair ({source}, {target})") from e
    S = _to_cossin(target).T @ _to_cossin(source)
    return SymplecticMap(S)


def basis_transform(
    state: GaussianState,
    source: Union[ModeBasis, str],
    target: Union[ModeBasis, str],
) -> GaussianState:
    if state.n_modes != 2:
        raise ValueError(f"Basis transforms act on 2 modes, got {state.n_modes}")
    return apply_symplectic(state, basis_map(source, target))
