from __future__ import annotations
import dataclasses
from typing import Dict, Tuple

import numpy as np
import equinox as eqx

from ..gaussian import LossBudget


class MemoryParams(eqx.Module):
    """
    Constants of the atomic memory.

    Attributes:
        Z2: Squeezing factor Z² of the atom-light interaction (set by the detuning).
        kappa: Coupling strength κ, 0 ≤ κ² ≤ Z².
        g: Electronic feedback gain applied to the homodyne result.
        var_xA_init, var_pA_init: Initial atomic variances.
        var_Sx, var_Sp: Extra noise added by the storage beyond transmission loss.
        losses: Transmissions of the light path.
        phase_noise: Measured (phi, var_Sx, var_Sp) for specific input phases.
    """

    Z2: float = 6.4
    kappa: float = 1.0
    g: float = float(np.sqrt(1 - 1 / 6.4))
    var_xA_init: float = 0.5
    var_pA_init: float = 0.5
    var_Sx: float = 0.0
    var_Sp: float = 0.0
    losses: LossBudget = eqx.field(default_factory=LossBudget)
    phase_noise: Tuple[Tuple[float, float, float], ...] = eqx.field(
        static=True, default=()
    )

    def __check_init__(self):
        if not self.Z2 > 0:
            raise ValueError(f"'Z2' should be positive, got {self.Z2}")
        if self.kappa < 0 or self.kappa**2 > self.Z2:
            raise ValueError(f"'kappa' should satisfy 0 <= kappa² <= Z2, got {self.kappa}")
        for name in ("var_xA_init", "var_pA_init", "var_Sx", "var_Sp"):
            if getattr(self, name) < 0:
                raise ValueError(f"'{name}' should be non-negative")

    @property
    def G(self) -> float:
        """Memory gain √(η_loss η_ent); not the feedback gain ``g``."""
        return self.losses.memory_gain

    @property
    def swap_coefficient(self) -> float:
        """√(1 − κ²/Z²), the weight of the initial atomic operator after the interaction."""
        return float(np.sqrt(1 - self.kappa**2 / self.Z2))

    def replace(self, **kwargs) -> MemoryParams:
        return dataclasses.replace(self, **kwargs)

    def with_optimal_gain(self) -> MemoryParams:
        from .interaction import optimal_gain

        return self.replace(g=optimal_gain(self))

    def for_phase(self, phi: float) -> MemoryParams:
        """Params with the measured added noise of input phase ``phi``, if known."""
        for p, var_Sx, var_Sp in self.phase_noise:
            if np.isclose(p, phi):
                return self.replace(var_Sx=var_Sx, var_Sp=var_Sp)
        return self


PRESETS: Dict[str, MemoryParams] = {
    "vapor-cell-2010": MemoryParams(
        Z2=6.4,
        kappa=1.0,
        g=float(np.sqrt(1 - 1 / 6.4)),
        var_xA_init=0.43,
        var_pA_init=1.07,
        var_Sx=0.1,
        var_Sp=0.3,
        losses=LossBudget(eta_loss=0.80, eta_ent=0.90, eta_det=0.79),
        phase_noise=((0.0, 0.08, 0.29), (90.0, 0.13, 0.32)),
    ),
    "perfect": MemoryParams(
        Z2=6.4,
        kappa=1.0,
        g=float(np.sqrt(1 - 1 / 6.4)),
        var_xA_init=0.0,
        var_pA_init=0.5,
        var_Sx=0.0,
        var_Sp=0.0,
        losses=LossBudget(),
    ),
}

DEFAULT_PRESET = "vapor-cell-2010"

# Squeezing factor of the light source, 6 dB
DEFAULT_SQUEEZING = 4.0


def get_preset(name: str = DEFAULT_PRESET) -> MemoryParams:
    try:
        return PRESETS[name]
    except KeyError:
        raise ValueError(
            f"Unknown preset '{name}', available: {', '.join(sorted(PRESETS))}"
        ) from None
