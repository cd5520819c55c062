from __future__ import annotations
from typing import Optional, Tuple

import equinox as eqx
import jax.numpy as jnp

from ..utils import square_grid, uniform_phases

EXPERIMENT_PHASES = (0.0, 90.0)


class Alphabet(eqx.Module):
    """
    Input ensemble of squeezed states with squeezing factor ``s`` and means
    uniformly distributed over the square |⟨x⟩|, |⟨p⟩| ≤ ``d_max``.
    ``phases`` lists the squeezing phases in degrees, all equally likely;
    ``None`` means every orientation is allowed.
    """

    d_max: float
    s: float = 4.0
    phases: Optional[Tuple[float, ...]] = eqx.field(static=True, default=EXPERIMENT_PHASES)

    def __check_init__(self):
        if self.d_max < 0:
            raise ValueError(f"'d_max' should be non-negative, got {self.d_max}")
        if not self.s > 0:
            raise ValueError(f"'s' should be positive, got {self.s}")
        if self.phases is not None and len(self.phases) == 0:
            raise ValueError("'phases' should not be empty")

    @classmethod
    def continuous(cls, d_max: float, s: float = 4.0) -> Alphabet:
        return cls(d_max, s, None)

    @property
    def is_continuous(self) -> bool:
        return self.phases is None

    def phase_grid(self, n_phases: int = 64) -> jnp.ndarray:
        if self.phases is None:
            return uniform_phases(n_phases)
        return jnp.asarray(self.phases, dtype=float)

    def displacement_grid(self, nodes: int = 32) -> Tuple[jnp.ndarray, jnp.ndarray]:
        return square_grid(self.d_max, nodes)
