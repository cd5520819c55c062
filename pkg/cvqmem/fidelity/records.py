from __future__ import annotations
from typing import Dict, List, NamedTuple, Sequence, Tuple

import jax.numpy as jnp

from ..gaussian import GaussianState, squeezed_state
from ..memory import to_light_frame, DEFAULT_SQUEEZING
from .overlap import gaussian_overlap


class StoredStateRecord(NamedTuple):
    """
    One stored input: the light state's means and squeezing phase, the
    atomic means and variances measured after storage, and the published
    overlap between the two.
    """

    mean_x_in: float
    mean_p_in: float
    phi_deg: float
    mean_pA: float
    mean_xA: float
    var_pA: float
    var_xA: float
    overlap: float


# Variances are shared by every record of a sub-block.
_BLOCKS = (
    (0.0, 0.52, 1.99, (
        (0.0, 0.0, -0.06, 0.25, 0.62),
        (0.0, 3.8, -0.06, 3.19, 0.60),
        (3.8, 0.0, -3.47, -0.42, 0.57),
        (3.8, 3.8, -3.39, 2.89, 0.49),
    )),
    (90.0, 1.95, 0.73, (
        (0.0, 0.0, -0.07, 0.06, 0.55),
        (0.0, 3.8, -0.06, 3.14, 0.42),
        (3.8, 0.0, -3.22, 0.48, 0.46),
        (3.8, 3.8, -3.21, 3.59, 0.50),
    )),
    (0.0, 0.55, 2.01, (
        (0.0, 7.6, -0.03, 6.30, 0.49),
        (7.6, 0.0, -6.83, -0.46, 0.37),
        (3.8, 7.6, -3.20, 6.07, 0.35),
        (7.6, 3.8, -6.54, 2.80, 0.22),
        (7.6, 7.6, -6.40, 6.03, 0.15),
    )),
    (90.0, 2.12, 0.78, (
        (0.0, 7.6, -0.08, 6.24, 0.18),
        (7.6, 0.0, -6.37, 0.59, 0.35),
        (3.8, 7.6, -3.13, 6.75, 0.32),
        (7.6, 3.8, -6.38, 3.79, 0.43),
        (7.6, 7.6, -6.36, 6.72, 0.27),
    )),
)

STORED_RECORDS: Tuple[StoredStateRecord, ...] = tuple(
    StoredStateRecord(x, p, phi, pA, xA, var_pA, var_xA, f)
    for phi, var_pA, var_xA, rows in _BLOCKS
    for x, p, pA, xA, f in rows
)

# Stored squeezed vacuum, phase -> (Var x_A, Var p_A)
MEASURED_PHASE_VARIANCES: Dict[float, Tuple[float, float]] = {
    0.0: (2.02, 0.52),
    90.0: (0.72, 1.90),
}


def record_states(
    record: StoredStateRecord, s: float = DEFAULT_SQUEEZING
) -> Tuple[GaussianState, GaussianState]:
    """The pure input and the stored state expressed in light quadratures."""
    pure = squeezed_state(s, record.phi_deg, (record.mean_x_in, record.mean_p_in))
    atoms = GaussianState(
        jnp.array([record.mean_xA, record.mean_pA]),
        jnp.diag(jnp.array([record.var_xA, record.var_pA])),
    )
    return pure, to_light_frame(atoms)


def stored_overlap(record: StoredStateRecord, s: float = DEFAULT_SQUEEZING) -> float:
    pure, stored = record_states(record, s)
    return gaussian_overlap(pure, stored)


def variance_blocks(
    records: Sequence[StoredStateRecord] = STORED_RECORDS,
) -> List[Tuple[float, float, float]]:
    """Distinct (phi, Var x_A, Var p_A) sub-blocks in order of appearance."""
    blocks = []
    for r in records:
        block = (r.phi_deg, r.var_xA, r.var_pA)
        if block not in blocks:
            blocks.append(block)
    return blocks


class OverlapRow(NamedTuple):
    record: StoredStateRecord
    computed: float
    deviation: float


def overlap_table(
    records: Sequence[StoredStateRecord] = STORED_RECORDS, s: float = DEFAULT_SQUEEZING
) -> List[OverlapRow]:
    rows = []
    for r in records:
        f = stored_overlap(r, s)
        rows.append(OverlapRow(r, f, abs(f - r.overlap)))
    return rows
