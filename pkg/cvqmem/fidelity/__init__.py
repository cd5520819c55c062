from .alphabet import Alphabet, EXPERIMENT_PHASES
from .overlap import overlap_from_moments, gaussian_overlap
from .records import (
    StoredStateRecord,
    STORED_RECORDS,
    MEASURED_PHASE_VARIANCES,
    record_states,
    stored_overlap,
    variance_blocks,
    OverlapRow,
    overlap_table,
)
from .average import stored_light_cov, average_fidelity, fidelity_curve, ideal_fidelities
