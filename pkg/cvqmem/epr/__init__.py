from .epr import (
    SEPARABLE_BOUND,
    duan_E,
    eof_lower_bound,
    EprReport,
    epr_report,
    stored_pair_state,
    hybrid_state,
    hybrid_E,
)
