from .strategy import (
    ClassicalStrategy,
    BenchmarkResult,
    strategy_fidelity,
    ACHIEVABLE,
    SEESAW,
    ENVELOPE,
)
from .gaussian_opt import strategy_from_params, optimize_gaussian_strategy
from .seesaw import seesaw_truncated
from .envelope import monotone_envelope, benchmark_curve
