from __future__ import annotations
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..fidelity import Alphabet
from .strategy import BenchmarkResult, ENVELOPE
from .gaussian_opt import optimize_gaussian_strategy
from .seesaw import seesaw_truncated

logger = logging.getLogger(__name__)


def monotone_envelope(
    points: Sequence[Tuple[float, float]]
) -> List[Tuple[float, float]]:
    """
    Running minimum over increasing d_max. A wider alphabet contains the
    narrower one, so the benchmark cannot grow with d_max.
    """
    d = np.asarray([p[0] for p in points], dtype=float)
    if d.size and np.any(np.diff(d) < 0):
        raise ValueError("'points' should be sorted by d_max")
    values = np.minimum.accumulate(np.asarray([p[1] for p in points], dtype=float))
    return [(float(x), float(v)) for x, v in zip(d, values)]


def benchmark_curve(
    d_max_values: Sequence[float],
    s: float,
    gain_target: float,
    phases: Optional[Tuple[float, ...]] = None,
    method: str = "gaussian",
    seed: Optional[int] = None,
    **kwargs,
) -> List[Tuple[float, BenchmarkResult]]:
    """
    Benchmark values over a sorted list of d_max, with the monotone envelope
    applied. ``method`` is "gaussian" for the optimized Gaussian strategy or
    "seesaw" for the truncated number-basis estimate; extra keyword
    arguments go to the respective routine.

    Points changed by the envelope are re-labelled as such; the others keep
    their kind.
    """
    if method not in ("gaussian", "seesaw"):
        raise ValueError(f"Unknown benchmark method '{method}'")

    raw = []
    for d_max in d_max_values:
        alphabet = Alphabet(float(d_max), s, phases)
        if method == "gaussian":
            _, result = optimize_gaussian_strategy(alphabet, gain_target, seed=seed, **kwargs)
        else:
            result = seesaw_truncated(alphabet, gain_target, **kwargs)
        logger.info("d_max %.4g: %s %.8g", d_max, result.kind, result.value)
        raw.append((float(d_max), result))

    envelope = monotone_envelope([(d, r.value) for d, r in raw])
    curve = []
    for (d, result), (_, value) in zip(raw, envelope):
        if value < result.value:
            result = result._replace(value=value, kind=ENVELOPE)
        curve.append((d, result))
    return curve
