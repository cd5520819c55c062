from typing import Optional
import numpy as np
from numbers import Number


class DataTracer:
    """
    Iteration history of a scalar objective: optimizer restarts, seesaw sweeps
    or repeated measurements of one quantity.
    """

    def __init__(self):
        self._values = []
        self._steps = []

    @property
    def data(self) -> np.ndarray:
        return np.asarray(self._values, dtype=float)

    @property
    def time(self) -> np.ndarray:
        """Iteration index of every recorded value."""
        return np.asarray(self._steps)

    def append(self, value: Number, step: Optional[int] = None) -> None:
        if step is None:
            step = self._steps[-1] + 1 if self._steps else 0
        self._values.append(float(value))
        self._steps.append(step)

    def __len__(self) -> int:
        return len(self._values)

    def __getitem__(self, idx):
        return self.data[idx]

    def __array__(self, dtype=None):
        return self.data if dtype is None else self.data.astype(dtype)

    def mean(self) -> Number:
        return np.mean(self.data)

    def uncertainty(self) -> Optional[Number]:
        """Standard error of the mean, None below two samples."""
        n = len(self)
        if n < 2:
            return None
        return np.std(self.data, ddof=1) / np.sqrt(n)

    def best(self) -> Number:
        return np.max(self.data)

    def is_non_decreasing(self, tol: float = 0.0) -> bool:
        if len(self) < 2:
            return True
        return bool(np.all(np.diff(self.data) >= -tol))

    def save(self, file: str) -> None:
        """Two-column text file: iteration index and value."""
        np.savetxt(file, np.column_stack([self.time, self.data]), header="step value")
