import csv
import json
import os
from numbers import Number
from typing import Any, Dict, Iterable, Sequence

import numpy as np


SIGNIFICANT_DIGITS = 12


def format_number(x: Any) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, Number):
        return f"{float(x):.{SIGNIFICANT_DIGITS}g}"
    return str(x)


def round_floats(obj: Any) -> Any:
    """Rounds every float of a nested structure to the output precision."""
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Number):
        return float(f"{float(obj):.{SIGNIFICANT_DIGITS}g}")
    if isinstance(obj, dict):
        return {str(k): round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return round_floats(obj.tolist())
    return obj


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_number(x) for x in row])
    return path


def write_json(path: str, data: Dict[str, Any]) -> str:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w") as f:
        json.dump(round_floats(data), f, indent=2, sort_keys=True)
        f.write("\n")
    return path
