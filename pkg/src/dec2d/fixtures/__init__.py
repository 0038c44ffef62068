"""Bundled reference matrices and orderings for the 2x2 torus.

The loader honors the DEC_FIXTURE_DIR environment variable; when set, the
fixture JSON is read from that directory instead of the packaged copy.
"""

from __future__ import annotations

import json
import os
from importlib import resources
from pathlib import Path
from typing import Dict, List

import numpy as np

ENV_FIXTURE_DIR = "DEC_FIXTURE_DIR"
_FILENAME = "paper2x2.json"


def load() -> dict:
    override = os.environ.get(ENV_FIXTURE_DIR)
    if override:
        return json.loads((Path(override) / _FILENAME).read_text())
    return json.loads(resources.files(__package__).joinpath(_FILENAME).read_text())


def reference_ordering(degree: int) -> List[str]:
    return list(load()["orderings"][str(degree)])


def reference_entries(op: str) -> np.ndarray:
    """Reference integer matrix for one named operator, paper2x2 ordering."""
    matrices = load()["matrices"]
    a = np.array(matrices["A"], dtype=np.int64)
    b = np.array(matrices["B"], dtype=np.int64)
    if op == "d0":
        return a
    if op == "d1":
        return b
    if op == "delta1":
        return a.T.copy()
    if op == "delta2":
        return b.T.copy()
    if op == "lap0":
        return np.array(matrices["D"], dtype=np.int64)
    if op == "lap1":
        return np.array(matrices["D1"], dtype=np.int64)
    if op == "lap2":
        return np.array(matrices["D"], dtype=np.int64)
    if op == "dirac":
        out = np.zeros((16, 16), dtype=np.int64)
        out[0:4, 4:12] = a.T
        out[4:12, 0:4] = a
        out[4:12, 12:16] = b.T
        out[12:16, 4:12] = b
        return out
    raise ValueError(f"no reference matrix for operator {op!r}")


def reference_labels(op: str) -> Dict[str, List[str]]:
    """Row and column label lists for one named operator."""
    rows_by_op = {
        "d0": (1, 0), "d1": (2, 1), "delta1": (0, 1), "delta2": (1, 2),
        "lap0": (0, 0), "lap1": (1, 1), "lap2": (2, 2),
    }
    if op == "dirac":
        mixed = reference_ordering(0) + reference_ordering(1) + reference_ordering(2)
        return {"rows": mixed, "cols": mixed}
    row_deg, col_deg = rows_by_op[op]
    return {"rows": reference_ordering(row_deg), "cols": reference_ordering(col_deg)}


def verify_matrix(op: str, entries) -> bool:
    """Exact comparison of assembled entries against the reference."""
    return np.array_equal(np.asarray(entries, dtype=np.int64), reference_entries(op))
