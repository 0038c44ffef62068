"""Dense integer matrices for the torus operators and their basis orderings."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from . import calculus
from .errors import DimensionMismatch, OrderingShapeMismatch
from .forms import Form, array_extent
from .grid import CellId, GridShape

CANONICAL = "canonical"
PAPER2X2 = "paper2x2"

FIRST_ORDER_ENTRIES = frozenset({-1, 0, 1})
LAPLACIAN_ENTRIES = frozenset({-2, -1, 0, 1, 2, 4})

# Explicit 2x2 orderings matching the bundled reference matrices.
_PAPER2X2_CELLS: Dict[int, Tuple[CellId, ...]] = {
    0: (
        CellId(0, 0, 1, 1), CellId(0, 0, 2, 1), CellId(0, 0, 1, 2), CellId(0, 0, 2, 2),
    ),
    1: (
        CellId(1, 1, 1, 1), CellId(1, 1, 2, 1), CellId(1, 2, 1, 2), CellId(1, 2, 1, 1),
        CellId(1, 1, 1, 2), CellId(1, 1, 2, 2), CellId(1, 2, 2, 2), CellId(1, 2, 2, 1),
    ),
    2: (
        CellId(2, 0, 1, 2), CellId(2, 0, 2, 2), CellId(2, 0, 1, 1), CellId(2, 0, 2, 1),
    ),
}


@dataclass(frozen=True)
class BasisOrdering:
    """A fixed enumeration of the cells of one degree (None = mixed)."""

    degree: Optional[int]
    labels: Tuple[CellId, ...]
    name: str

    @staticmethod
    def canonical(shape: GridShape, degree: int) -> "BasisOrdering":
        return BasisOrdering(degree, tuple(shape.cells(degree)), CANONICAL)

    @staticmethod
    def paper2x2(shape: GridShape, degree: int) -> "BasisOrdering":
        if (shape.n, shape.m) != (2, 2) or not shape.is_torus:
            raise OrderingShapeMismatch("paper2x2 ordering exists only on the 2x2 torus")
        return BasisOrdering(degree, _PAPER2X2_CELLS[degree], PAPER2X2)

    @staticmethod
    def make(shape: GridShape, degree: int, name: str) -> "BasisOrdering":
        if name == CANONICAL:
            return BasisOrdering.canonical(shape, degree)
        if name == PAPER2X2:
            return BasisOrdering.paper2x2(shape, degree)
        raise ValueError(f"unknown ordering {name!r}")

    @staticmethod
    def mixed(shape: GridShape, name: str) -> "BasisOrdering":
        """Concatenated degree 0, 1, 2 ordering for block operators."""
        labels: Tuple[CellId, ...] = ()
        for degree in range(3):
            labels = labels + BasisOrdering.make(shape, degree, name).labels
        return BasisOrdering(None, labels, name)

    def index(self, cell: CellId) -> int:
        return self.labels.index(cell)

    def __len__(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense integer matrix of an operator between two ordered bases."""

    rows: BasisOrdering
    cols: BasisOrdering
    entries: np.ndarray

    def __post_init__(self) -> None:
        entries = np.asarray(self.entries, dtype=np.int64)
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)


def vectorize(w: Form, ordering: BasisOrdering) -> np.ndarray:
    """Component vector of a form in one ordering."""
    return np.array([w.component(cell) for cell in ordering.labels], dtype=np.float64)


def devectorize(shape: GridShape, degree: int, vector: np.ndarray,
                ordering: BasisOrdering) -> Form:
    """Inverse of vectorize for a single-degree ordering."""
    if len(ordering) != len(vector):
        raise DimensionMismatch("vector length does not match the ordering")
    count = 1 if degree != 1 else 2
    arrays = [np.zeros(array_extent(shape)) for _ in range(count)]
    torus = shape.is_torus
    for cell, value in zip(ordering.labels, vector):
        index = 0 if cell.dim != 1 else cell.direction - 1
        if torus:
            arrays[index][cell.k - 1, cell.s - 1] = value
        else:
            arrays[index][cell.k, cell.s] = value
    return Form(shape, degree, arrays)


def apply(matrix: OperatorMatrix, vector: np.ndarray) -> np.ndarray:
    """Matrix action on a component vector."""
    vec = np.asarray(vector, dtype=np.float64)
    if vec.shape != (matrix.entries.shape[1],):
        raise DimensionMismatch(
            f"vector of length {vec.shape} does not match {matrix.entries.shape[1]} columns"
        )
    return matrix.entries.astype(np.float64) @ vec


def _require_torus(shape: GridShape) -> None:
    if not shape.is_torus:
        raise ValueError("operator matrices are defined on the torus")


def _check_entries(entries: np.ndarray, allowed: frozenset) -> None:
    values = set(np.unique(entries).tolist())
    if not values <= allowed:
        raise AssertionError(f"unexpected matrix entries {sorted(values - allowed)}")


def _assemble(shape: GridShape, in_degree: int, out_degree: int,
              op: Callable[[Form], Form], ordering: str,
              allowed: frozenset) -> OperatorMatrix:
    """Column-by-column assembly: column j is op applied to basis form j."""
    cols = BasisOrdering.make(shape, in_degree, ordering)
    rows = BasisOrdering.make(shape, out_degree, ordering)
    entries = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for j, cell in enumerate(cols.labels):
        column = vectorize(op(Form.indicator(shape, cell)), rows)
        rounded = np.rint(column).astype(np.int64)
        if not np.array_equal(rounded.astype(np.float64), column):
            raise AssertionError("operator produced non-integer entries on a basis form")
        entries[:, j] = rounded
    _check_entries(entries, allowed)
    return OperatorMatrix(rows, cols, entries)


def assemble_d(shape: GridShape, degree: int, ordering: str = CANONICAL) -> OperatorMatrix:
    """Matrix of d from degree r to r+1 (r = 0 or 1)."""
    _require_torus(shape)
    if degree not in (0, 1):
        raise ValueError(f"d has no matrix on degree {degree}")
    return _assemble(shape, degree, degree + 1, calculus.d, ordering, FIRST_ORDER_ENTRIES)


def assemble_delta(shape: GridShape, degree: int, ordering: str = CANONICAL) -> OperatorMatrix:
    """Matrix of delta from degree r to r-1 (r = 1 or 2)."""
    _require_torus(shape)
    if degree not in (1, 2):
        raise ValueError(f"delta has no matrix on degree {degree}")
    return _assemble(shape, degree, degree - 1, calculus.delta, ordering, FIRST_ORDER_ENTRIES)


def assemble_laplacian(shape: GridShape, degree: int, ordering: str = CANONICAL) -> OperatorMatrix:
    """Laplacian matrix d delta + delta d on one degree."""
    _require_torus(shape)
    if degree == 0:
        d0 = assemble_d(shape, 0, ordering)
        delta1 = assemble_delta(shape, 1, ordering)
        entries = delta1.entries @ d0.entries
        rows = delta1.rows
    elif degree == 1:
        d0 = assemble_d(shape, 0, ordering)
        d1 = assemble_d(shape, 1, ordering)
        delta1 = assemble_delta(shape, 1, ordering)
        delta2 = assemble_delta(shape, 2, ordering)
        entries = d0.entries @ delta1.entries + delta2.entries @ d1.entries
        rows = d0.rows
    elif degree == 2:
        d1 = assemble_d(shape, 1, ordering)
        delta2 = assemble_delta(shape, 2, ordering)
        entries = d1.entries @ delta2.entries
        rows = d1.rows
    else:
        raise ValueError(f"laplacian has no matrix on degree {degree}")
    _check_entries(entries, LAPLACIAN_ENTRIES)
    return OperatorMatrix(rows, rows, entries)


def assemble_dirac(shape: GridShape, ordering: str = CANONICAL) -> OperatorMatrix:
    """Block matrix of d + delta on the concatenated degree 0, 1, 2 basis."""
    _require_torus(shape)
    nm = shape.n * shape.m
    d0 = assemble_d(shape, 0, ordering)
    d1 = assemble_d(shape, 1, ordering)
    delta1 = assemble_delta(shape, 1, ordering)
    delta2 = assemble_delta(shape, 2, ordering)
    size = 4 * nm
    entries = np.zeros((size, size), dtype=np.int64)
    entries[0:nm, nm:3 * nm] = delta1.entries
    entries[nm:3 * nm, 0:nm] = d0.entries
    entries[nm:3 * nm, 3 * nm:size] = delta2.entries
    entries[3 * nm:size, nm:3 * nm] = d1.entries
    _check_entries(entries, FIRST_ORDER_ENTRIES)
    mixed = BasisOrdering.mixed(shape, ordering)
    return OperatorMatrix(mixed, mixed, entries)


_ASSEMBLERS: Dict[str, Callable[[GridShape, str], OperatorMatrix]] = {
    "d0": lambda shape, ordering: assemble_d(shape, 0, ordering),
    "d1": lambda shape, ordering: assemble_d(shape, 1, ordering),
    "delta1": lambda shape, ordering: assemble_delta(shape, 1, ordering),
    "delta2": lambda shape, ordering: assemble_delta(shape, 2, ordering),
    "lap0": lambda shape, ordering: assemble_laplacian(shape, 0, ordering),
    "lap1": lambda shape, ordering: assemble_laplacian(shape, 1, ordering),
    "lap2": lambda shape, ordering: assemble_laplacian(shape, 2, ordering),
    "dirac": assemble_dirac,
}

OPERATOR_NAMES = tuple(_ASSEMBLERS)


def assemble_named(shape: GridShape, op: str, ordering: str = CANONICAL) -> OperatorMatrix:
    """Assemble one of the named operators (d0, d1, delta1, delta2, lap0..2, dirac)."""
    try:
        assembler = _ASSEMBLERS[op]
    except KeyError:
        raise ValueError(f"unknown operator {op!r}") from None
    return assembler(shape, ordering)
