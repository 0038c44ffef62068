"""Cohomology of the torus complex, computed in exact rational arithmetic.

Floating point never enters the rank, kernel or solve computations; form
components are converted to Fractions exactly before use.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import operators, rational
from .errors import DegreeMismatch, NotClosed, ShapeMismatch
from .forms import Form
from .grid import GridShape


@dataclass(frozen=True)
class CohomologyResult:
    betti: Tuple[int, int, int]
    ranks: Tuple[int, int, int]  # rank of d per degree; d on degree 2 is zero
    generators: Optional[Dict[int, List[Form]]] = None


def _require_torus(shape: GridShape) -> None:
    if not shape.is_torus:
        raise ValueError("cohomology is computed on the torus")


def _d_entries(shape: GridShape, degree: int) -> np.ndarray:
    return operators.assemble_d(shape, degree).entries


def d_ranks(shape: GridShape) -> Tuple[int, int, int]:
    _require_torus(shape)
    return (
        rational.rank(_d_entries(shape, 0)),
        rational.rank(_d_entries(shape, 1)),
        0,
    )


def betti_numbers(shape: GridShape) -> Tuple[int, int, int]:
    """Betti numbers from exact ranks: dim ker d_r - rank d_(r-1)."""
    nm = shape.n * shape.m
    r0, r1, _ = d_ranks(shape)
    return (nm - r0, 2 * nm - r1 - r0, nm - r1)


def generators(shape: GridShape, degree: int) -> List[Form]:
    """Integer cohomology generators in canonical order.

    Kernel basis vectors of d are accepted greedily whenever they enlarge
    the span of the image of the previous d, then scaled to coprime
    integers; the count always equals the Betti number.
    """
    _require_torus(shape)
    if degree not in (0, 1, 2):
        raise ValueError("degree must be 0, 1 or 2")
    nm = shape.n * shape.m
    if degree == 2:
        dim = nm
        kernel = [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
    else:
        kernel = rational.nullspace(_d_entries(shape, degree))
    span = rational.SpanBuilder()
    if degree > 0:
        prev = _d_entries(shape, degree - 1)
        for col in rational.independent_columns(prev):
            span.add([int(x) for x in prev[:, col]])
    ordering = operators.BasisOrdering.canonical(shape, degree)
    out: List[Form] = []
    for vec in kernel:
        if span.add(vec):
            ints = rational.clear_denominators(vec)
            out.append(operators.devectorize(shape, degree,
                                             np.array(ints, dtype=np.float64), ordering))
    return out


def compute(shape: GridShape, with_generators: bool = False) -> CohomologyResult:
    betti = betti_numbers(shape)
    ranks = d_ranks(shape)
    gens = {r: generators(shape, r) for r in range(3)} if with_generators else None
    return CohomologyResult(betti, ranks, gens)


def _exact_vector(w: Form) -> List[Fraction]:
    ordering = operators.BasisOrdering.canonical(w.shape, w.degree)
    return [Fraction(float(x)) for x in operators.vectorize(w, ordering)]


def _assert_closed(w: Form, vec: List[Fraction]) -> None:
    if w.degree == 2:
        return
    entries = _d_entries(w.shape, w.degree)
    residual = rational.matvec(entries, vec)
    if any(x != 0 for x in residual):
        raise NotClosed(f"the degree-{w.degree} form is not d-closed")


def is_exact(w: Form) -> Tuple[bool, Optional[Form]]:
    """Whether a closed form is d of something; returns a rational witness.

    Raises NotClosed when the input is not closed. Degree-0 forms are exact
    only when zero, and there is no witness space below degree 0.
    """
    _require_torus(w.shape)
    vec = _exact_vector(w)
    _assert_closed(w, vec)
    if w.degree == 0:
        return all(x == 0 for x in vec), None
    entries = _d_entries(w.shape, w.degree - 1)
    solution = rational.solve(entries, vec)
    if solution is None:
        return False, None
    ordering = operators.BasisOrdering.canonical(w.shape, w.degree - 1)
    witness = operators.devectorize(
        w.shape, w.degree - 1, np.array([float(x) for x in solution]), ordering)
    return True, witness


def cohomologous(a: Form, b: Form) -> bool:
    """Whether two closed forms differ by an exact form."""
    if a.degree != b.degree:
        raise DegreeMismatch("cohomologous forms must have equal degrees")
    if a.shape != b.shape:
        raise ShapeMismatch("cohomologous forms must live on one grid")
    _require_torus(a.shape)
    _assert_closed(a, _exact_vector(a))
    _assert_closed(b, _exact_vector(b))
    exact, _ = is_exact(a - b)
    return exact
