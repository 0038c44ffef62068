"""Discrete forms: real-valued cochains of degree 0, 1 and 2.

Component arrays are indexed [k, s] 0-based against 1-based grid cells.
On the torus the array extent is (n, m) and entry [k-1, s-1] holds the
component at cell (k, s). On a plane window the extent is (n+2, m+2) and
entry [k, s] holds the component at (k, s) directly, so the ghost ring
(k or s equal to 0, n+1 or m+1) is addressable.
"""

from __future__ import annotations

from typing import Iterable, Tuple

import numpy as np

from .errors import DegreeMismatch, ShapeMismatch
from .grid import CellId, GridShape, wrap_index

COMPONENT_NAMES = {0: ("phi",), 1: ("u", "v"), 2: ("psi",)}


def array_extent(shape: GridShape) -> Tuple[int, int]:
    if shape.is_torus:
        return shape.n, shape.m
    return shape.n + 2, shape.m + 2


class Form:
    """A degree-r form; one read-only float array per component family.

    The ``annihilated`` flag marks the canonical zero of a trivial space
    (the target of d on degree 2 and of delta on degree 0). Annihilated
    forms are all-zero and behave as plain zero objects.
    """

    __slots__ = ("shape", "degree", "components", "annihilated")

    def __init__(self, shape: GridShape, degree: int, components: Iterable[np.ndarray],
                 annihilated: bool = False):
        if degree not in (0, 1, 2):
            raise DegreeMismatch("form degree must be 0, 1 or 2")
        arrays = tuple(np.array(a, dtype=np.float64) for a in components)
        if len(arrays) != len(COMPONENT_NAMES[degree]):
            raise DegreeMismatch(
                f"degree {degree} needs {len(COMPONENT_NAMES[degree])} component arrays"
            )
        extent = array_extent(shape)
        for arr in arrays:
            if arr.shape != extent:
                raise ShapeMismatch(f"component extent {arr.shape} does not match grid {extent}")
            arr.setflags(write=False)
        self.shape = shape
        self.degree = degree
        self.components = arrays
        self.annihilated = bool(annihilated)

    @classmethod
    def zeros(cls, shape: GridShape, degree: int, annihilated: bool = False) -> "Form":
        extent = array_extent(shape)
        count = len(COMPONENT_NAMES[degree])
        return cls(shape, degree, (np.zeros(extent) for _ in range(count)), annihilated)

    @classmethod
    def indicator(cls, shape: GridShape, cell: CellId) -> "Form":
        """The basis form taking value 1 on one cell and 0 elsewhere."""
        out = [np.zeros(array_extent(shape)) for _ in COMPONENT_NAMES[cell.dim]]
        index = 0 if cell.dim != 1 else cell.direction - 1
        arr = out[index]
        arr[_array_index(shape, cell.k, cell.s)] = 1.0
        return cls(shape, cell.dim, out)

    # -- component access -------------------------------------------------

    @property
    def phi(self) -> np.ndarray:
        self._require_degree(0)
        return self.components[0]

    @property
    def u(self) -> np.ndarray:
        self._require_degree(1)
        return self.components[0]

    @property
    def v(self) -> np.ndarray:
        self._require_degree(1)
        return self.components[1]

    @property
    def psi(self) -> np.ndarray:
        self._require_degree(2)
        return self.components[0]

    def _require_degree(self, degree: int) -> None:
        if self.degree != degree:
            raise DegreeMismatch(f"component requires degree {degree}, form has {self.degree}")

    def component(self, cell: CellId) -> float:
        """Component at one cell; torus indices are wrapped defensively."""
        if cell.dim != self.degree:
            raise DegreeMismatch(
                f"cell {cell.label()} has dimension {cell.dim}, form has degree {self.degree}"
            )
        index = 0 if cell.dim != 1 else cell.direction - 1
        return float(self.components[index][_array_index(self.shape, cell.k, cell.s)])

    def interior(self, index: int = 0) -> np.ndarray:
        """View of one component restricted to cells 1..n x 1..m."""
        arr = self.components[index]
        if self.shape.is_torus:
            return arr
        return arr[1:self.shape.n + 1, 1:self.shape.m + 1]

    # -- algebra -----------------------------------------------------------

    def _check_compatible(self, other: "Form") -> None:
        if not isinstance(other, Form):
            raise TypeError("expected a Form")
        if self.degree != other.degree:
            raise DegreeMismatch("forms have different degrees")
        if self.shape != other.shape:
            raise ShapeMismatch("forms live on different grids")

    def __add__(self, other: "Form") -> "Form":
        self._check_compatible(other)
        flag = self.annihilated and other.annihilated
        return Form(self.shape, self.degree,
                    (a + b for a, b in zip(self.components, other.components)), flag)

    def __sub__(self, other: "Form") -> "Form":
        self._check_compatible(other)
        flag = self.annihilated and other.annihilated
        return Form(self.shape, self.degree,
                    (a - b for a, b in zip(self.components, other.components)), flag)

    def __neg__(self) -> "Form":
        return Form(self.shape, self.degree, (-a for a in self.components), self.annihilated)

    def __mul__(self, scalar) -> "Form":
        return Form(self.shape, self.degree,
                    (float(scalar) * a for a in self.components), self.annihilated)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(not np.any(a) for a in self.components)

    def max_abs_diff(self, other: "Form") -> float:
        self._check_compatible(other)
        return max(float(np.max(np.abs(a - b))) for a, b in zip(self.components, other.components))

    def allclose(self, other: "Form", atol: float = 0.0) -> bool:
        return self.max_abs_diff(other) <= atol

    def __repr__(self) -> str:
        tag = ", annihilated" if self.annihilated else ""
        return f"Form(degree={self.degree}, shape={self.shape.n}x{self.shape.m}{tag})"


def _array_index(shape: GridShape, k: int, s: int) -> Tuple[int, int]:
    if shape.is_torus:
        return wrap_index(k, shape.n) - 1, wrap_index(s, shape.m) - 1
    if not (0 <= k <= shape.n + 1 and 0 <= s <= shape.m + 1):
        raise ShapeMismatch(f"index ({k},{s}) is outside the ghost ring")
    return k, s


class InhomogeneousForm:
    """A sum of one 0-form, one 1-form and one 2-form over one grid."""

    __slots__ = ("parts",)

    def __init__(self, part0: Form, part1: Form, part2: Form):
        parts = (part0, part1, part2)
        for degree, part in enumerate(parts):
            if part.degree != degree:
                raise DegreeMismatch(f"part {degree} has degree {part.degree}")
        if not (part0.shape == part1.shape == part2.shape):
            raise ShapeMismatch("parts live on different grids")
        self.parts = parts

    @classmethod
    def zeros(cls, shape: GridShape) -> "InhomogeneousForm":
        return cls(*(Form.zeros(shape, degree) for degree in range(3)))

    @property
    def shape(self) -> GridShape:
        return self.parts[0].shape

    def __add__(self, other: "InhomogeneousForm") -> "InhomogeneousForm":
        return InhomogeneousForm(*(a + b for a, b in zip(self.parts, other.parts)))

    def __sub__(self, other: "InhomogeneousForm") -> "InhomogeneousForm":
        return InhomogeneousForm(*(a - b for a, b in zip(self.parts, other.parts)))

    def __mul__(self, scalar) -> "InhomogeneousForm":
        return InhomogeneousForm(*(scalar * p for p in self.parts))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.parts)

    def __repr__(self) -> str:
        return f"InhomogeneousForm(shape={self.shape.n}x{self.shape.m})"
