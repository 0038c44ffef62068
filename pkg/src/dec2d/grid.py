"""Cells, integer chains and the boundary operator on 2D grid complexes.

Grids are indexed 1-based in both directions. On the torus every index is
reduced modulo the extent; on a plane window indices are used as-is, with
the ghost ring (index 0 and n+1, resp. m+1) addressable by form components.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterator, Mapping, Optional

from .errors import DegreeMismatch


class Topology(Enum):
    TORUS = "torus"
    PLANE_WINDOW = "plane_window"


def wrap_index(index: int, extent: int) -> int:
    """Reduce a 1-based index into 1..extent."""
    return (index - 1) % extent + 1


def shift_tau(index: int, extent: int, topology: Topology) -> int:
    """Forward shift k -> k+1; wraps past the last cell to 1 on the torus."""
    if topology is Topology.TORUS:
        return wrap_index(index + 1, extent)
    return index + 1


def shift_sigma(index: int, extent: int, topology: Topology) -> int:
    """Backward shift k -> k-1; wraps below 1 to the last cell on the torus."""
    if topology is Topology.TORUS:
        return wrap_index(index - 1, extent)
    return index - 1


@dataclass(frozen=True, order=True)
class CellId:
    """A vertex (dim 0), an edge (dim 1, direction 1 or 2) or a face (dim 2)."""

    dim: int
    direction: int  # 1 for e1, 2 for e2; 0 for vertices and faces
    k: int
    s: int

    def label(self) -> str:
        if self.dim == 0:
            return f"x({self.k},{self.s})"
        if self.dim == 1:
            return f"e{self.direction}({self.k},{self.s})"
        return f"V({self.k},{self.s})"


@dataclass(frozen=True)
class GridShape:
    """Grid extents plus topology; also the factory for normalized cell ids."""

    n: int
    m: int
    topology: Topology = Topology.TORUS

    def __post_init__(self) -> None:
        if self.n < 1 or self.m < 1:
            raise ValueError("grid extents must be >= 1")

    @property
    def is_torus(self) -> bool:
        return self.topology is Topology.TORUS

    def _normalize(self, k: int, s: int) -> tuple[int, int]:
        if self.is_torus:
            return wrap_index(k, self.n), wrap_index(s, self.m)
        return k, s

    def vertex(self, k: int, s: int) -> CellId:
        k, s = self._normalize(k, s)
        return CellId(0, 0, k, s)

    def edge(self, direction: int, k: int, s: int) -> CellId:
        if direction not in (1, 2):
            raise ValueError("edge direction must be 1 or 2")
        k, s = self._normalize(k, s)
        return CellId(1, direction, k, s)

    def face(self, k: int, s: int) -> CellId:
        k, s = self._normalize(k, s)
        return CellId(2, 0, k, s)

    def tau_k(self, k: int) -> int:
        return shift_tau(k, self.n, self.topology)

    def tau_s(self, s: int) -> int:
        return shift_tau(s, self.m, self.topology)

    def sigma_k(self, k: int) -> int:
        return shift_sigma(k, self.n, self.topology)

    def sigma_s(self, s: int) -> int:
        return shift_sigma(s, self.m, self.topology)

    def cells(self, dim: int) -> Iterator[CellId]:
        """Cells of one dimension in canonical order: s-major, k-minor,
        with all direction-1 edges before all direction-2 edges."""
        if dim == 1:
            for direction in (1, 2):
                for s in range(1, self.m + 1):
                    for k in range(1, self.n + 1):
                        yield CellId(1, direction, k, s)
            return
        if dim not in (0, 2):
            raise ValueError("cell dimension must be 0, 1 or 2")
        for s in range(1, self.m + 1):
            for k in range(1, self.n + 1):
                yield CellId(dim, 0, k, s)

    def cell_count(self, dim: int) -> int:
        return 2 * self.n * self.m if dim == 1 else self.n * self.m


class Chain:
    """Integer-coefficient formal sum of cells of one dimension."""

    __slots__ = ("dim", "coefficients")

    def __init__(self, dim: int, coefficients: Optional[Mapping[CellId, int]] = None):
        coeffs: Dict[CellId, int] = {}
        for cell, value in (coefficients or {}).items():
            if cell.dim != dim:
                raise DegreeMismatch(
                    f"cell {cell.label()} has dimension {cell.dim}, chain has dimension {dim}"
                )
            value = int(value)
            if value != 0:
                coeffs[cell] = value
        self.dim = dim
        self.coefficients = coeffs

    @classmethod
    def single(cls, cell: CellId, coefficient: int = 1) -> "Chain":
        return cls(cell.dim, {cell: coefficient})

    def is_zero(self) -> bool:
        return not self.coefficients

    def __add__(self, other: "Chain") -> "Chain":
        if not isinstance(other, Chain):
            return NotImplemented
        if self.dim != other.dim:
            raise DegreeMismatch("cannot add chains of different dimensions")
        out = dict(self.coefficients)
        for cell, value in other.coefficients.items():
            out[cell] = out.get(cell, 0) + value
        return Chain(self.dim, out)

    def __neg__(self) -> "Chain":
        return Chain(self.dim, {c: -v for c, v in self.coefficients.items()})

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __rmul__(self, scalar: int) -> "Chain":
        return Chain(self.dim, {c: scalar * v for c, v in self.coefficients.items()})

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Chain)
            and self.dim == other.dim
            and self.coefficients == other.coefficients
        )

    def __repr__(self) -> str:
        if self.is_zero():
            return f"Chain({self.dim}, 0)"
        body = " + ".join(f"{v}*{c.label()}" for c, v in sorted(self.coefficients.items()))
        return f"Chain({self.dim}, {body})"


def boundary(chain: Chain, shape: GridShape) -> Chain:
    """Boundary operator extended linearly; 0-chains map to the zero chain.

    On the torus the resulting cells are wrapped; on a plane window raw
    index arithmetic is used, so boundaries may touch the ghost ring.
    """
    if chain.dim == 0:
        return Chain(0)
    out: Dict[CellId, int] = {}

    def add(cell: CellId, value: int) -> None:
        acc = out.get(cell, 0) + value
        if acc:
            out[cell] = acc
        else:
            out.pop(cell, None)

    for cell, coeff in chain.coefficients.items():
        k, s = cell.k, cell.s
        if chain.dim == 1:
            if cell.direction == 1:
                add(shape.vertex(k + 1, s), coeff)
            else:
                add(shape.vertex(k, s + 1), coeff)
            add(shape.vertex(k, s), -coeff)
        else:
            add(shape.edge(1, k, s), coeff)
            add(shape.edge(2, k + 1, s), coeff)
            add(shape.edge(1, k, s + 1), -coeff)
            add(shape.edge(2, k, s), -coeff)
    return Chain(chain.dim - 1, out)


def pairing(chain: Chain, form) -> float:
    """Kronecker pairing of a chain with a form, extended bilinearly."""
    if chain.dim != form.degree:
        raise DegreeMismatch(
            f"cannot pair a {chain.dim}-chain with a {form.degree}-form"
        )
    return float(sum(coeff * form.component(cell) for cell, coeff in chain.coefficients.items()))


def window_chain(shape: GridShape) -> Chain:
    """The full face chain of the grid: sum of V(k,s) over 1..n x 1..m."""
    return Chain(2, {shape.face(k, s): 1 for s in range(1, shape.m + 1) for k in range(1, shape.n + 1)})
