"""JSON document schemas and CSV rendering for forms and matrices.

Form component arrays are stored row-major with s as the outer index, so
document row s-1 (0-based) lists the components at (1,s)..(n,s); windows
include the ghost ring, making the outer length m+2 and inner length n+2.
"""

from __future__ import annotations

import csv
import io
from typing import Dict, List, Literal, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .forms import COMPONENT_NAMES, Form, InhomogeneousForm, array_extent
from .grid import GridShape, Topology
from .operators import OperatorMatrix


class ShapeDocument(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    m: int = Field(ge=1)
    topology: Literal["torus", "plane_window"] = "torus"

    @classmethod
    def from_shape(cls, shape: GridShape) -> "ShapeDocument":
        return cls(n=shape.n, m=shape.m, topology=shape.topology.value)

    def to_shape(self) -> GridShape:
        return GridShape(self.n, self.m, Topology(self.topology))


class FormDocument(BaseModel):
    shape: ShapeDocument
    degree: Literal[0, 1, 2]
    components: Dict[str, List[List[float]]]

    @model_validator(mode="after")
    def _validate_components(self) -> "FormDocument":
        names = COMPONENT_NAMES[self.degree]
        if set(self.components) != set(names):
            raise ValueError(
                f"degree {self.degree} needs components {list(names)}, "
                f"got {list(self.components)}"
            )
        cols, rows = array_extent(self.to_shape_only())
        for name in names:
            table = self.components[name]
            if len(table) != rows or any(len(row) != cols for row in table):
                raise ValueError(
                    f"component {name!r} must be {rows} rows of {cols} values"
                )
        return self

    def to_shape_only(self) -> GridShape:
        return self.shape.to_shape()

    def to_form(self) -> Form:
        shape = self.shape.to_shape()
        arrays = [np.array(self.components[name], dtype=np.float64).T
                  for name in COMPONENT_NAMES[self.degree]]
        return Form(shape, self.degree, arrays)

    @classmethod
    def from_form(cls, w: Form) -> "FormDocument":
        components = {
            name: np.asarray(w.components[i]).T.tolist()
            for i, name in enumerate(COMPONENT_NAMES[w.degree])
        }
        return cls(shape=ShapeDocument.from_shape(w.shape), degree=w.degree,
                   components=components)


class InhomogeneousFormDocument(BaseModel):
    shape: ShapeDocument
    parts: List[FormDocument]

    @model_validator(mode="after")
    def _validate_parts(self) -> "InhomogeneousFormDocument":
        degrees = [part.degree for part in self.parts]
        if degrees != [0, 1, 2]:
            raise ValueError("parts must hold degrees 0, 1, 2 in order")
        for part in self.parts:
            if part.shape != self.shape:
                raise ValueError("all parts must share the document shape")
        return self

    def to_form(self) -> InhomogeneousForm:
        return InhomogeneousForm(*(part.to_form() for part in self.parts))

    @classmethod
    def from_form(cls, F: InhomogeneousForm) -> "InhomogeneousFormDocument":
        return cls(shape=ShapeDocument.from_shape(F.shape),
                   parts=[FormDocument.from_form(p) for p in F.parts])


class MatrixShapeDocument(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    m: int = Field(ge=1)


class MatrixDocument(BaseModel):
    op: str
    shape: MatrixShapeDocument
    ordering: Literal["canonical", "paper2x2"]
    row_labels: List[str]
    col_labels: List[str]
    entries: List[List[int]]

    @model_validator(mode="after")
    def _validate_entries(self) -> "MatrixDocument":
        if len(self.entries) != len(self.row_labels):
            raise ValueError("entry row count does not match row labels")
        for row in self.entries:
            if len(row) != len(self.col_labels):
                raise ValueError("entry column count does not match column labels")
        return self

    @classmethod
    def from_matrix(cls, op: str, shape: GridShape,
                    matrix: OperatorMatrix) -> "MatrixDocument":
        return cls(
            op=op,
            shape=MatrixShapeDocument(n=shape.n, m=shape.m),
            ordering=matrix.rows.name,
            row_labels=[cell.label() for cell in matrix.rows.labels],
            col_labels=[cell.label() for cell in matrix.cols.labels],
            entries=matrix.entries.tolist(),
        )


def to_json(model: BaseModel) -> str:
    """Canonical JSON rendering: fixed field order, shortest float decimals."""
    return model.model_dump_json(indent=2) + "\n"


def matrix_to_csv(doc: MatrixDocument) -> str:
    """CSV rendering: header row of column labels, one labeled row per row."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([""] + doc.col_labels)
    for label, row in zip(doc.row_labels, doc.entries):
        writer.writerow([label] + row)
    return buffer.getvalue()


def matrix_from_csv(text: str) -> Tuple[List[str], List[str], List[List[int]]]:
    """Parse the CSV rendering back into labels and integer entries."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0][:1] != [""]:
        raise ValueError("missing column label header")
    col_labels = rows[0][1:]
    row_labels = []
    entries = []
    for row in rows[1:]:
        if not row:
            continue
        row_labels.append(row[0])
        entries.append([int(x) for x in row[1:]])
    return row_labels, col_labels, entries
