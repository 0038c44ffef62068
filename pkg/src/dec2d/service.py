"""FastAPI service wrapping the calculus engine.

The handler functions (matrices, cohomology_report, decompose, solve_dirac,
run_checks) are plain request-model -> response-model functions; the HTTP
routes and the CLI both call them, so the two entry points cannot drift.
"""

from __future__ import annotations

from typing import Dict, List, Literal, Optional, Tuple

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import calculus, checks, cohomology, fixtures, hodge, operators
from .documents import FormDocument, InhomogeneousFormDocument, MatrixDocument
from .errors import NotInRange, OrderingShapeMismatch
from .grid import GridShape

OperatorName = Literal["d0", "d1", "delta1", "delta2", "lap0", "lap1", "lap2", "dirac"]
OrderingName = Literal["canonical", "paper2x2"]
SuiteName = Literal["stokes", "leibniz", "adjoint", "star", "hodge", "all"]


# -- matrices -----------------------------------------------------------------

class MatricesRequest(BaseModel):
    n: int = Field(ge=1)
    m: int = Field(ge=1)
    op: OperatorName
    ordering: OrderingName = "canonical"
    verify: bool = False


class MatricesResponse(BaseModel):
    matrix: MatrixDocument
    verified: Optional[bool] = None


def matrices(request: MatricesRequest) -> MatricesResponse:
    shape = GridShape(request.n, request.m)
    matrix = operators.assemble_named(shape, request.op, request.ordering)
    doc = MatrixDocument.from_matrix(request.op, shape, matrix)
    verified = None
    if request.verify:
        if request.ordering != "paper2x2":
            raise OrderingShapeMismatch(
                "verification compares against the paper2x2 reference ordering")
        verified = fixtures.verify_matrix(request.op, matrix.entries)
    return MatricesResponse(matrix=doc, verified=verified)


# -- cohomology ----------------------------------------------------------------

class CohomologyRequest(BaseModel):
    n: int = Field(ge=1)
    m: int = Field(ge=1)
    with_generators: bool = False


class CohomologyResponse(BaseModel):
    betti: Tuple[int, int, int]
    ranks: Tuple[int, int, int]
    generators: Optional[Dict[str, List[FormDocument]]] = None


def cohomology_report(request: CohomologyRequest) -> CohomologyResponse:
    shape = GridShape(request.n, request.m)
    result = cohomology.compute(shape, with_generators=request.with_generators)
    generators = None
    if result.generators is not None:
        generators = {
            str(degree): [FormDocument.from_form(g) for g in forms]
            for degree, forms in result.generators.items()
        }
    return CohomologyResponse(betti=result.betti, ranks=result.ranks,
                              generators=generators)


# -- Hodge decomposition ---------------------------------------------------------

class DecomposeRequest(BaseModel):
    form: FormDocument


class DecomposeResponse(BaseModel):
    exact: FormDocument
    coexact: FormDocument
    harmonic: FormDocument
    residual_norm: float
    inner_products: Dict[str, float]


def decompose(request: DecomposeRequest) -> DecomposeResponse:
    w = request.form.to_form()
    parts = hodge.decompose(w)
    pairs = {
        "exact_coexact": calculus.inner_product(parts.exact, parts.coexact),
        "exact_harmonic": calculus.inner_product(parts.exact, parts.harmonic),
        "coexact_harmonic": calculus.inner_product(parts.coexact, parts.harmonic),
    }
    return DecomposeResponse(
        exact=FormDocument.from_form(parts.exact),
        coexact=FormDocument.from_form(parts.coexact),
        harmonic=FormDocument.from_form(parts.harmonic),
        residual_norm=parts.residual_norm,
        inner_products=pairs,
    )


# -- Dirac solve ------------------------------------------------------------------

class SolveDiracRequest(BaseModel):
    form: InhomogeneousFormDocument
    harmonic_tolerance: float = hodge.HARMONIC_RTOL


class SolveDiracResponse(BaseModel):
    omega: InhomogeneousFormDocument
    residual: float


def solve_dirac(request: SolveDiracRequest) -> SolveDiracResponse:
    F = request.form.to_form()
    omega = hodge.solve_dirac(F, harmonic_tolerance=request.harmonic_tolerance)
    residual = calculus.mixed_norm(calculus.dirac(omega) - F)
    return SolveDiracResponse(
        omega=InhomogeneousFormDocument.from_form(omega), residual=residual)


# -- property checks ----------------------------------------------------------------

class CheckRequest(BaseModel):
    suite: SuiteName = "all"
    n: int = Field(default=3, ge=1)
    m: int = Field(default=3, ge=1)
    seed: int = 0
    trials: int = Field(default=200, ge=1)


class CheckItem(BaseModel):
    name: str
    passed: bool
    detail: str
    counterexample: Optional[dict] = None


class CheckResponse(BaseModel):
    suite: str
    n: int
    m: int
    seed: int
    trials: int
    passed: bool
    results: List[CheckItem]


def run_checks(request: CheckRequest) -> CheckResponse:
    results = checks.run_suite(request.suite, request.n, request.m,
                               request.seed, request.trials)
    items = [CheckItem(name=r.name, passed=r.passed, detail=r.detail,
                       counterexample=r.counterexample) for r in results]
    return CheckResponse(
        suite=request.suite, n=request.n, m=request.m, seed=request.seed,
        trials=request.trials, passed=all(r.passed for r in results),
        results=items,
    )


# -- HTTP routes -----------------------------------------------------------------------

app = FastAPI(title="dec2d", description="Discrete exterior calculus on 2D grid complexes")


@app.get("/health")
def health() -> dict:
    from . import __version__

    return {"status": "ok", "version": __version__}


@app.post("/matrices", response_model=MatricesResponse)
def matrices_route(request: MatricesRequest) -> MatricesResponse:
    try:
        return matrices(request)
    except (OrderingShapeMismatch, ValueError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))


@app.post("/cohomology", response_model=CohomologyResponse)
def cohomology_route(request: CohomologyRequest) -> CohomologyResponse:
    return cohomology_report(request)


@app.post("/decompose", response_model=DecomposeResponse)
def decompose_route(request: DecomposeRequest) -> DecomposeResponse:
    try:
        return decompose(request)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))


@app.post("/solve-dirac", response_model=SolveDiracResponse)
def solve_dirac_route(request: SolveDiracRequest) -> SolveDiracResponse:
    try:
        return solve_dirac(request)
    except NotInRange as exc:
        raise HTTPException(status_code=409, detail=str(exc))
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))


@app.post("/check", response_model=CheckResponse)
def check_route(request: CheckRequest) -> CheckResponse:
    return run_checks(request)
