"""Discrete exterior calculus on 2D grid complexes.

Core objects: grid cells and chains (grid), discrete forms (forms), the
calculus operators (calculus), dense integer operator matrices (operators),
exact rational linear algebra (rational), cohomology (cohomology), spectral
Hodge theory (hodge), property suites (checks), document schemas
(documents), the bundled 2x2 reference fixtures (fixtures), the FastAPI
service (service) and the command line client (cli).
"""

__version__ = "0.1.0"

from .calculus import (
    boundary_term,
    cup,
    d,
    delta,
    delta_via_star,
    dirac,
    inner_product,
    inner_product_via_cup,
    laplacian,
    mixed_inner_product,
    mixed_norm,
    norm,
    star,
    star_inv,
)
from .cohomology import (
    CohomologyResult,
    betti_numbers,
    cohomologous,
    generators,
    is_exact,
)
from .errors import (
    DecError,
    DegreeMismatch,
    DimensionMismatch,
    NotClosed,
    NotInRange,
    OrderingShapeMismatch,
    ShapeMismatch,
    SolverFailure,
    StarUndefinedOnWindowBoundary,
)
from .forms import Form, InhomogeneousForm
from .grid import (
    CellId,
    Chain,
    GridShape,
    Topology,
    boundary,
    pairing,
    shift_sigma,
    shift_tau,
    window_chain,
)
from .hodge import (
    HodgeDecomposition,
    Spectrum,
    decompose,
    energy_estimate_check,
    harmonic_basis,
    solve_dirac,
    spectrum,
)
from .operators import (
    BasisOrdering,
    OperatorMatrix,
    apply,
    assemble_d,
    assemble_delta,
    assemble_dirac,
    assemble_laplacian,
    assemble_named,
    devectorize,
    vectorize,
)

__all__ = [name for name in dir() if not name.startswith("_")]
