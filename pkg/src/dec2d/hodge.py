"""Spectra, harmonic bases, the Hodge splitting and the Dirac solve.

All solves are dense eigendecompositions of the exact integer matrices.
Decompositions are cached per (shape, degree) behind a lock so repeated
calls build each one at most once. The kernel cutoff is relative:
1e-9 times the largest eigenvalue magnitude (floor 1).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import calculus, operators, rational
from .errors import NotInRange, SolverFailure
from .forms import Form, InhomogeneousForm
from .grid import GridShape

KERNEL_RTOL = 1e-9
HARMONIC_RTOL = 1e-8

_cache_lock = threading.Lock()
_cache: Dict[tuple, object] = {}


def _cached(key: tuple, build):
    with _cache_lock:
        if key not in _cache:
            _cache[key] = build()
        return _cache[key]


def _eigh(entries: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    try:
        return np.linalg.eigh(entries.astype(np.float64))
    except np.linalg.LinAlgError as exc:  # pragma: no cover - desk-scale guard
        raise SolverFailure("dense eigendecomposition failed") from exc


def _threshold(eigenvalues: np.ndarray) -> float:
    top = float(np.max(np.abs(eigenvalues))) if eigenvalues.size else 0.0
    return KERNEL_RTOL * max(top, 1.0)


def _laplacian_eig(shape: GridShape, degree: int):
    def build():
        matrix = operators.assemble_laplacian(shape, degree)
        eigenvalues, eigenvectors = _eigh(matrix.entries)
        return matrix, eigenvalues, eigenvectors

    return _cached(("laplacian", shape, degree), build)


def _dirac_eig(shape: GridShape):
    def build():
        matrix = operators.assemble_dirac(shape)
        eigenvalues, eigenvectors = _eigh(matrix.entries)
        return matrix, eigenvalues, eigenvectors

    return _cached(("dirac", shape), build)


def _harmonic_data(shape: GridShape, degree: int):
    """Orthonormal harmonic basis: exact kernel, then QR with fixed signs."""

    def build():
        matrix = operators.assemble_laplacian(shape, degree)
        kernel = rational.nullspace(matrix.entries)
        ordering = operators.BasisOrdering.canonical(shape, degree)
        if not kernel:
            return (), np.zeros((len(ordering), 0))
        basis = np.array([[float(x) for x in vec] for vec in kernel]).T
        q, r = np.linalg.qr(basis)
        signs = np.sign(np.diag(r))
        signs[signs == 0] = 1.0
        q = q * signs
        forms = tuple(
            operators.devectorize(shape, degree, q[:, j], ordering)
            for j in range(q.shape[1])
        )
        return forms, q

    return _cached(("harmonic", shape, degree), build)


def harmonic_basis(shape: GridShape, degree: int) -> List[Form]:
    """Orthonormal basis of the degree-r harmonic space."""
    _require_torus(shape)
    forms, _ = _harmonic_data(shape, degree)
    return list(forms)


def _require_torus(shape: GridShape) -> None:
    if not shape.is_torus:
        raise ValueError("spectral routines are defined on the torus")


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray  # ascending
    multiplicity_zero: int
    lambda_min_positive: Optional[float]


def spectrum(shape: GridShape, degree: int) -> Spectrum:
    """Laplacian spectrum with the kernel multiplicity split off."""
    _require_torus(shape)
    _, eigenvalues, _ = _laplacian_eig(shape, degree)
    thr = _threshold(eigenvalues)
    below = int(np.count_nonzero(eigenvalues < thr))
    positive = eigenvalues[eigenvalues >= thr]
    smallest = float(positive[0]) if positive.size else None
    return Spectrum(eigenvalues.copy(), below, smallest)


@dataclass(frozen=True)
class HodgeDecomposition:
    exact: Form
    coexact: Form
    harmonic: Form
    residual_norm: float


def decompose(w: Form) -> HodgeDecomposition:
    """Orthogonal splitting into exact, coexact and harmonic parts.

    The non-harmonic remainder is inverted through the eigendecomposition
    (a Green's operator); the exact part is d(delta g) and the coexact part
    is delta(d g), with the degree-boundary parts identically zero.
    """
    shape = w.shape
    _require_torus(shape)
    degree = w.degree
    ordering = operators.BasisOrdering.canonical(shape, degree)
    vec = operators.vectorize(w, ordering)
    _, q = _harmonic_data(shape, degree)
    h = q @ (q.T @ vec) if q.size else np.zeros_like(vec)
    _, eigenvalues, eigenvectors = _laplacian_eig(shape, degree)
    thr = _threshold(eigenvalues)
    coeffs = eigenvectors.T @ (vec - h)
    inverse = np.zeros_like(eigenvalues)
    mask = eigenvalues > thr
    inverse[mask] = 1.0 / eigenvalues[mask]
    green = eigenvectors @ (coeffs * inverse)
    g = operators.devectorize(shape, degree, green, ordering)
    if degree == 0:
        exact = Form.zeros(shape, 0)
        coexact = calculus.delta(calculus.d(g))
    elif degree == 2:
        exact = calculus.d(calculus.delta(g))
        coexact = Form.zeros(shape, 2)
    else:
        exact = calculus.d(calculus.delta(g))
        coexact = calculus.delta(calculus.d(g))
    harmonic = operators.devectorize(shape, degree, h, ordering)
    residual = calculus.norm(w - exact - coexact - harmonic)
    return HodgeDecomposition(exact, coexact, harmonic, residual)


def solve_dirac(F: InhomogeneousForm,
                harmonic_tolerance: float = HARMONIC_RTOL) -> InhomogeneousForm:
    """Solve (d + delta) Omega = F.

    Raises NotInRange when the harmonic projection of F exceeds
    harmonic_tolerance times ||F||; the returned Omega is the minimum-norm
    solution (no harmonic component).
    """
    shape = F.shape
    _require_torus(shape)
    nm = shape.n * shape.m
    orderings = [operators.BasisOrdering.canonical(shape, r) for r in range(3)]
    f = np.concatenate([
        operators.vectorize(part, ordering)
        for part, ordering in zip(F.parts, orderings)
    ])
    _, eigenvalues, eigenvectors = _dirac_eig(shape)
    thr = _threshold(eigenvalues)
    coeffs = eigenvectors.T @ f
    kernel = np.abs(eigenvalues) <= thr
    fnorm = float(np.linalg.norm(f))
    if float(np.linalg.norm(coeffs[kernel])) > harmonic_tolerance * fnorm:
        raise NotInRange("right-hand side has a harmonic component")
    solution_coeffs = np.zeros_like(coeffs)
    solution_coeffs[~kernel] = coeffs[~kernel] / eigenvalues[~kernel]
    x = eigenvectors @ solution_coeffs
    parts = [
        operators.devectorize(shape, 0, x[0:nm], orderings[0]),
        operators.devectorize(shape, 1, x[nm:3 * nm], orderings[1]),
        operators.devectorize(shape, 2, x[3 * nm:4 * nm], orderings[2]),
    ]
    return InhomogeneousForm(*parts)


def harmonic_projection(F: InhomogeneousForm) -> InhomogeneousForm:
    """Componentwise projection onto the per-degree harmonic spaces."""
    shape = F.shape
    _require_torus(shape)
    parts = []
    for degree, part in enumerate(F.parts):
        ordering = operators.BasisOrdering.canonical(shape, degree)
        vec = operators.vectorize(part, ordering)
        _, q = _harmonic_data(shape, degree)
        h = q @ (q.T @ vec) if q.size else np.zeros_like(vec)
        parts.append(operators.devectorize(shape, degree, h, ordering))
    return InhomogeneousForm(*parts)


def energy_estimate_check(omega: InhomogeneousForm) -> Tuple[float, float, float]:
    """Evaluate both sides of the spectral energy bound.

    Returns (lhs, rhs, c_used) with
    lhs = ||omega||^2 and rhs = c (||d omega||^2 + ||delta omega||^2)
    + ||harmonic part||^2, where c is the reciprocal of the smallest
    positive eigenvalue of the squared Dirac matrix (0 when none exists).
    """
    shape = omega.shape
    _require_torus(shape)
    _, eigenvalues, _ = _dirac_eig(shape)
    squared = np.sort(eigenvalues ** 2)
    thr = KERNEL_RTOL * max(float(squared[-1]) if squared.size else 0.0, 1.0)
    positive = squared[squared > thr]
    c = float(1.0 / positive[0]) if positive.size else 0.0
    p0, p1, p2 = omega.parts
    d_sq = sum(calculus.inner_product(x, x) for x in (calculus.d(p0), calculus.d(p1)))
    delta_sq = sum(calculus.inner_product(x, x) for x in (calculus.delta(p1), calculus.delta(p2)))
    harmonic = harmonic_projection(omega)
    lhs = calculus.mixed_inner_product(omega, omega)
    rhs = c * (d_sq + delta_sq) + calculus.mixed_inner_product(harmonic, harmonic)
    return lhs, rhs, c
