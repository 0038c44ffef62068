"""Spectra, harmonic spaces, Hodge decomposition, Dirac solves."""

import numpy as np
import pytest
import sympy

from dec2d import (
    BasisOrdering,
    Form,
    GridShape,
    InhomogeneousForm,
    NotInRange,
    assemble_d,
    assemble_laplacian,
    betti_numbers,
    d,
    decompose,
    delta,
    energy_estimate_check,
    fixtures,
    harmonic_basis,
    inner_product,
    laplacian,
    mixed_norm,
    norm,
    solve_dirac,
    spectrum,
    vectorize,
)
from dec2d.checks import random_form, random_inhomogeneous
from dec2d.hodge import harmonic_projection

SMALL = [GridShape(1, 1), GridShape(2, 2), GridShape(3, 2), GridShape(3, 3)]


# -- spectra -----------------------------------------------------------------------

def test_2x2_degree0_spectrum():
    spect = spectrum(GridShape(2, 2), 0)
    assert np.allclose(spect.eigenvalues, [0.0, 4.0, 4.0, 8.0], atol=1e-12)
    assert spect.multiplicity_zero == 1
    assert spect.lambda_min_positive == pytest.approx(4.0, abs=1e-12)


def test_2x2_degree0_spectrum_matches_sympy():
    entries = sympy.Matrix(assemble_laplacian(GridShape(2, 2), 0).entries.tolist())
    expected = []
    for value, multiplicity in entries.eigenvals().items():
        expected.extend([float(value)] * multiplicity)
    spect = spectrum(GridShape(2, 2), 0)
    assert np.allclose(spect.eigenvalues, sorted(expected), atol=1e-12)


def test_1x1_spectra_all_zero():
    for degree, count in ((0, 1), (1, 2), (2, 1)):
        spect = spectrum(GridShape(1, 1), degree)
        assert np.allclose(spect.eigenvalues, 0.0, atol=1e-12)
        assert spect.multiplicity_zero == count
        assert spect.lambda_min_positive is None


@pytest.mark.parametrize("shape", SMALL)
@pytest.mark.parametrize("degree", [0, 1, 2])
def test_spectrum_nonnegative(shape, degree):
    spect = spectrum(shape, degree)
    assert spect.eigenvalues.min() >= -1e-10


@pytest.mark.parametrize("shape", SMALL)
@pytest.mark.parametrize("degree", [0, 1, 2])
def test_kernel_multiplicity_equals_betti(shape, degree):
    assert spectrum(shape, degree).multiplicity_zero == betti_numbers(shape)[degree]


# -- harmonic spaces -----------------------------------------------------------------

@pytest.mark.parametrize("shape", SMALL)
@pytest.mark.parametrize("degree", [0, 1, 2])
def test_harmonic_basis_properties(shape, degree):
    basis = harmonic_basis(shape, degree)
    assert len(basis) == betti_numbers(shape)[degree]
    for i, h in enumerate(basis):
        assert laplacian(h).max_abs_diff(Form.zeros(shape, degree)) <= 1e-12
        assert d(h).max_abs_diff(Form.zeros(shape, d(h).degree)) <= 1e-12
        assert delta(h).max_abs_diff(Form.zeros(shape, delta(h).degree)) <= 1e-12
        assert inner_product(h, h) == pytest.approx(1.0, abs=1e-12)
        for other in basis[i + 1:]:
            assert inner_product(h, other) == pytest.approx(0.0, abs=1e-12)


def test_2x2_degree1_harmonics_annihilated_by_reference_matrix():
    shape = GridShape(2, 2)
    lap1 = np.array(fixtures.reference_entries("lap1"), dtype=float)
    ordering = BasisOrdering.paper2x2(shape, 1)
    for h in harmonic_basis(shape, 1):
        vec = vectorize(h, ordering)
        assert np.max(np.abs(lap1 @ vec)) <= 1e-12


def test_harmonic_basis_deterministic():
    a = harmonic_basis(GridShape(3, 3), 1)
    b = harmonic_basis(GridShape(3, 3), 1)
    for x, y in zip(a, b):
        assert x.max_abs_diff(y) == 0.0


# -- decomposition ---------------------------------------------------------------------

@pytest.mark.parametrize("shape", SMALL)
@pytest.mark.parametrize("degree", [0, 1, 2])
def test_decompose_properties(shape, degree):
    rng = np.random.default_rng(51)
    for _ in range(10):
        w = random_form(shape, degree, rng)
        parts = decompose(w)
        total = parts.exact + parts.coexact + parts.harmonic
        assert total.max_abs_diff(w) <= 1e-10
        assert parts.residual_norm <= 1e-10
        # mutual orthogonality
        assert abs(inner_product(parts.exact, parts.coexact)) <= 1e-10
        assert abs(inner_product(parts.exact, parts.harmonic)) <= 1e-10
        assert abs(inner_product(parts.coexact, parts.harmonic)) <= 1e-10
        # membership: exact part closed, coexact part coclosed, harmonic flat
        if degree > 0:
            assert _distance_to_column_space(
                parts.exact, assemble_d(shape, degree - 1).entries) <= 1e-9
        else:
            assert norm(parts.exact) <= 1e-10
        if degree < 2:
            assert _distance_to_column_space(
                parts.coexact, assemble_d(shape, degree).entries.T) <= 1e-9
        else:
            assert norm(parts.coexact) <= 1e-10
        assert norm(laplacian(parts.harmonic)) <= 1e-9


def _distance_to_column_space(w, mat):
    # residual after projecting onto an SVD basis of the column space
    left, singular, _ = np.linalg.svd(mat.astype(float), full_matrices=False)
    basis = left[:, singular > 1e-12 * max(1.0, singular.max(initial=0.0))]
    vec = vectorize(w, BasisOrdering.canonical(w.shape, w.degree))
    residual = vec - basis @ (basis.T @ vec)
    return float(np.linalg.norm(residual))


def test_decompose_pythagoras():
    shape = GridShape(3, 3)
    rng = np.random.default_rng(52)
    for degree in (0, 1, 2):
        w = random_form(shape, degree, rng)
        parts = decompose(w)
        total = (
            inner_product(parts.exact, parts.exact)
            + inner_product(parts.coexact, parts.coexact)
            + inner_product(parts.harmonic, parts.harmonic)
        )
        assert total == pytest.approx(inner_product(w, w), rel=1e-10)


def test_decompose_of_special_forms():
    shape = GridShape(3, 2)
    rng = np.random.default_rng(53)
    phi = random_form(shape, 0, rng)
    exact_input = d(phi)
    parts = decompose(exact_input)
    assert norm(parts.coexact) <= 1e-10
    assert norm(parts.harmonic) <= 1e-10
    psi = random_form(shape, 2, rng)
    coexact_input = delta(psi)
    parts = decompose(coexact_input)
    assert norm(parts.exact) <= 1e-10
    assert norm(parts.harmonic) <= 1e-10
    h = harmonic_basis(shape, 1)[0]
    parts = decompose(h)
    assert norm(parts.exact) <= 1e-10
    assert norm(parts.coexact) <= 1e-10
    assert parts.harmonic.max_abs_diff(h) <= 1e-10
    constant = Form(shape, 1, [np.full((3, 2), 2.0), np.full((3, 2), -1.5)])
    parts = decompose(constant)
    assert parts.harmonic.max_abs_diff(constant) <= 1e-10


# -- Dirac solve -----------------------------------------------------------------------

@pytest.mark.parametrize("shape", SMALL[1:])
def test_solve_dirac_round_trip(shape):
    from dec2d import dirac

    rng = np.random.default_rng(54)
    for _ in range(10):
        draw = random_inhomogeneous(shape, rng)
        rhs = draw - harmonic_projection(draw)
        omega = solve_dirac(rhs)
        back = dirac(omega)
        defect = max(
            back.parts[r].max_abs_diff(rhs.parts[r]) for r in range(3))
        assert defect <= 1e-8
        assert mixed_norm(harmonic_projection(omega)) <= 1e-9


def test_solve_dirac_zero_rhs():
    shape = GridShape(2, 2)
    zero = InhomogeneousForm.zeros(shape)
    omega = solve_dirac(zero)
    assert mixed_norm(omega) == 0.0


def test_solve_dirac_rejects_harmonic_rhs():
    shape = GridShape(2, 2)
    h = harmonic_basis(shape, 1)[0]
    F = InhomogeneousForm(Form.zeros(shape, 0), h, Form.zeros(shape, 2))
    with pytest.raises(NotInRange):
        solve_dirac(F)


def test_solve_dirac_tolerance_flag():
    # a tiny harmonic contamination passes under a loose tolerance
    shape = GridShape(2, 2)
    rng = np.random.default_rng(55)
    draw = random_inhomogeneous(shape, rng)
    clean = draw - harmonic_projection(draw)
    h = harmonic_basis(shape, 1)[0]
    dirty = clean + InhomogeneousForm(
        Form.zeros(shape, 0), 1e-13 * h, Form.zeros(shape, 2))
    solve_dirac(dirty)  # default 1e-8 passes
    with pytest.raises(NotInRange):
        solve_dirac(dirty, harmonic_tolerance=1e-16)


# -- energy bound ----------------------------------------------------------------------

@pytest.mark.parametrize("shape", SMALL)
def test_energy_estimate_holds(shape):
    rng = np.random.default_rng(56)
    for _ in range(20):
        omega = random_inhomogeneous(shape, rng)
        lhs, rhs, c = energy_estimate_check(omega)
        assert lhs <= rhs + 1e-9 * max(1.0, rhs)
        if (shape.n, shape.m) != (1, 1):
            assert c > 0.0


def test_energy_constant_2x2():
    # Dirac squared on the 2x2 torus has smallest positive eigenvalue 4
    _, _, c = energy_estimate_check(InhomogeneousForm.zeros(GridShape(2, 2)))
    assert c == pytest.approx(0.25, abs=1e-12)


def test_energy_constant_1x1_degenerate():
    omega = InhomogeneousForm.zeros(GridShape(1, 1))
    lhs, rhs, c = energy_estimate_check(omega)
    assert c == 0.0 and lhs == 0.0 and rhs == 0.0


def test_energy_equality_for_harmonic():
    shape = GridShape(2, 2)
    h = harmonic_basis(shape, 1)[0]
    omega = InhomogeneousForm(Form.zeros(shape, 0), h, Form.zeros(shape, 2))
    lhs, rhs, _ = energy_estimate_check(omega)
    assert lhs == pytest.approx(rhs, abs=1e-12)
