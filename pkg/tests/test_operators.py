"""Matrix assembly against an independent index-arithmetic oracle and the
stored reference matrices."""

import numpy as np
import pytest

from dec2d import (
    BasisOrdering,
    DimensionMismatch,
    Form,
    GridShape,
    OrderingShapeMismatch,
    apply,
    assemble_d,
    assemble_delta,
    assemble_dirac,
    assemble_laplacian,
    assemble_named,
    d,
    delta,
    devectorize,
    dirac,
    laplacian,
    vectorize,
)
from dec2d import fixtures
from dec2d.checks import random_form
from dec2d.operators import FIRST_ORDER_ENTRIES, LAPLACIAN_ENTRIES, OPERATOR_NAMES

SHAPES = [GridShape(1, 1), GridShape(2, 2), GridShape(3, 3), GridShape(2, 4), GridShape(4, 3)]


# -- independent oracle -------------------------------------------------------
#
# Builds the same matrices straight from index arithmetic on cell labels,
# without touching Form or the array machinery.

def _vertices(shape):
    return [(k, s) for s in range(1, shape.m + 1) for k in range(1, shape.n + 1)]


def _edges(shape):
    out = []
    for fam in (1, 2):
        for s in range(1, shape.m + 1):
            for k in range(1, shape.n + 1):
                out.append((fam, k, s))
    return out


def _wrap(i, extent):
    return (i - 1) % extent + 1


def oracle_d0(shape):
    verts = _vertices(shape)
    edges = _edges(shape)
    vi = {c: i for i, c in enumerate(verts)}
    mat = np.zeros((len(edges), len(verts)), dtype=np.int64)
    for row, (fam, k, s) in enumerate(edges):
        if fam == 1:
            head = (_wrap(k + 1, shape.n), s)
        else:
            head = (k, _wrap(s + 1, shape.m))
        mat[row, vi[head]] += 1
        mat[row, vi[(k, s)]] -= 1
    return mat


def oracle_d1(shape):
    edges = _edges(shape)
    faces = _vertices(shape)  # same (k, s) enumeration
    ei = {c: i for i, c in enumerate(edges)}
    mat = np.zeros((len(faces), len(edges)), dtype=np.int64)
    for row, (k, s) in enumerate(faces):
        mat[row, ei[(2, _wrap(k + 1, shape.n), s)]] += 1
        mat[row, ei[(2, k, s)]] -= 1
        mat[row, ei[(1, k, _wrap(s + 1, shape.m))]] -= 1
        mat[row, ei[(1, k, s)]] += 1
    return mat


@pytest.mark.parametrize("shape", SHAPES)
def test_d_matrices_match_oracle(shape):
    assert np.array_equal(assemble_d(shape, 0).entries, oracle_d0(shape))
    assert np.array_equal(assemble_d(shape, 1).entries, oracle_d1(shape))


@pytest.mark.parametrize("shape", SHAPES)
def test_delta_is_transpose_of_d(shape):
    assert np.array_equal(assemble_delta(shape, 1).entries, assemble_d(shape, 0).entries.T)
    assert np.array_equal(assemble_delta(shape, 2).entries, assemble_d(shape, 1).entries.T)


@pytest.mark.parametrize("shape", SHAPES)
def test_d_composition_vanishes(shape):
    d0 = assemble_d(shape, 0).entries
    d1 = assemble_d(shape, 1).entries
    assert not np.any(d1 @ d0)


@pytest.mark.parametrize("shape", SHAPES)
def test_laplacians_are_normal_products(shape):
    d0 = assemble_d(shape, 0).entries
    d1 = assemble_d(shape, 1).entries
    assert np.array_equal(assemble_laplacian(shape, 0).entries, d0.T @ d0)
    assert np.array_equal(assemble_laplacian(shape, 1).entries, d0 @ d0.T + d1.T @ d1)
    assert np.array_equal(assemble_laplacian(shape, 2).entries, d1 @ d1.T)


def test_laplacian0_five_point_stencil():
    shape = GridShape(4, 4)
    lap = assemble_laplacian(shape, 0)
    order = lap.cols
    for j, cell in enumerate(order.labels):
        col = lap.entries[:, j]
        assert col[j] == 4
        neighbours = [
            shape.vertex(cell.k + 1, cell.s), shape.vertex(cell.k - 1, cell.s),
            shape.vertex(cell.k, cell.s + 1), shape.vertex(cell.k, cell.s - 1),
        ]
        for nb in neighbours:
            assert col[order.index(nb)] == -1
        assert col.sum() == 0


@pytest.mark.parametrize("shape", SHAPES)
def test_entry_ranges(shape):
    for degree in (0, 1):
        assert set(np.unique(assemble_d(shape, degree).entries)) <= FIRST_ORDER_ENTRIES
    for degree in (1, 2):
        assert set(np.unique(assemble_delta(shape, degree).entries)) <= FIRST_ORDER_ENTRIES
    for degree in (0, 1, 2):
        entries = assemble_laplacian(shape, degree).entries
        assert set(np.unique(entries)) <= LAPLACIAN_ENTRIES


@pytest.mark.parametrize("shape", SHAPES)
def test_matrix_application_matches_operators(shape):
    rng = np.random.default_rng(31)
    for degree in (0, 1):
        w = random_form(shape, degree, rng, integer=True)
        cols = BasisOrdering.canonical(shape, degree)
        rows = BasisOrdering.canonical(shape, degree + 1)
        out = apply(assemble_d(shape, degree), vectorize(w, cols))
        assert np.array_equal(out, vectorize(d(w), rows))
    for degree in (1, 2):
        w = random_form(shape, degree, rng, integer=True)
        cols = BasisOrdering.canonical(shape, degree)
        rows = BasisOrdering.canonical(shape, degree - 1)
        out = apply(assemble_delta(shape, degree), vectorize(w, cols))
        assert np.array_equal(out, vectorize(delta(w), rows))
    for degree in (0, 1, 2):
        w = random_form(shape, degree, rng, integer=True)
        order = BasisOrdering.canonical(shape, degree)
        out = apply(assemble_laplacian(shape, degree), vectorize(w, order))
        assert np.array_equal(out, vectorize(laplacian(w), order))


# -- reference matrices ------------------------------------------------------------

REFERENCE_OPS = ("d0", "d1", "delta1", "delta2", "lap0", "lap1", "lap2", "dirac")


@pytest.mark.parametrize("op", REFERENCE_OPS)
def test_paper2x2_matches_reference(op):
    shape = GridShape(2, 2)
    matrix = assemble_named(shape, op, ordering="paper2x2")
    assert fixtures.verify_matrix(op, matrix.entries)


def test_reference_relations():
    # stored first-order blocks generate the stored second-order ones
    ref = {op: np.array(fixtures.reference_entries(op)) for op in REFERENCE_OPS}
    assert np.array_equal(ref["delta1"], ref["d0"].T)
    assert np.array_equal(ref["delta2"], ref["d1"].T)
    assert not np.any(ref["d1"] @ ref["d0"])
    assert np.array_equal(ref["lap0"], ref["delta1"] @ ref["d0"])
    assert np.array_equal(ref["lap1"], ref["d0"] @ ref["delta1"] + ref["delta2"] @ ref["d1"])
    assert np.array_equal(ref["lap2"], ref["d1"] @ ref["delta2"])


def test_paper2x2_requires_2x2_torus():
    from dec2d import Topology

    with pytest.raises(OrderingShapeMismatch):
        BasisOrdering.paper2x2(GridShape(3, 3), 0)
    with pytest.raises(OrderingShapeMismatch):
        BasisOrdering.paper2x2(GridShape(2, 2, Topology.PLANE_WINDOW), 0)


# -- dirac ---------------------------------------------------------------------------

@pytest.mark.parametrize("shape", SHAPES)
def test_dirac_block_structure(shape):
    nm = shape.n * shape.m
    big = assemble_dirac(shape).entries
    assert big.shape == (4 * nm, 4 * nm)
    d0 = assemble_d(shape, 0).entries
    d1 = assemble_d(shape, 1).entries
    assert np.array_equal(big[:nm, :nm], np.zeros((nm, nm)))
    assert np.array_equal(big[:nm, nm:3 * nm], d0.T)
    assert np.array_equal(big[nm:3 * nm, :nm], d0)
    assert np.array_equal(big[nm:3 * nm, 3 * nm:], d1.T)
    assert np.array_equal(big[3 * nm:, nm:3 * nm], d1)
    assert np.array_equal(big[:nm, 3 * nm:], np.zeros((nm, nm)))
    assert np.array_equal(big, big.T)


@pytest.mark.parametrize("shape", SHAPES)
def test_dirac_square_is_block_laplacian(shape):
    nm = shape.n * shape.m
    big = assemble_dirac(shape).entries
    square = big @ big
    assert np.array_equal(square[:nm, :nm], assemble_laplacian(shape, 0).entries)
    assert np.array_equal(square[nm:3 * nm, nm:3 * nm], assemble_laplacian(shape, 1).entries)
    assert np.array_equal(square[3 * nm:, 3 * nm:], assemble_laplacian(shape, 2).entries)
    off = square.copy()
    off[:nm, :nm] = 0
    off[nm:3 * nm, nm:3 * nm] = 0
    off[3 * nm:, 3 * nm:] = 0
    assert not np.any(off)


def test_dirac_matches_operator():
    shape = GridShape(3, 2)
    rng = np.random.default_rng(32)
    from dec2d import InhomogeneousForm

    parts = tuple(random_form(shape, r, rng, integer=True) for r in range(3))
    f = InhomogeneousForm(*parts)
    out = dirac(f)
    mixed = BasisOrdering.mixed(shape, "canonical")
    vec = np.concatenate([
        vectorize(parts[r], BasisOrdering.canonical(shape, r)) for r in range(3)])
    expect = apply(assemble_dirac(shape), vec)
    got = np.concatenate([
        vectorize(out.parts[r], BasisOrdering.canonical(shape, r)) for r in range(3)])
    assert np.array_equal(got, expect)
    assert len(mixed) == len(vec)


# -- plumbing ---------------------------------------------------------------------

def test_apply_dimension_mismatch():
    matrix = assemble_d(GridShape(2, 2), 0)
    with pytest.raises(DimensionMismatch):
        apply(matrix, np.zeros(5))


def test_vectorize_devectorize_round_trip():
    shape = GridShape(3, 4)
    rng = np.random.default_rng(33)
    for degree in (0, 1, 2):
        w = random_form(shape, degree, rng)
        order = BasisOrdering.canonical(shape, degree)
        back = devectorize(shape, degree, vectorize(w, order), order)
        assert back.max_abs_diff(w) == 0.0


def test_assemble_named_rejects_unknown():
    assert set(REFERENCE_OPS) == set(OPERATOR_NAMES)
    with pytest.raises(ValueError):
        assemble_named(GridShape(2, 2), "grad")


def test_d_matrix_invalid_degree():
    with pytest.raises(ValueError):
        assemble_d(GridShape(2, 2), 2)
    with pytest.raises(ValueError):
        assemble_delta(GridShape(2, 2), 0)
