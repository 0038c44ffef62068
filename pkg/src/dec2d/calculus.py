"""Coboundary, cup product, Hodge star, codifferential and inner products.

All operators act componentwise through unit index shifts. On the torus the
shifts wrap, so every operator is total. On a plane window the coboundary
and codifferential write every cell whose stencil stays inside the array
(other outputs stay zero), while the Hodge star is only total for the
degrees that need no shift; the shifted degrees raise
StarUndefinedOnWindowBoundary and boundary terms are evaluated lazily.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .errors import DegreeMismatch, ShapeMismatch, StarUndefinedOnWindowBoundary
from .forms import Form, InhomogeneousForm
from .grid import CellId, Chain, boundary, pairing, window_chain


def _tau(arr: np.ndarray, axis: int) -> np.ndarray:
    """Array whose [k] entry reads the input at k+1, wrapping."""
    return np.roll(arr, -1, axis=axis)


def _sigma(arr: np.ndarray, axis: int) -> np.ndarray:
    """Array whose [k] entry reads the input at k-1, wrapping."""
    return np.roll(arr, 1, axis=axis)


# -- coboundary --------------------------------------------------------------

def d(w: Form) -> Form:
    """Discrete exterior derivative.

    Degree 0 maps to the forward differences (u, v) along k and s; degree 1
    maps to the discrete curl; degree 2 is annihilated (returns the flagged
    zero of the trivial successor space).
    """
    if w.annihilated or w.degree == 2:
        return Form.zeros(w.shape, 2, annihilated=True)
    if not w.shape.is_torus:
        return _d_window(w)
    if w.degree == 0:
        phi = w.phi
        return Form(w.shape, 1, (_tau(phi, 0) - phi, _tau(phi, 1) - phi))
    u, v = w.u, w.v
    psi = (_tau(v, 0) - v) - (_tau(u, 1) - u)
    return Form(w.shape, 2, (psi,))


def _d_window(w: Form) -> Form:
    n, m = w.shape.n, w.shape.m
    if w.degree == 0:
        phi = w.phi
        u = np.zeros_like(phi)
        v = np.zeros_like(phi)
        u[: n + 1, :] = phi[1: n + 2, :] - phi[: n + 1, :]
        v[:, : m + 1] = phi[:, 1: m + 2] - phi[:, : m + 1]
        return Form(w.shape, 1, (u, v))
    u, v = w.u, w.v
    psi = np.zeros_like(u)
    psi[: n + 1, : m + 1] = (v[1: n + 2, : m + 1] - v[: n + 1, : m + 1]) - (
        u[: n + 1, 1: m + 2] - u[: n + 1, : m + 1]
    )
    return Form(w.shape, 2, (psi,))


# -- codifferential ----------------------------------------------------------

def delta(w: Form) -> Form:
    """Codifferential (closed-form route), the formal adjoint of d.

    Degree 0 is annihilated; degree 1 maps to the backward divergence;
    degree 2 maps to the rotated backward differences.
    """
    if w.annihilated or w.degree == 0:
        return Form.zeros(w.shape, 0, annihilated=True)
    if not w.shape.is_torus:
        return _delta_window(w)
    if w.degree == 1:
        u, v = w.u, w.v
        phi = (_sigma(u, 0) - u) + (_sigma(v, 1) - v)
        return Form(w.shape, 0, (phi,))
    psi = w.psi
    return Form(w.shape, 1, (psi - _sigma(psi, 1), _sigma(psi, 0) - psi))


def _delta_window(w: Form) -> Form:
    n, m = w.shape.n, w.shape.m
    if w.degree == 1:
        u, v = w.u, w.v
        phi = np.zeros_like(u)
        phi[1: n + 2, 1: m + 2] = (u[: n + 1, 1: m + 2] - u[1: n + 2, 1: m + 2]) + (
            v[1: n + 2, : m + 1] - v[1: n + 2, 1: m + 2]
        )
        return Form(w.shape, 0, (phi,))
    psi = w.psi
    u = np.zeros_like(psi)
    v = np.zeros_like(psi)
    u[:, 1: m + 2] = psi[:, 1: m + 2] - psi[:, : m + 1]
    v[1: n + 2, :] = psi[: n + 1, :] - psi[1: n + 2, :]
    return Form(w.shape, 1, (u, v))


def delta_via_star(w: Form) -> Form:
    """Codifferential via the compositional route (-1)^r star_inv(d(star w)).

    Torus only for degrees whose star needs shifts; used to cross-check the
    closed-form route.
    """
    if w.annihilated or w.degree == 0:
        return Form.zeros(w.shape, 0, annihilated=True)
    sign = -1.0 if w.degree == 1 else 1.0
    return sign * star_inv(d(star(w)))


# -- cup product ---------------------------------------------------------------

def cup(a: Form, b: Form) -> Form:
    """Cup product, extended bilinearly from the basis multiplication table.

    Total degree above 2 is annihilated. On a plane window only interior
    outputs are written.
    """
    if a.shape != b.shape:
        raise ShapeMismatch("cup operands live on different grids")
    if a.annihilated or b.annihilated or a.degree + b.degree > 2:
        return Form.zeros(a.shape, 2, annihilated=True)
    if a.shape.is_torus:
        return _cup_torus(a, b)
    return _cup_window(a, b)


def _cup_torus(a: Form, b: Form) -> Form:
    ra, rb = a.degree, b.degree
    shape = a.shape
    if ra == 0 and rb == 0:
        return Form(shape, 0, (a.phi * b.phi,))
    if ra == 0 and rb == 1:
        return Form(shape, 1, (a.phi * b.u, a.phi * b.v))
    if ra == 1 and rb == 0:
        return Form(shape, 1, (a.u * _tau(b.phi, 0), a.v * _tau(b.phi, 1)))
    if ra == 0 and rb == 2:
        return Form(shape, 2, (a.phi * b.psi,))
    if ra == 2 and rb == 0:
        return Form(shape, 2, (a.psi * _tau(_tau(b.phi, 0), 1),))
    # (1, 1)
    psi = a.u * _tau(b.v, 0) - a.v * _tau(b.u, 1)
    return Form(shape, 2, (psi,))


def _cup_window(a: Form, b: Form) -> Form:
    n, m = a.shape.n, a.shape.m
    ra, rb = a.degree, b.degree
    inner = (slice(1, n + 1), slice(1, m + 1))
    tau_k = (slice(2, n + 2), slice(1, m + 1))
    tau_s = (slice(1, n + 1), slice(2, m + 2))
    tau_ks = (slice(2, n + 2), slice(2, m + 2))

    def build(*pairs):
        out = []
        for expr in pairs:
            arr = np.zeros((n + 2, m + 2))
            arr[inner] = expr
            out.append(arr)
        return out

    if ra == 0 and rb == 0:
        return Form(a.shape, 0, build(a.phi[inner] * b.phi[inner]))
    if ra == 0 and rb == 1:
        return Form(a.shape, 1, build(a.phi[inner] * b.u[inner], a.phi[inner] * b.v[inner]))
    if ra == 1 and rb == 0:
        return Form(a.shape, 1, build(a.u[inner] * b.phi[tau_k], a.v[inner] * b.phi[tau_s]))
    if ra == 0 and rb == 2:
        return Form(a.shape, 2, build(a.phi[inner] * b.psi[inner]))
    if ra == 2 and rb == 0:
        return Form(a.shape, 2, build(a.psi[inner] * b.phi[tau_ks]))
    psi = a.u[inner] * b.v[tau_k] - a.v[inner] * b.u[tau_s]
    return Form(a.shape, 2, build(psi))


# -- Hodge star ----------------------------------------------------------------

def star(w: Form) -> Form:
    """Hodge star, degree r -> 2-r, with the unit index shifts.

    On a plane window only degree 0 is total; the shifted degrees would
    read outside the ghost ring and raise StarUndefinedOnWindowBoundary.
    """
    if w.annihilated:
        return Form.zeros(w.shape, 2 - w.degree, annihilated=True)
    if w.shape.is_torus:
        if w.degree == 0:
            return Form(w.shape, 2, (w.phi.copy(),))
        if w.degree == 1:
            return Form(w.shape, 1, (-_sigma(w.v, 1), _sigma(w.u, 0)))
        return Form(w.shape, 0, (_sigma(_sigma(w.psi, 0), 1),))
    if w.degree == 0:
        return Form(w.shape, 2, (w.phi.copy(),))
    raise StarUndefinedOnWindowBoundary(
        f"star of a degree-{w.degree} form needs components beyond the ghost ring"
    )


def star_inv(w: Form) -> Form:
    """Inverse Hodge star; star_inv(star(w)) == w on the torus.

    On a plane window only degree 2 is total.
    """
    if w.annihilated:
        return Form.zeros(w.shape, 2 - w.degree, annihilated=True)
    if w.shape.is_torus:
        if w.degree == 0:
            return Form(w.shape, 2, (_tau(_tau(w.phi, 0), 1),))
        if w.degree == 1:
            return Form(w.shape, 1, (_tau(w.v, 0), -_tau(w.u, 1)))
        return Form(w.shape, 0, (w.psi.copy(),))
    if w.degree == 2:
        return Form(w.shape, 0, (w.psi.copy(),))
    raise StarUndefinedOnWindowBoundary(
        f"star_inv of a degree-{w.degree} form needs components beyond the ghost ring"
    )


# -- inner products and boundary term -------------------------------------------

def inner_product(a: Form, b: Form, window: Optional[Chain] = None) -> float:
    """Inner product over the window: componentwise sum on interior cells.

    Forms of different degrees are orthogonal by definition. When an
    explicit window chain is supplied, the definitional route through the
    cup product and the Hodge star is used instead.
    """
    if a.shape != b.shape:
        raise ShapeMismatch("inner product operands live on different grids")
    if a.annihilated or b.annihilated or a.degree != b.degree:
        return 0.0
    if window is not None:
        return inner_product_via_cup(a, b, window)
    total = 0.0
    for index in range(len(a.components)):
        total += float(np.sum(a.interior(index) * b.interior(index)))
    return total


def inner_product_via_cup(a: Form, b: Form, window: Optional[Chain] = None) -> float:
    """Definitional inner product: pair the window chain with a cup star(b)."""
    if a.shape != b.shape:
        raise ShapeMismatch("inner product operands live on different grids")
    if a.annihilated or b.annihilated or a.degree != b.degree:
        return 0.0
    chain = window if window is not None else window_chain(a.shape)
    if a.shape.is_torus:
        return pairing(chain, cup(a, star(b)))
    total = 0.0
    for cell, coeff in chain.coefficients.items():
        total += coeff * cup_star_component(a, b, cell)
    return float(total)


def boundary_term(phi: Form, omega: Form, window: Optional[Chain] = None) -> float:
    """Pairing of the window's boundary chain with phi cup star(omega)."""
    if omega.degree != phi.degree + 1:
        raise DegreeMismatch("boundary term needs degrees r and r+1")
    if phi.shape != omega.shape:
        raise ShapeMismatch("boundary term operands live on different grids")
    chain = window if window is not None else window_chain(phi.shape)
    bd = boundary(chain, phi.shape)
    total = 0.0
    for cell, coeff in bd.coefficients.items():
        total += coeff * cup_star_component(phi, omega, cell)
    return float(total)


def _value(w: Form, index: int, k: int, s: int) -> float:
    """Component value at raw indices; windows must stay in the ghost ring."""
    shape = w.shape
    if shape.is_torus:
        return float(w.components[index][(k - 1) % shape.n, (s - 1) % shape.m])
    if not (0 <= k <= shape.n + 1 and 0 <= s <= shape.m + 1):
        raise StarUndefinedOnWindowBoundary(
            f"component ({k},{s}) lies outside the ghost ring"
        )
    return float(w.components[index][k, s])


def cup_star_component(a: Form, b: Form, cell: CellId) -> float:
    """One component of a cup star(b), evaluated lazily at a single cell.

    Covers the degree pairs the window geometry needs: equal degrees on
    face cells and (r, r+1) on edge cells. star(b) components are fetched
    through the same unit shifts the full-array star uses, so this path
    stays well defined on chains whose stencils fit inside the array.
    """
    shape = a.shape
    k, s = cell.k, cell.s
    ra, rb = a.degree, b.degree
    tk, ts = shape.tau_k(k), shape.tau_s(s)

    def star_b(name: str, kk: int, ss: int) -> float:
        # components of star(b) at raw indices
        if rb == 0:
            return _value(b, 0, kk, ss)  # psi of star(b) equals phi of b
        if rb == 1:
            if name == "u":
                return -_value(b, 1, kk, shape.sigma_s(ss))
            return _value(b, 0, shape.sigma_k(kk), ss)
        return _value(b, 0, shape.sigma_k(kk), shape.sigma_s(ss))  # phi of star(b)

    if ra == rb:
        if cell.dim != 2:
            raise DegreeMismatch("equal-degree cup star components live on faces")
        if ra == 0:
            return _value(a, 0, k, s) * star_b("psi", k, s)
        if ra == 1:
            return _value(a, 0, k, s) * star_b("v", tk, s) - _value(a, 1, k, s) * star_b("u", k, ts)
        return _value(a, 0, k, s) * star_b("phi", tk, ts)
    if rb == ra + 1:
        if cell.dim != 1:
            raise DegreeMismatch("(r, r+1) cup star components live on edges")
        if ra == 0:
            if cell.direction == 1:
                return _value(a, 0, k, s) * star_b("u", k, s)
            return _value(a, 0, k, s) * star_b("v", k, s)
        if cell.direction == 1:
            return _value(a, 0, k, s) * star_b("phi", tk, s)
        return _value(a, 1, k, s) * star_b("phi", k, ts)
    raise DegreeMismatch(f"unsupported degree pair ({ra}, {rb})")


def norm(w: Form) -> float:
    """Norm induced by the window inner product."""
    return math.sqrt(max(inner_product(w, w), 0.0))


def laplacian(w: Form) -> Form:
    """d delta + delta d; the annihilated branch drops out at the ends."""
    if w.degree == 0:
        return delta(d(w))
    if w.degree == 2:
        return d(delta(w))
    return d(delta(w)) + delta(d(w))


# -- inhomogeneous helpers -------------------------------------------------------

def dirac(F: InhomogeneousForm) -> InhomogeneousForm:
    """Hodge-Dirac operator d + delta on an inhomogeneous form."""
    p0, p1, p2 = F.parts
    return InhomogeneousForm(delta(p1), d(p0) + delta(p2), d(p1))


def mixed_inner_product(A: InhomogeneousForm, B: InhomogeneousForm) -> float:
    """Inner product of inhomogeneous forms: sum of the per-degree products."""
    return sum(inner_product(a, b) for a, b in zip(A.parts, B.parts))


def mixed_norm(F: InhomogeneousForm) -> float:
    return math.sqrt(max(mixed_inner_product(F, F), 0.0))
