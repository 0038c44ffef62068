"""Seeded property suites runnable from the service and the CLI.

Every suite draws its trial data from numpy's default_rng seeded with the
given seed, so runs are reproducible byte for byte. Integer trials draw
components from {-3..3}; float trials draw standard normals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

import numpy as np

from . import calculus, hodge
from .errors import NotInRange
from .forms import COMPONENT_NAMES, Form, InhomogeneousForm, array_extent
from .grid import GridShape, Topology

SUITE_NAMES = ("stokes", "leibniz", "adjoint", "star", "hodge")


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    counterexample: Optional[dict] = None


def random_form(shape: GridShape, degree: int, rng: np.random.Generator,
                integer: bool = False) -> Form:
    extent = array_extent(shape)
    count = len(COMPONENT_NAMES[degree])
    if integer:
        arrays = [rng.integers(-3, 4, size=extent).astype(np.float64) for _ in range(count)]
    else:
        arrays = [rng.standard_normal(extent) for _ in range(count)]
    return Form(shape, degree, arrays)


def random_inhomogeneous(shape: GridShape, rng: np.random.Generator,
                         integer: bool = False) -> InhomogeneousForm:
    return InhomogeneousForm(*(random_form(shape, r, rng, integer) for r in range(3)))


def _max_component(w: Form) -> float:
    return max(float(np.max(np.abs(c))) for c in w.components)


def _form_defect(a: Form, b: Form) -> float:
    """Max componentwise difference; degree-mismatched zeros compare by size."""
    if a.degree == b.degree and a.shape == b.shape:
        return a.max_abs_diff(b)
    return _max_component(a) + _max_component(b)


def _document(w: Form) -> dict:
    from .documents import FormDocument  # local import keeps startup light

    return FormDocument.from_form(w).model_dump()


def _loop(name: str, trials: int, tol: float,
          trial: Callable[[int], tuple]) -> CheckResult:
    """Run one property over `trials` draws; keep the worst defect."""
    worst = 0.0
    counterexample = None
    for t in range(trials):
        defect, witness = trial(t)
        if defect > worst:
            worst = defect
            if defect > tol:
                counterexample = witness
    passed = worst <= tol
    detail = f"max defect {worst:.3e} over {trials} trials (tol {tol:g})"
    return CheckResult(name, passed, detail,
                       None if passed else counterexample)


# -- suites -------------------------------------------------------------------


def _suite_leibniz(shape: GridShape, seed: int, trials: int) -> List[CheckResult]:
    rng = np.random.default_rng(seed)
    window = GridShape(shape.n, shape.m, Topology.PLANE_WINDOW)
    results = []

    def dd_torus(_):
        phi = random_form(shape, 0, rng, integer=True)
        return _max_component(calculus.d(calculus.d(phi))), _document(phi)

    def dd_window(_):
        phi = random_form(window, 0, rng, integer=True)
        return _max_component(calculus.d(calculus.d(phi))), _document(phi)

    def deltadelta_torus(_):
        psi = random_form(shape, 2, rng, integer=True)
        return _max_component(calculus.delta(calculus.delta(psi))), _document(psi)

    results.append(_loop("d_d_zero_torus", trials, 0.0, dd_torus))
    results.append(_loop("d_d_zero_window", trials, 0.0, dd_window))
    results.append(_loop("delta_delta_zero_torus", trials, 0.0, deltadelta_torus))

    for ra, rb in ((0, 0), (0, 1), (1, 0), (1, 1), (0, 2), (2, 0)):
        def leibniz(_, ra=ra, rb=rb):
            a = random_form(shape, ra, rng, integer=True)
            b = random_form(shape, rb, rng, integer=True)
            lhs = calculus.d(calculus.cup(a, b))
            sign = -1.0 if ra % 2 else 1.0
            rhs = calculus.cup(calculus.d(a), b) + sign * calculus.cup(a, calculus.d(b))
            return _form_defect(lhs, rhs), _document(a)

        results.append(_loop(f"leibniz_{ra}{rb}", trials, 0.0, leibniz))
    return results


def _suite_adjoint(shape: GridShape, seed: int, trials: int) -> List[CheckResult]:
    rng = np.random.default_rng(seed)
    results = []
    for degree in (0, 1):
        def adjoint(_, degree=degree):
            phi = random_form(shape, degree, rng)
            omega = random_form(shape, degree + 1, rng)
            lhs = calculus.inner_product(calculus.d(phi), omega)
            rhs = calculus.inner_product(phi, calculus.delta(omega))
            return abs(lhs - rhs), _document(phi)

        results.append(_loop(f"adjoint_{degree}{degree + 1}", trials, 1e-10, adjoint))

    def pythagoras(_):
        omega0 = random_form(shape, 0, rng)
        omega2 = random_form(shape, 2, rng)
        a = calculus.d(omega0)
        b = calculus.delta(omega2)
        total = calculus.inner_product(a + b, a + b)
        split = calculus.inner_product(a, a) + calculus.inner_product(b, b)
        return abs(total - split), _document(omega0)

    results.append(_loop("pythagoras_degree1", trials, 1e-10, pythagoras))
    return results


def _suite_stokes(shape: GridShape, seed: int, trials: int) -> List[CheckResult]:
    rng = np.random.default_rng(seed)
    window = GridShape(shape.n, shape.m, Topology.PLANE_WINDOW)
    results = []
    for degree in (0, 1):
        def stokes(_, degree=degree):
            phi = random_form(window, degree, rng)
            omega = random_form(window, degree + 1, rng)
            lhs = calculus.inner_product(calculus.d(phi), omega)
            rhs = calculus.boundary_term(phi, omega) + calculus.inner_product(
                phi, calculus.delta(omega))
            return abs(lhs - rhs), _document(phi)

        results.append(_loop(f"stokes_{degree}{degree + 1}", trials, 1e-12, stokes))
    return results


def _suite_star(shape: GridShape, seed: int, trials: int) -> List[CheckResult]:
    rng = np.random.default_rng(seed)
    results = []

    def star_star(_):
        worst = 0.0
        witness = None
        for degree in (0, 1, 2):
            w = random_form(shape, degree, rng, integer=True)
            twice = calculus.star(calculus.star(w))
            sign = -1.0 if degree == 1 else 1.0
            expected = Form(shape, degree, (
                sign * np.roll(np.roll(c, 1, axis=0), 1, axis=1) for c in w.components))
            defect = twice.max_abs_diff(expected)
            if defect > worst:
                worst, witness = defect, _document(w)
        return worst, witness

    def star_round_trip(_):
        worst = 0.0
        witness = None
        for degree in (0, 1, 2):
            w = random_form(shape, degree, rng, integer=True)
            left = calculus.star_inv(calculus.star(w)).max_abs_diff(w)
            right = calculus.star(calculus.star_inv(w)).max_abs_diff(w)
            if max(left, right) > worst:
                worst, witness = max(left, right), _document(w)
        return worst, witness

    def delta_routes(_):
        worst = 0.0
        witness = None
        for degree in (1, 2):
            w = random_form(shape, degree, rng, integer=True)
            defect = calculus.delta(w).max_abs_diff(calculus.delta_via_star(w))
            if defect > worst:
                worst, witness = defect, _document(w)
        return worst, witness

    results.append(_loop("star_star_sign_shift", trials, 0.0, star_star))
    results.append(_loop("star_inverse_round_trip", trials, 0.0, star_round_trip))
    results.append(_loop("delta_closed_vs_star_route", trials, 0.0, delta_routes))

    def inner_product_routes(_):
        worst = 0.0
        witness = None
        for degree in (0, 1, 2):
            a = random_form(shape, degree, rng, integer=True)
            b = random_form(shape, degree, rng, integer=True)
            defect = abs(calculus.inner_product(a, b) - calculus.inner_product_via_cup(a, b))
            if defect > worst:
                worst, witness = defect, _document(a)
        return worst, witness

    results.append(_loop("inner_product_vs_cup_route", trials, 0.0, inner_product_routes))
    return results


def _suite_hodge(shape: GridShape, seed: int, trials: int) -> List[CheckResult]:
    rng = np.random.default_rng(seed)
    results = []

    def positivity(_):
        worst = 0.0
        witness = None
        for degree in (0, 1, 2):
            w = random_form(shape, degree, rng)
            value = calculus.inner_product(calculus.laplacian(w), w)
            if -value > worst:
                worst, witness = -value, _document(w)
        return worst, witness

    def self_adjoint(_):
        worst = 0.0
        witness = None
        for degree in (0, 1, 2):
            a = random_form(shape, degree, rng)
            b = random_form(shape, degree, rng)
            defect = abs(calculus.inner_product(calculus.laplacian(a), b)
                         - calculus.inner_product(a, calculus.laplacian(b)))
            if defect > worst:
                worst, witness = defect, _document(a)
        return worst, witness

    def dirac_self_adjoint(_):
        a = random_inhomogeneous(shape, rng)
        b = random_inhomogeneous(shape, rng)
        defect = abs(calculus.mixed_inner_product(calculus.dirac(a), b)
                     - calculus.mixed_inner_product(a, calculus.dirac(b)))
        return defect, _document(a.parts[1])

    def decomposition(_):
        worst = 0.0
        witness = None
        for degree in (0, 1, 2):
            w = random_form(shape, degree, rng)
            parts = hodge.decompose(w)
            defect = parts.residual_norm
            defect = max(defect, abs(calculus.inner_product(parts.exact, parts.coexact)))
            defect = max(defect, abs(calculus.inner_product(parts.exact, parts.harmonic)))
            defect = max(defect, abs(calculus.inner_product(parts.coexact, parts.harmonic)))
            lap = calculus.laplacian(parts.harmonic)
            defect = max(defect, calculus.norm(lap))
            if defect > worst:
                worst, witness = defect, _document(w)
        return worst, witness

    def dirac_round_trip(_):
        draw = random_inhomogeneous(shape, rng)
        omega0 = draw - hodge.harmonic_projection(draw)
        scale = calculus.mixed_norm(omega0)
        if scale == 0.0:
            return 0.0, None
        f = calculus.dirac(omega0)
        solved = hodge.solve_dirac(f)
        return calculus.mixed_norm(solved - omega0) / scale, _document(omega0.parts[1])

    def energy(_):
        omega = random_inhomogeneous(shape, rng)
        lhs, rhs, _ = hodge.energy_estimate_check(omega)
        return lhs - rhs, _document(omega.parts[1])

    results.append(_loop("laplacian_nonnegative", trials, 1e-10, positivity))
    results.append(_loop("laplacian_self_adjoint", trials, 1e-10, self_adjoint))
    results.append(_loop("dirac_self_adjoint", trials, 1e-10, dirac_self_adjoint))
    results.append(_loop("hodge_decomposition", trials, 1e-10, decomposition))
    results.append(_loop("dirac_solve_round_trip", trials, 1e-8, dirac_round_trip))
    results.append(_loop("energy_estimate", trials, 1e-9, energy))

    # deterministic: a purely harmonic right-hand side must be rejected
    basis = hodge.harmonic_basis(shape, 1)
    harmonic_rhs = InhomogeneousForm(
        Form.zeros(shape, 0), basis[0], Form.zeros(shape, 2))
    try:
        hodge.solve_dirac(harmonic_rhs)
        results.append(CheckResult("dirac_rejects_harmonic_rhs", False,
                                   "NotInRange was not raised"))
    except NotInRange:
        results.append(CheckResult("dirac_rejects_harmonic_rhs", True,
                                   "NotInRange raised as required"))
    return results


_SUITES: Dict[str, Callable[[GridShape, int, int], List[CheckResult]]] = {
    "stokes": _suite_stokes,
    "leibniz": _suite_leibniz,
    "adjoint": _suite_adjoint,
    "star": _suite_star,
    "hodge": _suite_hodge,
}


def run_suite(suite: str, n: int, m: int, seed: int, trials: int) -> List[CheckResult]:
    """Run one named suite (or all of them) on the n x m torus."""
    shape = GridShape(n, m)
    if suite == "all":
        out: List[CheckResult] = []
        for name in SUITE_NAMES:
            out.extend(_SUITES[name](shape, seed, trials))
        return out
    if suite not in _SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    return _SUITES[suite](shape, seed, trials)
