"""Command line client over the service handlers.

Exit codes: 0 success, 1 numerical or verification failure, 2 usage or
input errors. Output is byte-deterministic for fixed flags and seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from pydantic import ValidationError

from . import documents, service
from .errors import NotInRange, OrderingShapeMismatch


def _at_least_one(flag: str):
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{flag} must be an integer")
        if value < 1:
            raise argparse.ArgumentTypeError(f"{flag} must be >= 1")
        return value

    return parse


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _read_document(path: str, model):
    """Load and validate a JSON document; exits with code 2 on any defect."""
    try:
        payload = json.loads(Path(path).read_text())
    except OSError as exc:
        raise SystemExit(_usage_error(f"cannot read {path}: {exc}"))
    except json.JSONDecodeError as exc:
        raise SystemExit(_usage_error(f"malformed JSON in {path}: {exc}"))
    try:
        return model.model_validate(payload)
    except ValidationError as exc:
        raise SystemExit(_usage_error(f"invalid document in {path}: {exc}"))


def _usage_error(message: str) -> int:
    print(f"dec: error: {message}", file=sys.stderr)
    return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dec",
        description="Discrete exterior calculus on 2D grid complexes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    mat = sub.add_parser("matrices", help="emit one operator matrix")
    mat.add_argument("--n", type=_at_least_one("n"), required=True)
    mat.add_argument("--m", type=_at_least_one("m"), required=True)
    mat.add_argument("--op", required=True,
                     choices=["d0", "d1", "delta1", "delta2", "lap0", "lap1", "lap2", "dirac"])
    mat.add_argument("--ordering", default="canonical", choices=["canonical", "paper2x2"])
    mat.add_argument("--format", default="json", choices=["json", "csv"])
    mat.add_argument("--output", default=None, metavar="PATH")
    mat.add_argument("--verify-paper", action="store_true",
                     help="compare against the bundled 2x2 reference (needs "
                          "--n 2 --m 2 --ordering paper2x2); mismatch exits 1")
    mat.set_defaults(func=cmd_matrices)

    coh = sub.add_parser("cohomology", help="Betti numbers and generators")
    coh.add_argument("--n", type=_at_least_one("n"), required=True)
    coh.add_argument("--m", type=_at_least_one("m"), required=True)
    coh.add_argument("--with-generators", action="store_true")
    coh.set_defaults(func=cmd_cohomology)

    dec = sub.add_parser("decompose", help="Hodge decomposition of a form document")
    dec.add_argument("--input", required=True, metavar="PATH")
    dec.add_argument("--output", default=None, metavar="PATH")
    dec.set_defaults(func=cmd_decompose)

    sol = sub.add_parser("solve-dirac", help="solve (d + delta) Omega = F")
    sol.add_argument("--input", required=True, metavar="PATH")
    sol.add_argument("--output", default=None, metavar="PATH")
    sol.set_defaults(func=cmd_solve_dirac)

    chk = sub.add_parser("check", help="run seeded property suites")
    chk.add_argument("--suite", default="all",
                     choices=["stokes", "leibniz", "adjoint", "star", "hodge", "all"])
    chk.add_argument("--n", type=_at_least_one("n"), default=3)
    chk.add_argument("--m", type=_at_least_one("m"), default=3)
    chk.add_argument("--seed", type=int, default=0)
    chk.add_argument("--trials", type=_at_least_one("trials"), default=200)
    chk.set_defaults(func=cmd_check)
    return parser


def cmd_matrices(args: argparse.Namespace) -> int:
    if args.verify_paper and ((args.n, args.m) != (2, 2) or args.ordering != "paper2x2"):
        return _usage_error("--verify-paper requires --n 2 --m 2 --ordering paper2x2")
    request = service.MatricesRequest(
        n=args.n, m=args.m, op=args.op, ordering=args.ordering, verify=args.verify_paper)
    try:
        response = service.matrices(request)
    except OrderingShapeMismatch as exc:
        return _usage_error(str(exc))
    doc = response.matrix
    if args.format == "json":
        _emit(documents.to_json(doc), args.output)
    else:
        _emit(documents.matrix_to_csv(doc), args.output)
    if args.verify_paper:
        status = "PASS" if response.verified else "FAIL"
        print(f"verify-paper: {status} ({args.op} against bundled reference)",
              file=sys.stderr)
        if not response.verified:
            return 1
    return 0


def cmd_cohomology(args: argparse.Namespace) -> int:
    request = service.CohomologyRequest(n=args.n, m=args.m,
                                        with_generators=args.with_generators)
    response = service.cohomology_report(request)
    b0, b1, b2 = response.betti
    print(f"b0={b0} b1={b1} b2={b2}")
    if args.with_generators:
        generators = {
            degree: [doc.model_dump() for doc in forms]
            for degree, forms in (response.generators or {}).items()
        }
        print(json.dumps({"generators": generators}, indent=2))
    return 0


def cmd_decompose(args: argparse.Namespace) -> int:
    doc = _read_document(args.input, documents.FormDocument)
    try:
        response = service.decompose(service.DecomposeRequest(form=doc))
    except ValueError as exc:
        return _usage_error(str(exc))
    _emit(documents.to_json(response), args.output)
    if response.residual_norm > 1e-8:
        print(f"dec: decomposition residual {response.residual_norm:.3e} exceeds 1e-08",
              file=sys.stderr)
        return 1
    return 0


def cmd_solve_dirac(args: argparse.Namespace) -> int:
    doc = _read_document(args.input, documents.InhomogeneousFormDocument)
    try:
        response = service.solve_dirac(service.SolveDiracRequest(form=doc))
    except NotInRange:
        print("F has harmonic component", file=sys.stderr)
        return 1
    except ValueError as exc:
        return _usage_error(str(exc))
    _emit(documents.to_json(response), args.output)
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    request = service.CheckRequest(suite=args.suite, n=args.n, m=args.m,
                                   seed=args.seed, trials=args.trials)
    response = service.run_checks(request)
    print(f"suite={response.suite} n={response.n} m={response.m} "
          f"seed={response.seed} trials={response.trials}")
    for item in response.results:
        status = "PASS" if item.passed else "FAIL"
        print(f"{status} {item.name}: {item.detail}")
        if not item.passed and item.counterexample is not None:
            print(json.dumps({"counterexample": item.counterexample}, indent=2))
    return 0 if response.passed else 1


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
