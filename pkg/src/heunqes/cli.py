"""Command-line front end: analyze, solve and scan jobs described in INI files.

A job file looks like::

    [job]
    family = GHE
    nmax = 4

    [params]
    gamma = 0.5
    delta = 1
    alpha = -2
    beta = [3, 0.5]      # complex values as [re, im]
    q = 0
    a = 2

    [tolerances]
    coeff_zero = 1e-12

    [scan]
    alpha.re = [-5, 0, 51]   # start, stop, number of points

Exit codes: 0 on success (a non-algebraizable equation is a valid result),
2 for input errors, 3 for numerical failures.
"""
from __future__ import annotations

import argparse
import configparser
import csv
import io
import itertools
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields, replace
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import canonical as cn
from .algebraize import AlgebraizationResult
from .reps import classify_representation, taxonomy_table, weight_data
from .report import (AlgebraizationOut, AnsatzOut, InstanceOut, RepresentationOut,
                     ResolutionOut, ScanRow, SolutionOut, SolutionReport,
                     SolvabilityOut, encode, to_json)
from .solvability import (Mode, analyze, enumerate_qes_levels,
                          per_equation_conditions)
from .specmat import NumericalFailure, quasi_polynomials
from .tolerances import DEFAULT, Tolerances

__all__ = ["JobSpec", "ScanAxis", "InputError", "parse_job", "run", "run_scan", "main"]

log = logging.getLogger("heunqes")

EXIT_OK, EXIT_INPUT, EXIT_NUMERICAL = 0, 2, 3


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class ScanAxis:
    param: str
    part: str  # "re" or "im"
    start: float
    stop: float
    steps: int

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)

    @property
    def label(self) -> str:
        return f"{self.param}.{self.part}"


@dataclass(frozen=True)
class JobSpec:
    family: str
    params: Dict[str, complex]
    mode: str = "analyze"
    nmax: int = 4
    seed: int = 0
    diagonal_tau: complex = 0j
    tolerances: Tolerances = DEFAULT
    axes: Tuple[ScanAxis, ...] = ()
    workers: int = 1

    def equation(self, params: Optional[Dict[str, complex]] = None) -> cn.HeunParams:
        try:
            return cn.params_from_mapping(self.family, params or self.params)
        except (TypeError, ValueError) as exc:
            raise InputError(str(exc)) from exc


def _parse_value(text: str, what: str):
    try:
        v = json.loads(text)
    except json.JSONDecodeError:
        raise InputError(f"{what}: cannot parse {text!r}") from None
    return v


def _complex(text: str, what: str) -> complex:
    v = _parse_value(text, what)
    if isinstance(v, list) and len(v) == 2 and all(isinstance(x, (int, float)) for x in v):
        return complex(v[0], v[1])
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return complex(v)
    raise InputError(f"{what}: expected a number or [re, im], got {text!r}")


def parse_job(text: str, mode: Optional[str] = None) -> JobSpec:
    """Parse an INI job document.

    Raises
    ------
    InputError
        On malformed syntax, unknown sections or keys, or incomplete
        parameters.
    """
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    cp.optionxform = str  # parameter names are case sensitive (B1, Bm1)
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise InputError(f"malformed job file: {exc}") from exc
    unknown = set(cp.sections()) - {"job", "params", "tolerances", "scan"}
    if unknown:
        raise InputError(f"unknown sections: {sorted(unknown)}")
    if not cp.has_section("job") or "family" not in cp["job"]:
        raise InputError("[job] family is required")
    job = cp["job"]
    family = job["family"].strip().upper()
    if family not in cn.FAMILIES:
        raise InputError(f"unknown family {family!r}")
    params = {k: _complex(v, f"params.{k}") for k, v in
              (cp["params"].items() if cp.has_section("params") else [])}

    tol = DEFAULT
    if cp.has_section("tolerances"):
        names = {f.name: f.type for f in fields(Tolerances)}
        over = {}
        for k, v in cp["tolerances"].items():
            if k not in names:
                raise InputError(f"unknown tolerance {k!r}")
            val = _parse_value(v, f"tolerances.{k}")
            if not isinstance(val, (int, float)) or isinstance(val, bool):
                raise InputError(f"tolerances.{k} must be a number")
            over[k] = int(val) if k.endswith(("maxiter", "restarts")) else float(val)
        tol = tol.with_overrides(**over)

    axes = []
    if cp.has_section("scan"):
        for k, v in cp["scan"].items():
            name, _, part = k.partition(".")
            part = part or "re"
            if part not in ("re", "im"):
                raise InputError(f"scan axis {k!r}: suffix must be .re or .im")
            if name not in params:
                raise InputError(f"scan axis {k!r} refers to an undeclared parameter")
            spec = _parse_value(v, f"scan.{k}")
            if not (isinstance(spec, list) and len(spec) == 3):
                raise InputError(f"scan axis {k!r}: expected [start, stop, steps]")
            start, stop, steps = spec
            if not isinstance(steps, int) or steps < 1:
                raise InputError(f"scan axis {k!r}: steps must be a positive integer")
            axes.append(ScanAxis(name, part, float(start), float(stop), steps))

    try:
        nmax = int(job.get("nmax", "4"))
        seed = int(job.get("seed", "0"))
    except ValueError as exc:
        raise InputError(f"[job]: {exc}") from exc
    if nmax < 0:
        raise InputError("nmax must be non-negative")
    spec = JobSpec(
        family=family,
        params=params,
        mode=(mode or job.get("mode", "analyze")).strip(),
        nmax=nmax,
        seed=seed,
        diagonal_tau=_complex(job.get("diagonal_tau", "0"), "job.diagonal_tau"),
        tolerances=tol,
        axes=tuple(axes),
    )
    spec.equation()  # validates completeness
    return spec


# -- pipeline -------------------------------------------------------------------


def _resolution_out(r) -> ResolutionOut:
    return ResolutionOut(r.kind.value, list(r.values), [x.branch for x in r.roots],
                         r.reason)


def _alg_out(alg: AlgebraizationResult) -> AlgebraizationOut:
    ans = [AnsatzOut(rs.value, rt.value,
                     {f.name: getattr(cc, f.name) for f in fields(cc)})
           for rs, rt, cc in alg.pairs]
    return AlgebraizationOut(alg.algebraizable, _resolution_out(alg.sigma),
                             _resolution_out(alg.tau), ans)


def _evaluate(spec: JobSpec, params: Dict[str, complex], solve: bool):
    eq = spec.equation(params)
    c = eq.to_generic()
    tol = spec.tolerances
    alg, rep = analyze(c, tol)
    warnings = list(alg.warnings) + [f"not algebraizable: {r}" for r in alg.reasons]
    if rep is None:
        return eq, alg, None, [], [], warnings
    instances = enumerate_qes_levels(rep, spec.nmax, tau=spec.diagonal_tau)
    solutions = []
    if solve:
        for inst in instances:
            for qp in quasi_polynomials(c, inst, tol, seed=spec.seed):
                solutions.append((inst, qp))
                if not qp.verified:
                    warnings.append(f"unverified solution at N={inst.N}, "
                                    f"eigenvalue {qp.eigen}")
    return eq, alg, rep, instances, solutions, warnings


def run(spec: JobSpec) -> SolutionReport:
    """Analyze (and for ``mode == "solve"`` also solve) one equation."""
    eq, alg, rep, instances, solutions, warnings = _evaluate(
        spec, spec.params, spec.mode == "solve")
    solv = None
    if rep is not None:
        solv = SolvabilityOut(
            rep.mode.value,
            [InstanceOut(i.sigma, i.tau, i.N, i.sigma_branch, i.tau_branch, i.descriptor)
             for i in instances],
            list(rep.free_partner),
            per_equation_conditions(eq, spec.tolerances).lines(),
        )
    sols = [SolutionOut(i.sigma, i.tau, i.N, qp.tau2, list(qp.coeffs), qp.eigen,
                        eq.native_eigen(qp.eigen), qp.residual_max,
                        qp.truncation_max, qp.verified)
            for i, qp in solutions]
    reps = []
    for i in instances:
        rc = classify_representation(weight_data(i.sigma, i.tau), spec.tolerances)
        reps.append(RepresentationOut(
            i.sigma, i.tau, weight_data(i.sigma, i.tau).casimir,
            str(rc.bounded_below), str(rc.bounded_above),
            str(rc.finite_piece) if rc.finite_piece else None))
    return SolutionReport(
        command=spec.mode,
        family=spec.family,
        params=dict(spec.params),
        nmax=spec.nmax,
        seed=spec.seed,
        algebraization=_alg_out(alg),
        solvability=solv,
        solutions=sols,
        representations=reps,
        warnings=warnings,
    )


def _scan_point(spec: JobSpec, coords: Dict[str, float]) -> ScanRow:
    params = dict(spec.params)
    for ax in spec.axes:
        v = params[ax.param]
        x = coords[ax.label]
        params[ax.param] = complex(x, v.imag) if ax.part == "re" else complex(v.real, x)
    _, alg, rep, instances, solutions, _ = _evaluate(spec, params, True)
    if rep is None:
        return ScanRow(coords, False, "NonAlgebraizable", -1)
    n = min((i.N for i in instances), default=-1)
    eig = min((abs(qp.eigen) for _, qp in solutions), default=None)
    return ScanRow(coords, True, rep.mode.value, n, eig)


def run_scan(spec: JobSpec) -> List[ScanRow]:
    """Classify every grid point; rows come back in grid order."""
    if not spec.axes:
        raise InputError("scan needs at least one axis in [scan]")
    grid = [dict(zip([a.label for a in spec.axes], map(float, pt)))
            for pt in itertools.product(*(a.values() for a in spec.axes))]
    if spec.workers > 1:
        with ThreadPoolExecutor(max_workers=spec.workers) as pool:
            return list(pool.map(lambda g: _scan_point(spec, g), grid))
    return [_scan_point(spec, g) for g in grid]


# -- output ---------------------------------------------------------------------


def scan_csv(rows: List[ScanRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    labels = list(rows[0].coordinates) if rows else []
    w.writerow(labels + ["algebraizable", "mode", "N", "min_abs_eigen"])
    for r in rows:
        w.writerow([repr(r.coordinates[k]) for k in labels]
                   + [int(r.algebraizable), r.mode, r.N,
                      "" if r.min_abs_eigen is None else repr(r.min_abs_eigen)])
    return buf.getvalue()


def solutions_csv(rep: SolutionReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["N", "exponent_re", "exponent_im", "eigen_re", "eigen_im",
                "native_eigen_re", "native_eigen_im", "residual_max",
                "truncation_max", "verified"])
    for s in rep.solutions:
        w.writerow([s.N, s.exponent.real, s.exponent.imag, s.eigenvalue.real,
                    s.eigenvalue.imag, s.native_eigen.real, s.native_eigen.imag,
                    s.residual_max, s.truncation_max, int(s.verified)])
    return buf.getvalue()


def taxonomy_csv(values: List[float]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["casimir", "class", "h_bound_low", "h_bound_high"])
    for r in taxonomy_table(values):
        w.writerow([r.casimir, r.cls, r.h_bound_low, r.h_bound_high])
    return buf.getvalue()


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="INI job file")
    common.add_argument("--output", help="write here instead of stdout")
    common.add_argument("--nmax", type=int, help="largest N to enumerate")
    common.add_argument("--tol", type=float,
                        help="absolute zero threshold for coefficient tests")
    common.add_argument("--seed", type=int, help="seed of the eigen root finder")
    common.add_argument("--format", choices=("json", "csv"))
    common.add_argument("--workers", type=int, default=1,
                        help="threads for scan grid points")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="heunqes", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common], help="algebraize and classify")
    sub.add_parser("solve", parents=[common], help="also compute quasi-polynomials")
    sub.add_parser("scan", parents=[common], help="classify over a parameter grid")
    tx = sub.add_parser("taxonomy", help="weight intervals per representation type")
    tx.add_argument("casimir", type=float, nargs="+")
    tx.add_argument("--output")
    return p


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "taxonomy":
        _emit(taxonomy_csv(args.casimir), args.output)
        return EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        with open(args.input, encoding="utf-8") as fh:
            spec = parse_job(fh.read(), mode=args.command)
        over = {}
        if args.nmax is not None:
            if args.nmax < 0:
                raise InputError("--nmax must be non-negative")
            over["nmax"] = args.nmax
        if args.seed is not None:
            over["seed"] = args.seed
        if args.tol is not None:
            over["tolerances"] = spec.tolerances.with_overrides(coeff_zero=args.tol)
        spec = replace(spec, workers=max(1, args.workers), **over)
        fmt = args.format or ("csv" if args.command == "scan" else "json")
        if args.command == "scan":
            rows = run_scan(spec)
            text = scan_csv(rows) if fmt == "csv" else json.dumps(encode(rows), indent=2)
        else:
            rep = run(spec)
            text = to_json(rep) + "\n" if fmt == "json" else solutions_csv(rep)
    except (OSError, InputError) as exc:
        log.error("input error: %s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    _emit(text, args.output)
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
