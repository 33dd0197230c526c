"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import IntegrityError
from .designs import (
    DesignError,
    NotAffineError,
    affine_plane,
    affine_resolvable_check,
    find_resolution,
    hadamard_design,
    sylvester_hadamard,
)
from .mub import UnsupportedDimension, mub_build, verify_mub
from .protocol import SCENARIOS, build_scenario, simulate, verify_exhaustive
from .realization import hadamard8_realization, incidence_realization, mub_realization, verify_realization
from .serialize import basis_to_json, design_from_json, design_to_json, mub_to_json, realization_to_json

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, payload, pretty: bool = True) -> None:
    text = json.dumps(payload, indent=2 if pretty else None)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)


def _read_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _positive(name: str, value):
    if value is None:
        raise UsageError(f"--{name} is required")
    if value < 1:
        raise UsageError(f"--{name} must be >= 1")
    return value


def cmd_design(args) -> int:
    if args.kind == "affine-plane":
        try:
            design, res = affine_plane(_positive("order", args.order))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        _emit(args, design_to_json(design, res, labels="plane" if args.labels else None))
        return OK
    if args.kind == "hadamard":
        k = _positive("k", args.k)
        if 2**k > 64:
            raise UsageError("--k must satisfy 2**k <= 64")
        design, res = hadamard_design(sylvester_hadamard(k))
        _emit(args, design_to_json(design, res, labels="one-based" if args.labels else None))
        return OK
    if not args.input:
        raise UsageError("design verify needs --in PATH")
    data = _read_json(args.input)
    try:
        design, res = design_from_json(data)
        if res is None:
            res = find_resolution(design)
        report = affine_resolvable_check(design, res)
    except NotAffineError as exc:
        print(f"design {design.params.as_tuple()} resolvable, {exc}")
        return FAILED
    except DesignError as exc:
        print(f"verification failed: {exc}")
        return FAILED
    print(
        json.dumps(
            {
                "params": design.params.as_dict(),
                "classes": len(res.classes),
                "affine": report.ok,
                "m": report.m,
                "relations": {
                    "m=k^2/v": report.rel_m,
                    "lambda(v-k)=k(k-1)": report.rel_lambda,
                    "r=k+lambda": report.rel_r,
                    "b=v+r-1": report.rel_b,
                },
            },
            indent=2,
        )
    )
    return OK if report.ok else FAILED


def cmd_mub(args) -> int:
    try:
        family = mub_build(_positive("q", args.q))
    except UnsupportedDimension as exc:
        raise UsageError(f"unsupported dimension: {exc}") from exc
    if args.check:
        report = verify_mub(family)
        print(f"q={family.q} bases={len(family)} max deviation {report.max_deviation:.3e} (< 1e-12: {report.max_deviation < 1e-12})")
        return OK if report.ok else FAILED
    _emit(args, mub_to_json(family))
    return OK


def cmd_realize(args) -> int:
    try:
        if args.kind == "hadamard8":
            real = hadamard8_realization()
        elif args.kind == "mub":
            n = _positive("order", args.order)
            real = mub_realization(*affine_plane(n), mub_build(n))
        elif args.input:
            design, res = design_from_json(_read_json(args.input))
            real = incidence_realization(design, res if res is not None else find_resolution(design))
        elif args.k is not None:
            real = incidence_realization(*hadamard_design(sylvester_hadamard(_positive("k", args.k))))
        else:
            real = incidence_realization(*affine_plane(_positive("order", args.order)))
    except (UnsupportedDimension, DesignError) as exc:
        print(f"cannot realize: {exc}", file=sys.stderr)
        return FAILED
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.check:
        report = verify_realization(real)
        print(f"realization ok={report.ok} parallel dev {report.max_parallel_dev:.3e} nonparallel dev {report.max_nonparallel_dev:.3e}")
        return OK if report.ok else FAILED
    _emit(args, realization_to_json(real))
    return OK


def _scenario(args):
    try:
        return build_scenario(args.scenario, order=args.order, k=args.k, class_index=args.class_index)
    except (ValueError, UnsupportedDimension) as exc:
        raise UsageError(str(exc)) from exc


def cmd_basis(args) -> int:
    sc = _scenario(args)
    _emit(args, basis_to_json(sc.basis, sc.real))
    return OK


def cmd_verify(args) -> int:
    sc = _scenario(args)
    try:
        report = verify_exhaustive(sc.real, sc.basis, sc.models, prepare_class=args.class_index, parallel=args.parallel)
    except IntegrityError as exc:
        print(f"integrity failure: {exc}")
        return FAILED
    if args.format == "json":
        _emit(args, {"scenario": sc.name, **report.to_json()})
    else:
        print(f"scenario {sc.name}: {report.measurements} measurements, {report.branches} branches, {len(report.failures)} failures")
        if report.ok:
            print("success probability = 1")
        for f in report.failures[:10]:
            print(f"failing branch: {f}")
    return OK if report.ok else FAILED


def cmd_simulate(args) -> int:
    _positive("trials", args.trials)
    sc = _scenario(args)
    lines = []
    failed = False
    for tr in simulate(sc, seed=args.seed, trials=args.trials):
        failed |= not tr.success
        lines.append(json.dumps(tr.to_json()))
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return FAILED if failed else OK


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")
    shared.add_argument("--seed", type=int, default=0)
    shared.add_argument("--format", choices=["json", "text"], default="json")

    scen = argparse.ArgumentParser(add_help=False)
    scen.add_argument("--scenario", choices=SCENARIOS, required=True)
    scen.add_argument("--order", type=int, help="affine plane order / MUB dimension")
    scen.add_argument("--k", type=int, help="Sylvester exponent for the hadamard scenario")
    scen.add_argument("--class", dest="class_index", type=int, default=0, help="parallel class used to prepare and build psi_p")

    parser = argparse.ArgumentParser(prog="meanking", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("design", parents=[shared], help="construct or verify block designs")
    p.add_argument("kind", choices=["affine-plane", "hadamard", "verify"])
    p.add_argument("--order", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--in", dest="input", metavar="PATH")
    p.add_argument("--labels", action="store_true", help="add 1-indexed point labels")
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("mub", parents=[shared], help="emit or check a complete MUB family")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--check", action="store_true")
    p.set_defaults(func=cmd_mub)

    p = sub.add_parser("realize", parents=[shared], help="emit a realization of a design")
    p.add_argument("kind", choices=["incidence", "mub", "hadamard8"])
    p.add_argument("--order", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--in", dest="input", metavar="PATH", help="design JSON for incidence realizations")
    p.add_argument("--check", action="store_true")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("basis", parents=[shared, scen], help="emit the reconstruction basis of a scenario")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("verify", parents=[shared, scen], help="exhaustively verify a scenario")
    p.add_argument("--parallel", action="store_true")
    p.set_defaults(func=cmd_verify, format="text")

    p = sub.add_parser("simulate", parents=[shared, scen], help="seeded games as JSON lines")
    p.add_argument("--trials", type=int, default=1)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
