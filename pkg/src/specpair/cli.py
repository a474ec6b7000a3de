"""Command-line front end.

Subcommands: validate, pair, measure, transform, spectrum, cuntz, accept.
Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse error.
Every output is deterministic given the flags and the seed.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from fractions import Fraction

import numpy as np

from . import acceptance, exact
from .errors import ParseError, SpectralPairError
from .operators import relation_residuals, state_eval
from .pair import orthogonality_matrix, reduce_mod_lattice, tiling_check, truncate_spectrum
from .measure import build_ifs, refine_measure
from .specfile import builtin_names, parse_spec
from .spectrum import completeness_table, enumerate_spectrum
from .tables import emit_table
from .transform import TransformSettings, mu_hat, BothResult

RELATION_TOLERANCE = 1e-6
ORTHOGONALITY_TOLERANCE = 1e-12


def _parse_vector(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(part.strip()) for part in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"invalid vector {text!r}: {exc}") from exc


def _parse_grid(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ParseError(f"grid must be lo:hi:count, got {text!r}")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ParseError(f"invalid grid {text!r}: {exc}") from exc
    if count < 1:
        raise ParseError("grid count must be positive")
    return lo, hi, count


def _emit(args, rows, fieldnames=None) -> None:
    text = emit_table(rows, args.format, args.out, fieldnames=fieldnames)
    if args.out is None:
        sys.stdout.write(text)


def _emit_json(args, payload: dict) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)


def _settings(args) -> TransformSettings:
    return TransformSettings(
        product_depth=args.product_depth,
        quadrature_depth=args.quadrature_depth,
        backend=getattr(args, "backend", "product"),
    )


def cmd_validate(args) -> int:
    loaded = parse_spec(args.spec, require_valid=False)
    _emit_json(args, {"name": loaded.name, **loaded.report.as_dict()})
    return 0 if loaded.report.ok else 1


def cmd_pair(args) -> int:
    loaded = parse_spec(args.spec, require_valid=False)
    if loaded.omega is None or loaded.d_prime is None:
        raise ParseError(f"spec {loaded.name!r} carries no domain geometry")
    spectrum = truncate_spectrum(loaded.system, args.box)
    gram = orthogonality_matrix(loaded.omega, spectrum)
    off = gram - np.eye(len(spectrum))
    worst = float(np.abs(off).max())
    exact_zeros = int((off == 0).sum()) - len(spectrum)  # diagonal is exact
    omega_reduced = reduce_mod_lattice(loaded.omega, loaded.system.K)
    tiling = tiling_check(
        loaded.d_prime, loaded.system.Gamma, loaded.system.digits,
        omega_prime=omega_reduced, seed=args.seed,
    )
    orthogonal = worst < ORTHOGONALITY_TOLERANCE
    _emit_json(args, {
        "name": loaded.name,
        "spectrum_points": len(spectrum),
        "max_off_diagonal": worst,
        "off_diagonal_exact_zeros": exact_zeros,
        "orthogonal": orthogonal,
        "tiling": tiling.as_dict(),
    })
    return 0 if orthogonal and tiling.ok else 1


def cmd_measure(args) -> int:
    loaded = parse_spec(args.spec, require_valid=False)
    measure = refine_measure(build_ifs(loaded.system), args.quadrature_depth)
    rows = [
        {**{f"x{i}": float(c) for i, c in enumerate(point)},
         "weight": measure.weight}
        for point in measure.points
    ]
    _emit(args, rows)
    return 0


def cmd_transform(args) -> int:
    loaded = parse_spec(args.spec, require_valid=False)
    system = loaded.system
    settings = _settings(args)
    if args.s is not None:
        points = [_parse_vector(args.s)]
    elif args.grid is not None:
        lo, hi, count = _parse_grid(args.grid)
        axis = np.linspace(lo, hi, count)
        points = [p for p in itertools.product(axis, repeat=system.dim)]
    else:
        raise ParseError("transform needs --s or --grid")
    depth = (settings.quadrature_depth if settings.backend == "quadrature"
             else settings.product_depth)
    rows = []
    for point in points:
        value = mu_hat(system, tuple(point), settings)
        row = {f"t{i}": float(c) for i, c in enumerate(point)}
        if isinstance(value, BothResult):
            row.update(re=value.value.real, im=value.value.imag,
                       abs=abs(value.value), backend="both", depth=depth,
                       discrepancy=value.discrepancy)
        else:
            row.update(re=value.real, im=value.imag, abs=abs(value),
                       backend=settings.backend, depth=depth)
        rows.append(row)
    _emit(args, rows)
    return 0


def cmd_spectrum(args) -> int:
    loaded = parse_spec(args.spec, require_valid=False)
    system = loaded.system
    settings = _settings(args)
    if args.frequencies:
        enum = enumerate_spectrum(system, args.enum_depth)
        rows = [
            {"index": i,
             **{f"xi{j}": c for j, c in enumerate(enum.elements[i])},
             "word": "".join(str(w) for w in enum.word(i))}
            for i in range(len(enum))
        ]
        _emit(args, rows)
        return 0
    if args.s is None:
        raise ParseError("spectrum needs --s (or --frequencies)")
    s = _parse_vector(args.s)
    rows = completeness_table(system, s, range(0, args.enum_depth + 1), settings)
    _emit(args, [
        {"depth": r.depth, "sigma": r.sigma, "increment": r.increment}
        for r in rows
    ])
    return 0 if all(r.sigma <= 1 + 1e-9 for r in rows) else 1


def cmd_cuntz(args) -> int:
    loaded = parse_spec(args.spec, require_valid=False)
    system = loaded.system
    settings = _settings(args)
    report = relation_residuals(system, box_radius=args.box, settings=settings)
    state_rows = []
    for index, digit in enumerate(system.freq_digits):
        value = state_eval(system, (digit,), (), settings)
        projected = state_eval(system, (digit,), (digit,), settings)
        state_rows.append({
            "digit_index": index,
            "digit": [exact.format_rational(c) for c in digit],
            "state_generator": [value.real, value.imag],
            "state_range_projection": [projected.real, projected.imag],
        })
    failures = list(report.failures(RELATION_TOLERANCE))
    if not loaded.report.ok:
        failures.extend(
            f"validation: {c.name}" for c in loaded.report.failures()
        )
    _emit_json(args, {
        "name": loaded.name,
        "relations": report.as_dict(),
        "state": state_rows,
        "failures": failures,
        "tolerance": RELATION_TOLERANCE,
    })
    return 0 if not failures else 1


def cmd_accept(args) -> int:
    results = acceptance.run_all()
    for result in results:
        print(result.line())
    if args.out is not None:
        _emit_json(args, {
            "results": [
                {"number": r.number, "title": r.title, "passed": r.passed,
                 "detail": r.detail}
                for r in results
            ],
            "passed": all(r.passed for r in results),
        })
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="specpair",
        description="Construct and verify lattice spectral pairs and their "
                    "induced self-similar measures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, spec=True):
        if spec:
            p.add_argument(
                "--spec", required=True,
                help=f"path to a spec JSON file or one of {builtin_names()}",
            )
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default=None, help="write output to this path")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--product-depth", type=int, default=30)
        p.add_argument("--quadrature-depth", type=int, default=12)

    p = sub.add_parser("validate", help="structural validation report (JSON)")
    add_common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("pair", help="orthogonality and tiling checks (JSON)")
    add_common(p)
    p.add_argument("--box", type=int, default=8, help="spectrum truncation radius")
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("measure", help="refine the invariant measure and export atoms")
    add_common(p)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("transform", help="evaluate the measure transform on a grid")
    add_common(p)
    p.add_argument("--grid", default=None, help="lo:hi:count per axis")
    p.add_argument("--s", default=None, help="single frequency, comma separated")
    p.add_argument("--backend", choices=("product", "quadrature", "both"),
                   default="product")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("spectrum", help="completeness table or frequency list")
    add_common(p)
    p.add_argument("--s", default=None, help="probe frequency, comma separated")
    p.add_argument("--enum-depth", type=int, default=8)
    p.add_argument("--frequencies", action="store_true",
                   help="emit the enumerated frequencies instead of the table")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("cuntz", help="relation residuals and state table (JSON)")
    add_common(p)
    p.add_argument("--box", type=int, default=32, help="dual sample box radius")
    p.set_defaults(func=cmd_cuntz)

    p = sub.add_parser("accept", help="run the full acceptance suite")
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_accept)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SpectralPairError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
