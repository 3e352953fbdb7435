"""Command-line interface: ``arma-geodesy <command> ...``.

Exit codes: 0 success, 2 validation error, 3 parse error, 4 internal
inconsistency or numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from typing import Any, Sequence

import numpy as np

from . import closed_form, geometry
from .errors import (
    ArmaGeodesyError,
    InternalInconsistency,
    MethodSchemeMismatch,
    NoConvergence,
    ParseError,
    SeriesDidNotConverge,
    ValidationError,
)
from .io import distance_matrix, load_model, load_models_dir, pair_distance
from .model import CONVENTION, cepstrum_sequence, roots_from_poly
from .series import DEFAULT_TOL, DIRICHLET, WeightScheme, weighted_distance_series, weighted_norm_series

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_PARSE = 3
EXIT_INTERNAL = 4


def _weight(text: str) -> WeightScheme:
    try:
        return WeightScheme.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _coeffs(text: str) -> list[complex]:
    try:
        return [complex(tok.strip().replace("i", "j")) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse coefficients {text!r}") from None


def _flatten(obj: Any, prefix: str = "") -> list[tuple[str, Any]]:
    if isinstance(obj, dict):
        rows = []
        for k, v in obj.items():
            rows.extend(_flatten(v, f"{prefix}.{k}" if prefix else str(k)))
        return rows
    if isinstance(obj, list) and obj and isinstance(obj[0], (list, dict)):
        rows = []
        for i, v in enumerate(obj):
            rows.extend(_flatten(v, f"{prefix}[{i}]"))
        return rows
    return [(prefix, obj)]


def _fmt(x: Any) -> str:
    if isinstance(x, float):
        return f"{x:.17g}"
    if isinstance(x, list):
        return " ".join(_fmt(v) for v in x)
    return str(x)


def _emit(payload: dict[str, Any], fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
    elif fmt == "csv":
        out.write("key,value\n")
        for k, v in _flatten(payload):
            out.write(f"{k},{_fmt(v)}\n")
    else:
        rows = _flatten(payload)
        width = max((len(k) for k, _ in rows), default=0)
        for k, v in rows:
            out.write(f"{k.ljust(width)}  {_fmt(v)}\n")


def _pair(z: complex) -> list[float]:
    return [z.real, z.imag]


def _cplx_matrix(a: np.ndarray) -> list:
    return np.stack([a.real, a.imag], axis=-1).tolist()


def cmd_validate(args: argparse.Namespace) -> dict[str, Any]:
    m = load_model(args.file)
    return {"label": m.label, "valid": True, "p": m.p, "q": m.q, "gain": m.gain,
            "max_modulus": m.max_modulus}


def cmd_cepstrum(args: argparse.Namespace) -> dict[str, Any]:
    m = load_model(args.file)
    c = cepstrum_sequence(m, args.max_s)
    return {"label": m.label, "convention": CONVENTION.as_dict(),
            "cepstrum": [{"s": s, "value": _pair(complex(v))} for s, v in enumerate(c)]}


def _series_payload(res, method: str, scheme: WeightScheme) -> dict[str, Any]:
    return {"weight": str(scheme), "method": method, "value": res.value,
            "value_squared": res.value_squared, "terms_used": res.terms_used,
            "tail_bound": res.tail_bound}


def _closed_payload(value: float, scheme: WeightScheme) -> dict[str, Any]:
    return {"weight": str(scheme), "method": "closed", "value": value,
            "value_squared": value * value}


def _check_method(scheme: WeightScheme, method: str) -> None:
    if method == "closed" and scheme != DIRICHLET:
        raise MethodSchemeMismatch(f"closed form exists only for the Dirichlet weight, not {scheme}")


def cmd_norm(args: argparse.Namespace) -> dict[str, Any]:
    m = load_model(args.file)
    _check_method(args.weight, args.method)
    if args.method == "closed":
        out = _closed_payload(closed_form.dirichlet_norm_closed(m), args.weight)
    else:
        out = _series_payload(weighted_norm_series(m, args.weight, args.tol), "series", args.weight)
    return {"label": m.label, **out}


def cmd_distance(args: argparse.Namespace) -> dict[str, Any]:
    a, b = load_model(args.file_a), load_model(args.file_b)
    _check_method(args.weight, args.method)
    if args.method == "closed":
        out = _closed_payload(pair_distance(a, b, args.weight, "closed"), args.weight)
    else:
        out = _series_payload(
            weighted_distance_series(a, b, args.weight, args.tol), "series", args.weight
        )
    return {"labels": [a.label, b.label], **out}


def cmd_decompose(args: argparse.Namespace) -> dict[str, Any]:
    a, b = load_model(args.file_a), load_model(args.file_b)
    return closed_form.decompose(a, b).as_dict()


def cmd_metric(args: argparse.Namespace) -> dict[str, Any]:
    m = load_model(args.file)
    out: dict[str, Any] = {"label": m.label, "weight": str(args.weight),
                           "coords": [_pair(z) for z in m.coords], "signs": list(m.signs)}
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        if args.weight == DIRICHLET:
            g = geometry.metric_dirichlet_closed(m).metric
            out["metric"] = _cplx_matrix(g)
            out["connection"] = _cplx_matrix(geometry.connection_dirichlet_closed(m).connection)
        else:
            g = None
        if args.check_fd or g is None:
            gf = geometry.metric_fd(m, args.weight, args.step).metric
            out["metric_fd"] = _cplx_matrix(gf)
            if g is not None:
                out["metric_fd_max_rel_error"] = float(np.max(np.abs(gf - g) / np.abs(g)))
    if caught:
        out["warnings"] = [str(w.message) for w in caught]
    return out


def cmd_matrix(args: argparse.Namespace) -> dict[str, Any] | None:
    models = load_models_dir(args.dir)
    report = distance_matrix(models, args.weight, args.method, args.tol, args.workers)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(report.to_csv())
        return {"out": args.out, "n_models": len(models), "weight": str(args.weight),
                "method": args.method}
    if args.format == "csv":
        sys.stdout.write(report.to_csv())
        return None
    return report.as_dict()


def cmd_roots(args: argparse.Namespace) -> dict[str, Any]:
    if args.ar is None and args.ma is None:
        raise ParseError("give at least one of --ar or --ma")
    poles = roots_from_poly(args.ar, "pole") if args.ar else []
    zeros = roots_from_poly(args.ma, "zero") if args.ma else []
    return {"gain": 1.0, "poles": [_pair(z) for z in poles], "zeros": [_pair(z) for z in zeros]}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arma-geodesy",
        description="Weighted Hardy (cepstrum) norms, Dirichlet distances and "
        "hyperbolic decompositions of ARMA models.",
    )
    parser.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("--format", choices=("json", "csv", "pretty"), default=argparse.SUPPRESS)
        return p

    def weighted(p: argparse.ArgumentParser, method_default: str) -> None:
        p.add_argument("--weight", type=_weight, default=DIRICHLET,
                       help="hardy | sobolev:m | dirichlet | bergman | diffsemi:m")
        p.add_argument("--method", choices=("closed", "series"), default=method_default)
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)

    p = add("validate", cmd_validate, "check a model file")
    p.add_argument("file")

    p = add("cepstrum", cmd_cepstrum, "cepstrum coefficients c_0..c_N")
    p.add_argument("file")
    p.add_argument("--max-s", type=int, default=10)

    p = add("norm", cmd_norm, "weighted norm of log h")
    p.add_argument("file")
    weighted(p, "series")

    p = add("distance", cmd_distance, "weighted distance between two models")
    p.add_argument("file_a")
    p.add_argument("file_b")
    weighted(p, "series")

    p = add("decompose", cmd_decompose, "hyperbolic decomposition of the Dirichlet distance")
    p.add_argument("file_a")
    p.add_argument("file_b")

    p = add("metric", cmd_metric, "Kahler metric (and Dirichlet connection)")
    p.add_argument("file")
    p.add_argument("--weight", type=_weight, default=DIRICHLET)
    p.add_argument("--check-fd", action="store_true")
    p.add_argument("--step", type=float, default=geometry.METRIC_STEP)

    p = add("matrix", cmd_matrix, "pairwise distance matrix over a directory of model files")
    p.add_argument("dir")
    weighted(p, "closed")
    p.add_argument("--out", help="write the matrix as CSV to this path")
    p.add_argument("--workers", type=int, default=None)

    p = add("roots", cmd_roots, "poles/zeros from polynomial coefficients 1, a_1, ..., a_n")
    p.add_argument("--ar", type=_coeffs, help='e.g. "1,-0.8,0.15"')
    p.add_argument("--ma", type=_coeffs)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload = args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValidationError, MethodSchemeMismatch, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (InternalInconsistency, NoConvergence, SeriesDidNotConverge, ArmaGeodesyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if payload is not None:
        _emit(payload, args.format)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
