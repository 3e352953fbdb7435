"""JSON model files and batch distance matrices."""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .closed_form import dirichlet_distance_closed
from .errors import MethodSchemeMismatch, ParseError, ValidationError
from .model import ArmaModel
from .series import DEFAULT_TOL, DIRICHLET, WeightScheme, weighted_distance_series

WORKERS_ENV = "ARMA_GEODESY_WORKERS"
METHODS = ("closed", "series")


def _parse_points(raw: Any, field: str, where: str) -> list[complex]:
    if raw is None:
        return []
    if not isinstance(raw, list):
        raise ParseError(f"{where}: '{field}' must be a list of [re, im] pairs")
    out = []
    for i, item in enumerate(raw):
        if (
            not isinstance(item, (list, tuple))
            or len(item) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in item)
        ):
            raise ParseError(f"{where}: {field}[{i}] must be a [re, im] pair of numbers")
        out.append(complex(float(item[0]), float(item[1])))
    return out


def model_from_dict(data: Any, *, label: str | None = None, where: str = "<model>") -> ArmaModel:
    if not isinstance(data, dict):
        raise ParseError(f"{where}: top level must be a JSON object")
    unknown = set(data) - {"gain", "poles", "zeros", "label"}
    if unknown:
        raise ParseError(f"{where}: unknown fields {sorted(unknown)}")
    gain = data.get("gain", 1.0)
    if not isinstance(gain, (int, float)) or isinstance(gain, bool):
        raise ParseError(f"{where}: 'gain' must be a number")
    poles = _parse_points(data.get("poles"), "poles", where)
    zeros = _parse_points(data.get("zeros"), "zeros", where)
    name = data.get("label", label)
    if name is not None and not isinstance(name, str):
        raise ParseError(f"{where}: 'label' must be a string")
    try:
        return ArmaModel(float(gain), tuple(poles), tuple(zeros), name)
    except ValidationError as exc:
        exc.args = (f"{where}: {exc}",)
        raise


def model_to_dict(model: ArmaModel) -> dict[str, Any]:
    out: dict[str, Any] = {
        "gain": model.gain,
        "poles": [[z.real, z.imag] for z in model.poles],
        "zeros": [[z.real, z.imag] for z in model.zeros],
    }
    if model.label is not None:
        out["label"] = model.label
    return out


def load_model(path: str | os.PathLike) -> ArmaModel:
    """Read a model file; the label defaults to the file stem."""
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"{path}: cannot read file ({exc})") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: malformed JSON ({exc})") from exc
    return model_from_dict(data, label=path.stem, where=str(path))


def save_model(model: ArmaModel, path: str | os.PathLike) -> None:
    Path(path).write_text(json.dumps(model_to_dict(model), indent=2) + "\n", encoding="utf-8")


def load_models_dir(directory: str | os.PathLike) -> list[ArmaModel]:
    directory = Path(directory)
    if not directory.is_dir():
        raise ParseError(f"{directory}: not a directory")
    return [load_model(p) for p in sorted(directory.glob("*.json"))]


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ParseError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None
    return os.cpu_count() or 1


@dataclass
class DistanceMatrixReport:
    labels: list[str]
    values: np.ndarray
    scheme: WeightScheme
    method: str

    def to_csv(self) -> str:
        lines = [",".join(["label", *self.labels])]
        for label, row in zip(self.labels, self.values):
            lines.append(",".join([label, *(f"{x:.17g}" for x in row)]))
        return "\n".join(lines) + "\n"

    def as_dict(self) -> dict[str, Any]:
        return {
            "labels": self.labels,
            "values": self.values.tolist(),
            "scheme": str(self.scheme),
            "method": self.method,
        }


def pair_distance(
    a: ArmaModel, b: ArmaModel, scheme: WeightScheme, method: str, tol: float = DEFAULT_TOL
) -> float:
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    if method == "closed":
        if scheme != DIRICHLET:
            raise MethodSchemeMismatch(
                f"closed form exists only for the Dirichlet weight, not {scheme}"
            )
        return dirichlet_distance_closed(a, b)
    return weighted_distance_series(a, b, scheme, tol).value


def distance_matrix(
    models: Sequence[ArmaModel],
    scheme: WeightScheme = DIRICHLET,
    method: str = "closed",
    tol: float = DEFAULT_TOL,
    workers: int | None = None,
) -> DistanceMatrixReport:
    """Pairwise distances over a model collection.

    Unordered pairs are evaluated concurrently; results are written by index
    so the output does not depend on scheduling.
    """
    if len(models) < 2:
        raise ValueError("distance matrix needs at least two models")
    if method == "closed" and scheme != DIRICHLET:
        raise MethodSchemeMismatch(
            f"closed form exists only for the Dirichlet weight, not {scheme}"
        )
    n = len(models)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    workers = default_workers() if workers is None else max(1, workers)

    def run(pair: tuple[int, int]) -> float:
        i, j = pair
        return pair_distance(models[i], models[j], scheme, method, tol)

    if workers == 1:
        results = [run(p) for p in pairs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, pairs))

    values = np.zeros((n, n))
    for (i, j), d in zip(pairs, results):
        values[i, j] = values[j, i] = d
    labels = [m.label if m.label is not None else f"model{k}" for k, m in enumerate(models)]
    return DistanceMatrixReport(labels, values, scheme, method)
