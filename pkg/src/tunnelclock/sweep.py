"""Parameter sweeps with deterministic output.

A sweep is the Cartesian product of axes, evaluated row-major in axis
declaration order with a registered (or directly supplied) pure target
operation.  Domain failures at individual grid points are data, not control
flow: the row's status column carries a label and the sweep carries on, so
grids may deliberately cross singular lines (E = V0, r at the horizon).

Output ordering is fixed by the spec of the grid alone; parallel evaluation
cannot reorder rows, so byte-identical output is guaranteed for a given
sweep regardless of worker count.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, TextIO

import numpy as np

from .errors import status_label

__all__ = [
    "Axis", "SweepSpec", "register_target", "resolve_target", "run_sweep",
    "write_csv", "write_json",
]

PointFn = Callable[[dict], dict]

_TARGETS: dict[str, PointFn] = {}


def register_target(name: str, fn: PointFn) -> None:
    _TARGETS[name] = fn


def resolve_target(name: str) -> PointFn:
    try:
        return _TARGETS[name]
    except KeyError:
        raise KeyError(f"no registered sweep target {name!r}") from None


@dataclass(frozen=True)
class Axis:
    """One sweep dimension; a single-point axis pins a parameter."""

    name: str
    start: float
    stop: float
    points: int
    scale: str = "linear"

    def __post_init__(self):
        if self.points < 1:
            raise ValueError(f"axis {self.name!r}: points must be at least 1")
        if self.scale not in ("linear", "log"):
            raise ValueError(f"axis {self.name!r}: scale must be 'linear' or 'log'")
        if self.points > 1 and not (self.start < self.stop):
            raise ValueError(f"axis {self.name!r}: start must be below stop")
        if self.scale == "log" and (self.start <= 0.0 or self.stop <= 0.0):
            raise ValueError(f"axis {self.name!r}: log scale needs positive endpoints")

    def grid(self) -> np.ndarray:
        if self.points == 1:
            return np.array([self.start])
        if self.scale == "log":
            values = np.geomspace(self.start, self.stop, self.points)
        else:
            values = np.linspace(self.start, self.stop, self.points)
        values[0] = self.start  # exact endpoint inclusion
        values[-1] = self.stop
        return values

    @staticmethod
    def fixed(name: str, value: float) -> "Axis":
        return Axis(name=name, start=value, stop=value, points=1)


@dataclass(frozen=True)
class SweepSpec:
    target: str
    axes: tuple[Axis, ...]
    columns: tuple[str, ...]

    @property
    def row_count(self) -> int:
        count = 1
        for axis in self.axes:
            count *= axis.points
        return count

    def header(self) -> list[str]:
        return [axis.name for axis in self.axes] + list(self.columns) + ["status"]


def run_sweep(spec: SweepSpec, fn: Optional[PointFn] = None, workers: int = 1) -> list[dict]:
    """Evaluate the sweep; returns one ordered dict per grid point.

    ``fn`` overrides the registry lookup of ``spec.target``.  Each row maps
    axis names to their input values, the spec's columns to outputs (None
    where the evaluation failed or did not produce them), and "status" to
    "ok" or the failure label.
    """
    if fn is None:
        fn = resolve_target(spec.target)
    names = [axis.name for axis in spec.axes]
    grids = [axis.grid() for axis in spec.axes]
    points = [dict(zip(names, (float(v) for v in values)))
              for values in itertools.product(*grids)]

    def evaluate(point: dict) -> dict:
        row = dict(point)
        try:
            outputs = fn(point)
            status = "ok"
        except Exception as exc:
            outputs = {}
            status = status_label(exc)
        for column in spec.columns:
            row[column] = outputs.get(column)
        row["status"] = status
        return row

    if workers <= 1:
        return [evaluate(p) for p in points]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(evaluate, points))


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)  # shortest round-trip, at most 17 significant digits
    return str(value)


def write_csv(rows: Iterable[dict], header: list[str], stream: TextIO) -> None:
    """RFC-4180-quoted CSV with '.' decimal points and round-trip floats."""
    import csv

    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_format_cell(row.get(col)) for col in header])


def write_json(rows: Iterable[dict], header: list[str], stream: TextIO) -> None:
    """JSON array of row objects, keys in header order."""
    ordered = [{col: row.get(col) for col in header} for row in rows]
    json.dump(ordered, stream, indent=2)
    stream.write("\n")
