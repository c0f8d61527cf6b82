"""CSV parsing and per-round aggregation."""

from __future__ import annotations

import csv
import statistics
from dataclasses import dataclass, field

EXPECTED_COLUMNS = (
    "run_id",
    "seed",
    "sweep_param",
    "sweep_value",
    "round",
    "nodes",
    "edges",
    "lcc",
    "aigl",
)

METRICS = ("lcc", "aigl")


@dataclass
class PlotSpec:
    input_csv: str
    y_metric: str = "lcc"
    group_by: str = "sweep_value"
    output_image: str = "plot.png"
    band: bool = False

    def validate(self) -> None:
        if self.y_metric not in METRICS:
            raise ValueError(f"y_metric must be one of {METRICS}, got {self.y_metric!r}")
        if self.group_by != "sweep_value":
            raise ValueError("only sweep_value grouping is supported")


@dataclass
class SeriesGroup:
    """One plotted line: mean metric per round across a group's runs."""

    label: str
    rounds: list[int] = field(default_factory=list)
    means: list[float] = field(default_factory=list)
    stds: list[float] = field(default_factory=list)


def read_rows(path: str) -> list[dict]:
    """Parse the engine's CSV; raises ValueError on a wrong header or no data."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = tuple(reader.fieldnames or ())
        if header != EXPECTED_COLUMNS:
            raise ValueError(
                f"{path}: unexpected header {header!r}, want {EXPECTED_COLUMNS!r}"
            )
        rows = [
            {
                "run_id": int(row["run_id"]),
                "sweep_value": row["sweep_value"],
                "round": int(row["round"]),
                "lcc": float(row["lcc"]),
                "aigl": float(row["aigl"]),
            }
            for row in reader
        ]
    if not rows:
        raise ValueError(f"{path}: no data rows")
    return rows


def aggregate(rows: list[dict], metric: str) -> list[SeriesGroup]:
    """Mean (and std) of the metric per round for each sweep-value group,
    groups ordered by label."""
    by_group: dict[str, dict[int, list[float]]] = {}
    for row in rows:
        label = row["sweep_value"] or "all"
        by_group.setdefault(label, {}).setdefault(row["round"], []).append(row[metric])
    groups = []
    for label in sorted(by_group):
        per_round = by_group[label]
        series = SeriesGroup(label)
        for rnd in sorted(per_round):
            values = per_round[rnd]
            series.rounds.append(rnd)
            series.means.append(statistics.fmean(values))
            series.stds.append(statistics.stdev(values) if len(values) > 1 else 0.0)
        groups.append(series)
    return groups
