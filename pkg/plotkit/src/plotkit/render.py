"""Matplotlib rendering of aggregated series."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .aggregate import PlotSpec, SeriesGroup, aggregate, read_rows

AXIS_LABELS = {
    "lcc": "largest connected component",
    "aigl": "average inverse geodesic length",
}


def render(spec: PlotSpec) -> list[SeriesGroup]:
    """Draw one mean line per group and write the image file.

    Returns the aggregated series that were plotted, so callers (and tests)
    can verify the drawn values without re-parsing the figure.
    """
    spec.validate()
    rows = read_rows(spec.input_csv)
    groups = aggregate(rows, spec.y_metric)

    fig, ax = plt.subplots(figsize=(7, 4.5))
    # color by sorted label, not insertion order, for reproducible figures
    colors = plt.rcParams["axes.prop_cycle"].by_key()["color"]
    for i, series in enumerate(groups):
        color = colors[i % len(colors)]
        ax.plot(series.rounds, series.means, label=series.label, color=color)
        if spec.band:
            low = [m - s for m, s in zip(series.means, series.stds)]
            high = [m + s for m, s in zip(series.means, series.stds)]
            ax.fill_between(series.rounds, low, high, color=color, alpha=0.2, linewidth=0)
    ax.set_xlabel("round")
    ax.set_ylabel(AXIS_LABELS[spec.y_metric])
    if spec.y_metric == "aigl":
        ax.set_ylim(0.0, 1.0)
    else:
        ax.set_ylim(bottom=0.0)
    if len(groups) > 1 or groups[0].label != "all":
        ax.legend(title="group")
    fig.tight_layout()
    fig.savefig(spec.output_image, dpi=120)
    plt.close(fig)
    return groups
