"""Figure rendering for simulation trace CSVs.

Reads the delimited output of the game engine's CLI (one row per round per
run) and draws per-group mean curves, optionally with a standard-deviation
band. Pure presentation: no simulation logic lives here.
"""

from .aggregate import PlotSpec, SeriesGroup, aggregate, read_rows
from .render import render

__all__ = ["PlotSpec", "SeriesGroup", "aggregate", "read_rows", "render"]

__version__ = "0.1.0"
