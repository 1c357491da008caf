"""Batch figure rendering for dcesim CSV outputs.

This package talks to the simulator only through its CSV files: the column
headers are frozen contracts, checked before anything is drawn.
"""

from dce_plots.contracts import PlotContractError, PlotDataError
from dce_plots.render import PLOT_KINDS, PlotJob, render

__all__ = ["PLOT_KINDS", "PlotContractError", "PlotDataError", "PlotJob",
           "render"]
