"""Frozen CSV contracts of the simulator and a strict reader for them.

The simulator's command-line tool promises these exact column headers; any
deviation is a contract violation and is reported by column so the mismatch
is obvious, never worked around.
"""

from __future__ import annotations

import csv
from pathlib import Path

CONTRACTS = {
    "modes": ("mode_index", "k", "omega0", "k_perp", "xi", "r_k",
              "norm_residual"),
    "modes_profile": ("mode_index", "x", "f"),
    "couplings": ("t", "delta_omega", "re_g", "im_g", "provenance"),
    "evolve": ("t", "ReA", "ImA", "ReB", "ImB", "Ngamma", "r", "K",
               "residual"),
    "evolve_multimode": ("t", "mode_index", "Ngamma", "residual"),
    "rwa": ("t", "Ngamma_rwa", "chi", "branch"),
    "sweep": ("variable", "value", "Omega", "Delta", "chi", "peak_Omega",
              "Ngamma_final", "omega0", "mean_delta_omega"),
    "compare": ("t", "Ngamma_std", "Ngamma_inst"),
    "compare_avg": ("t", "avg_std", "avg_inst", "rel_dev"),
    "pulse_train": ("pulse", "t", "Ngamma", "Ngamma_rwa", "r"),
}


class PlotContractError(Exception):
    """A CSV header does not match the frozen contract it claims to satisfy."""


class PlotDataError(Exception):
    """A CSV is missing, empty, or carries unusable values."""


class Table:
    """One parsed CSV: its contract name, header, and data columns."""

    def __init__(self, path: Path, contract: str, header: tuple[str, ...],
                 rows: list[list[str]]):
        self.path = path
        self.contract = contract
        self.header = header
        self.rows = rows

    def column(self, name: str) -> list[str]:
        return [row[self.header.index(name)] for row in self.rows]

    def floats(self, name: str) -> list[float]:
        i = self.header.index(name)
        try:
            return [float(row[i]) for row in self.rows]
        except ValueError as exc:
            raise PlotDataError(
                f"{self.path.name}: column {name!r} is not numeric "
                f"({exc})") from None


def check_header(path: Path, header: tuple[str, ...],
                 contract: str) -> None:
    """Column-by-column comparison against one frozen contract."""
    expected = CONTRACTS[contract]
    for i, want in enumerate(expected):
        if i >= len(header):
            raise PlotContractError(
                f"contract violation in {path.name}: column {i + 1} "
                f"({want!r}) is missing from the header ({contract} "
                f"contract)")
        if header[i] != want:
            raise PlotContractError(
                f"contract violation in {path.name}: column {i + 1} is "
                f"{header[i]!r}, expected {want!r} ({contract} contract)")
    if len(header) > len(expected):
        raise PlotContractError(
            f"contract violation in {path.name}: unexpected extra column "
            f"{header[len(expected)]!r} ({contract} contract)")


def read_table(path: Path, contract: str) -> Table:
    """Read a CSV, enforce its header contract, refuse empty data."""
    path = Path(path)
    if not path.is_file():
        raise PlotDataError(f"input CSV not found: {path}")
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = tuple(next(reader))
        except StopIteration:
            raise PlotDataError(
                f"{path.name}: file is empty — refusing to draw an empty "
                f"figure") from None
        rows = [row for row in reader if row]
    check_header(path, header, contract)
    if not rows:
        raise PlotDataError(
            f"{path.name}: no data rows — refusing to draw an empty figure")
    width = len(CONTRACTS[contract])
    for n, row in enumerate(rows, start=2):
        if len(row) != width:
            raise PlotDataError(
                f"{path.name}: line {n} has {len(row)} fields, expected "
                f"{width}")
    return Table(path, contract, header, rows)


def identify(path: Path, candidates: tuple[str, ...]) -> str:
    """Which of several allowed contracts does this CSV satisfy?

    Used where a plot kind accepts more than one input flavour.  If none
    matches, the violation is reported against the closest candidate (the
    one whose first differing column comes latest).
    """
    path = Path(path)
    if not path.is_file():
        raise PlotDataError(f"input CSV not found: {path}")
    with path.open(newline="") as fh:
        try:
            header = tuple(next(csv.reader(fh)))
        except StopIteration:
            raise PlotDataError(
                f"{path.name}: file is empty — refusing to draw an empty "
                f"figure") from None

    def agreement(contract: str) -> int:
        expected = CONTRACTS[contract]
        n = 0
        for got, want in zip(header, expected):
            if got != want:
                break
            n += 1
        return n

    best = max(candidates, key=agreement)
    check_header(path, header, best)
    return best
