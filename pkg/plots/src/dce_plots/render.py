"""The five figure kinds rendered from simulator CSVs.

All inputs are validated (headers and non-emptiness) before any figure file
is created, so a failed job never leaves an empty or partial artifact.
Output is vector-only (SVG or PDF) and deterministic: identical inputs and
style give byte-identical files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from dce_plots.contracts import (PlotDataError, Table, identify,  # noqa: E402
                                 read_table)

PLOT_KINDS = ("nGammaTime", "resonanceScan", "couplings", "modeProfile",
              "pulseTrain")

# everything that could wobble between runs is pinned; fonttype "none" keeps
# text as text so figures stay small, searchable and reproducible
_RC = {
    "svg.hashsalt": "dce-plots",
    "svg.fonttype": "none",
    "font.family": "DejaVu Sans",
    "figure.figsize": (6.4, 4.0),
    "figure.dpi": 100,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "lines.linewidth": 1.5,
}


@dataclass(frozen=True)
class PlotJob:
    """One figure: input CSVs, the plot kind, and style options."""

    kind: str
    inputs: tuple[Path, ...]
    out: Path
    log_y: bool = False
    title: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "inputs",
                           tuple(Path(p) for p in self.inputs))
        object.__setattr__(self, "out", Path(self.out))
        if self.kind not in PLOT_KINDS:
            raise PlotDataError(
                f"unknown plot kind {self.kind!r}; expected one of "
                f"{', '.join(PLOT_KINDS)}")
        if not self.inputs:
            raise PlotDataError("at least one input CSV is required")
        if self.out.suffix.lower() not in (".svg", ".pdf"):
            raise PlotDataError(
                f"output must be vector (.svg or .pdf), got "
                f"{self.out.name!r}")


def _single_input(job: PlotJob, contract: str) -> Table:
    if len(job.inputs) != 1:
        raise PlotDataError(
            f"{job.kind} takes exactly one {contract}.csv input, got "
            f"{len(job.inputs)}")
    return read_table(job.inputs[0], contract)


def _finite(xs: list[float], ys: list[float]) -> tuple[list[float], list[float]]:
    pairs = [(x, y) for x, y in zip(xs, ys) if math.isfinite(y)]
    return [p[0] for p in pairs], [p[1] for p in pairs]


def _n_gamma_time(job: PlotJob, ax) -> None:
    evolve = read_table(job.inputs[0], "evolve")
    ax.plot(evolve.floats("t"), evolve.floats("Ngamma"), label="numeric")
    for path in job.inputs[1:]:
        flavour = identify(path, ("rwa", "compare_avg"))
        table = read_table(path, flavour)
        if flavour == "rwa":
            ax.plot(table.floats("t"), table.floats("Ngamma_rwa"), "--",
                    label="RWA")
        else:
            ts = table.floats("t")
            ax.plot(ts, table.floats("avg_std"), ":",
                    label="standard (period avg)")
            ax.plot(ts, table.floats("avg_inst"), "-.",
                    label="instantaneous (period avg)")
    ax.set_xlabel("t  [1/omega0]")
    ax.set_ylabel("N_gamma")
    ax.legend()


def _resonance_scan(job: PlotJob, ax) -> None:
    sweep = _single_input(job, "sweep")
    variable = sweep.column("variable")[0]
    xs = sweep.floats("value")
    ys = sweep.floats("Ngamma_final")
    ax.plot(xs, ys, marker="o", markersize=3)
    i_max = max(range(len(ys)), key=ys.__getitem__)
    ax.plot([xs[i_max]], [ys[i_max]], marker="v", color="C3")
    if variable == "Omega":
        # the growth peak sits at the shifted resonance, not at 2 omega0
        peak_omega = sweep.floats("peak_Omega")[0]
        mean_dw = sweep.floats("mean_delta_omega")[0]
        ax.axvline(peak_omega, linestyle="--", color="C3", alpha=0.8)
        ax.annotate(
            f"shifted resonance:\nOmega/2 - omega0 = <delta omega> "
            f"= {mean_dw:g}",
            xy=(peak_omega, ys[i_max]),
            xytext=(0.02, 0.95), textcoords="axes fraction",
            va="top", fontsize=9,
            arrowprops={"arrowstyle": "->", "color": "C3"})
        ax.set_xlabel("Omega  [omega0]")
    else:
        ax.set_xlabel(variable)
    ax.set_ylabel("N_gamma at end of run")


def _couplings(job: PlotJob, ax_pair) -> None:
    ax_dw, ax_g = ax_pair
    for path in job.inputs:
        table = read_table(path, "couplings")
        ts = table.floats("t")
        stem = "" if len(job.inputs) == 1 else f" [{Path(path).stem}]"
        ax_dw.plot(ts, table.floats("delta_omega"),
                   label=f"delta_omega{stem}")
        ax_g.plot(ts, table.floats("re_g"), label=f"Re g{stem}")
        ax_g.plot(ts, table.floats("im_g"), "--", label=f"Im g{stem}")
    provenance = table.column("provenance")[0]
    ax_dw.set_ylabel("delta_omega  [omega0]")
    ax_dw.set_title(f"coupling coefficients ({provenance})", fontsize=10)
    ax_dw.legend(fontsize=8)
    ax_g.set_xlabel("t  [1/omega0]")
    ax_g.set_ylabel("g  [omega0]")
    ax_g.legend(fontsize=8)


def _mode_profile(job: PlotJob, ax) -> None:
    table = _single_input(job, "modes_profile")
    indices = table.column("mode_index")
    xs = table.floats("x")
    fs = table.floats("f")
    seen: dict[str, tuple[list[float], list[float]]] = {}
    for idx, x, f in zip(indices, xs, fs):
        seen.setdefault(idx, ([], []))
        seen[idx][0].append(x)
        seen[idx][1].append(f)
    for idx, (mx, mf) in seen.items():
        ax.plot(mx, mf, label=f"mode {idx}")
    ax.set_xlabel("x  [L]")
    ax.set_ylabel("f0(x)")
    ax.legend()


def _pulse_train(job: PlotJob, ax) -> None:
    table = _single_input(job, "pulse_train")
    pulses = table.floats("pulse")
    px, py = _finite(pulses, table.floats("Ngamma"))
    if px:
        ax.plot(px, py, marker="o", markersize=4, label="numeric")
    rx, ry = _finite(pulses, table.floats("Ngamma_rwa"))
    if rx:
        ax.plot(rx, ry, "--", marker="s", markersize=3, label="RWA")
    if not px and not rx:
        raise PlotDataError(
            f"{table.path.name}: every photon-number value is NaN — nothing "
            f"to draw")
    ax.set_xlabel("pulse")
    ax.set_ylabel("N_gamma at pulse end")
    ax.legend()


def render(job: PlotJob) -> Path:
    """Render one figure; returns the written path.

    Inputs are read and validated before the figure file is opened, so a
    contract violation or empty CSV never produces an output artifact.
    """
    with plt.rc_context(_RC):
        if job.kind == "couplings":
            fig, axes = plt.subplots(2, 1, sharex=True)
        else:
            fig, axes = plt.subplots()
        try:
            if job.kind == "nGammaTime":
                _n_gamma_time(job, axes)
            elif job.kind == "resonanceScan":
                _resonance_scan(job, axes)
            elif job.kind == "couplings":
                _couplings(job, axes)
            elif job.kind == "modeProfile":
                _mode_profile(job, axes)
            else:
                _pulse_train(job, axes)
            target = axes[0] if job.kind == "couplings" else axes
            if job.log_y:
                (axes[1] if job.kind == "couplings" else axes).set_yscale(
                    "log")
            if job.title:
                target.set_title(job.title, fontsize=10)
            fig.tight_layout()
            job.out.parent.mkdir(parents=True, exist_ok=True)
            if job.out.suffix.lower() == ".svg":
                fig.savefig(job.out, format="svg", metadata={"Date": None})
            else:
                fig.savefig(job.out, format="pdf",
                            metadata={"CreationDate": None})
        finally:
            plt.close(fig)
    return job.out
