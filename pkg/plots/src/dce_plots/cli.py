"""Command-line entry point: `plots <kind> --in CSV... --out FILE`."""

from __future__ import annotations

import argparse
import sys

from dce_plots.contracts import PlotContractError, PlotDataError
from dce_plots.render import PLOT_KINDS, PlotJob, render


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plots",
        description="Render publication-style figures from dcesim CSV "
                    "outputs.")
    parser.add_argument("kind", choices=PLOT_KINDS,
                        help="which figure to draw")
    parser.add_argument("--in", dest="inputs", nargs="+", required=True,
                        metavar="CSV", help="input CSV file(s)")
    parser.add_argument("--out", required=True, metavar="FILE",
                        help="output figure path (.svg or .pdf)")
    parser.add_argument("--log-y", action="store_true",
                        help="logarithmic photon-number axis")
    parser.add_argument("--title", default=None, help="figure title")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        job = PlotJob(kind=args.kind, inputs=tuple(args.inputs), out=args.out,
                      log_y=args.log_y, title=args.title)
        out = render(job)
    except (PlotContractError, PlotDataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
