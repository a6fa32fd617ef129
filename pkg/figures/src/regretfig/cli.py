"""Command-line entry point: render the three-panel figure from CSVs."""

from __future__ import annotations

import argparse
import sys

from .panels import FigureDataError, FigureSpec, render_three_panel


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regretfig",
        description="Render the three-panel regret/reward figure from an "
        "experiment's summary.csv and series.csv.",
    )
    parser.add_argument("--summary", required=True, help="path to summary.csv")
    parser.add_argument("--series", required=True, help="path to series.csv")
    parser.add_argument("--out", required=True, help="output image path (e.g. figure.png)")
    parser.add_argument("--baseline", choices=("expected", "sampled"), default="expected",
                        help="regret baseline to plot (default: expected)")
    parser.add_argument("--alpha", type=float, choices=(1.0, 0.5), default=1.0,
                        help="approximation factor: 1.0 = full regret, 0.5 = half-regret")
    parser.add_argument("--agents", default=None,
                        help="comma-separated display order (default: summary order)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    agents = tuple(a.strip() for a in args.agents.split(",")) if args.agents else None
    try:
        spec = FigureSpec(
            summary_csv=args.summary,
            series_csv=args.series,
            out_path=args.out,
            baseline=args.baseline,
            alpha=args.alpha,
            agents=agents,
        )
        data = render_three_panel(spec)
    except (FigureDataError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}: {len(data.agents)} agent(s), horizons {list(data.horizons)}, "
          f"detail panels at T={data.largest_horizon}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
