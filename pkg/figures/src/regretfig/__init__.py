"""Post-hoc figure generation for subset-bandit experiment CSV outputs."""

from .panels import (
    FigureDataError,
    FigureSpec,
    ThreePanelData,
    build_figure,
    build_three_panel_data,
    render_three_panel,
)

__version__ = "0.1.0"

__all__ = [
    "FigureDataError",
    "FigureSpec",
    "ThreePanelData",
    "build_figure",
    "build_three_panel_data",
    "render_three_panel",
]
