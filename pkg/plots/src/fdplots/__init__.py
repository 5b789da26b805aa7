"""Static figure rendering for fdmimo experiment results."""

from .render import (FIELD_LABELS, FigureSpec, STANDARD_FIGURES, read_series,
                     render, render_standard)

__version__ = "0.1.0"

__all__ = ["FIELD_LABELS", "FigureSpec", "STANDARD_FIGURES", "read_series",
           "render", "render_standard"]
