"""Rendering of simulator spectrum CSVs into publication-style figures."""

from .render import (DIALECT_COLUMNS, FIGURES, EmptyInputError, FigureSpec,
                     MissingColumnError, PlotInputError, UnknownFigureError,
                     main, read_spectrum, render, resolve_figure)

__version__ = "0.1.0"

__all__ = [
    "DIALECT_COLUMNS",
    "FIGURES",
    "EmptyInputError",
    "FigureSpec",
    "MissingColumnError",
    "PlotInputError",
    "UnknownFigureError",
    "main",
    "read_spectrum",
    "render",
    "resolve_figure",
]
