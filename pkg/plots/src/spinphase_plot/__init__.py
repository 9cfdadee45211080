"""Batch plotter turning spinphase CSV time series into figure panels."""

__version__ = "0.1.0"

from .errors import EmptyInput, PlotError, SchemaMismatch
from .figure import CurveData, FigureSpec, parse_csv, render
