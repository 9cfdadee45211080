class PlotError(Exception):
    """Base error of the plotting tool."""


class SchemaMismatch(PlotError):
    """CSV header does not match the simulator's output contract."""


class EmptyInput(PlotError):
    """CSV contains no data rows (or no curves)."""
