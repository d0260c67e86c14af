"""Exception types shared across the package."""


class DataError(ValueError):
    """Input data is malformed or inconsistent (bad CSV, non-monotone series, ...)."""


class DegenerateSeriesError(DataError):
    """The series carries no usable signal (e.g. every fraction identical)."""


class ConvergenceError(RuntimeError):
    """An iterative numerical routine exhausted its iteration budget."""
