"""Burgess-type character sum bounds: evaluation, exact checks and interval certificates."""

__version__ = "0.1.0"
