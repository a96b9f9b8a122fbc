"""quandlekit: exact-arithmetic toolkit for finite quandles."""

__version__ = "0.1.0"
