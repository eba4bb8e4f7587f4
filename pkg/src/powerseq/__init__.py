"""Exact verification toolkit for constant second differences of powers."""

__version__ = "0.1.0"
