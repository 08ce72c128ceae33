"""Construct and verify small complete caps in PG(N, q), q even."""

__version__ = "0.1.0"
