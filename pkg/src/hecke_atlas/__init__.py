"""Exact combinatorics of inertial parameters for classical p-adic groups."""

__version__ = "0.1.0"
