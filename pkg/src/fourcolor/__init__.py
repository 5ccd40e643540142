"""Constructive four-coloring of planar maps by incremental boundary growth."""

__version__ = "0.1.0"
