"""Exact dimension bookkeeping for unipotent fundamental groups and Selmer varieties."""

__version__ = "0.1.0"
TOOL_NAME = "ckdim"
