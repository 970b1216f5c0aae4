"""Workbench for semi-inducibility of red/blue colored complete graphs."""

__version__ = "0.1.0"
