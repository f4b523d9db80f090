"""Orbit and incidence structure of the twisted cubic in PG(3,q)."""

__version__ = "0.1.0"
