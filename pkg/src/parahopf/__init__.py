"""Exact verification of para-Hopf algebroids and their cyclic cohomology."""

__version__ = "0.1.0"
