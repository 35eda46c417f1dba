"""Exact computation of plane curve singularity invariants and smoothness
certificates for families of curves with prescribed singularity types."""

__version__ = "0.1.0"
