"""Numerical verification of Dirac-harmonic maps on hypersurfaces."""
