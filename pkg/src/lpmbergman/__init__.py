"""Bergman complexes of lattice path matroids."""
