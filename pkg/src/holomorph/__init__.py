"""Finite groups, their automorphisms, and bijective affine maps."""
