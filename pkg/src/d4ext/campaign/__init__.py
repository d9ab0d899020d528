"""Exhaustive searches over pairs {a1, a2} and the a1 = 1 exact analysis."""
