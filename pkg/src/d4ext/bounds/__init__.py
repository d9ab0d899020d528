"""Bound inequalities, their registry, and the case analyses built on them."""
