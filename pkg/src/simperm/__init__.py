"""Simple permutations in the 321-avoiding and skew-merged classes, counted
twice: by brute force and by exact generating-function systems."""

__version__ = "0.1.0"
