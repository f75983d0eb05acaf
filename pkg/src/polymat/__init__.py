"""Discrete polymatroids, representations, network and index coding."""
