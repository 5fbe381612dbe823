"""Rooted combinatorial maps: exploration, cut-and-slide bijections and counting."""
