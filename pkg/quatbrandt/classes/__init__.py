"""Vertex sets: right-ideal classes (g=1) and hermitian classes (g>=2) with mass certificates."""
