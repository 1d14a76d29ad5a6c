"""Brandt matrices B_g(n) and the Hecke identity suite."""
