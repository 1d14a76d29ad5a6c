"""Quaternionic hermitian forms, their trace Gram lattices and Haupt norm."""
