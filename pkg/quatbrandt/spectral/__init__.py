"""Exact characteristic polynomials and Ramanujan verdicts."""
