"""Exact arithmetic in H_p, its maximal orders and matrices over an order."""
