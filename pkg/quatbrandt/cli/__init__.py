"""Command-line entry points (``python -m quatbrandt``)."""
