"""Test package for quatbrandt."""
