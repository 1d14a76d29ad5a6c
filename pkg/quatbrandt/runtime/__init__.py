"""Settings, artifact cache and the per-(g, p) workbench."""
