"""Short-vector enumeration, isometry backtracking and orbit decomposition."""
