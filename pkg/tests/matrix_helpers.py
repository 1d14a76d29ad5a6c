from __future__ import annotations

import itertools
import os
from typing import Sequence


def slow_tests_enabled() -> bool:
    # g=3 class sets, large-n g=2 tables and surveys take minutes; opt in explicitly.
    return os.environ.get("QUATBRANDT_RUN_SLOW_TESTS", "0").strip() in {"1", "true", "yes"}


def equal_up_to_permutation(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> bool:
    """True when B = P A P^-1 for some permutation P (class order is only canonical up to relabelling)."""
    h = len(A)
    if len(B) != h:
        return False
    for perm in itertools.permutations(range(h)):
        if all(A[perm[i]][perm[j]] == B[i][j] for i in range(h) for j in range(h)):
            return True
    return False


def consistent_permutation(tables: Sequence[tuple[Sequence[Sequence[int]], Sequence[Sequence[int]]]]) -> bool:
    """One relabelling that matches every (computed, expected) pair at once."""
    h = len(tables[0][0])
    for perm in itertools.permutations(range(h)):
        if all(
            A[perm[i]][perm[j]] == B[i][j] for A, B in tables for i in range(h) for j in range(h)
        ):
            return True
    return False
