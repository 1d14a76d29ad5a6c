from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from quatbrandt.arith.matrices import OrderMatrix
from quatbrandt.arith.orders import MaximalOrder
from quatbrandt.classes.classset import ClassSet
from quatbrandt.classes.mass import mass
from quatbrandt.enumeration.isometry import are_isometric, automorphism_group
from quatbrandt.enumeration.short_vectors import short_vector_array, theta_prefix, vectors_by_norm
from quatbrandt.errors import ClassEnumerationError, ClassSetError, InvalidInputError
from quatbrandt.forms.hermitian import HermitianForm, haupt_norm
from quatbrandt.logging import get_logger

logger = get_logger("quatbrandt.classes")

SUPPORTED_G = (2, 3)


@dataclass
class _Accepted:
    theta: tuple[int, ...]
    discovery: int
    form: HermitianForm
    automorphisms: int


class _UnitAction:
    """b -> conj(u) * b * w for units u, w of O (and b -> conj(b) when the diagonal is symmetric)."""

    def __init__(self, order: MaximalOrder) -> None:
        units = np.array(order.units(), dtype=np.int64)
        C = order.structure
        self.order = order
        self.left = np.stack([order.left_matrix(order.conjugate_coords(u)) for u in units])
        # right[w][t, r] = sum_s w_s C[r, s, t]
        self.right = np.einsum("ws,rst->wtr", units, C)

    def orbit(self, b: np.ndarray, with_conjugate: bool) -> set[tuple[int, ...]]:
        y = np.einsum("urs,s->ur", self.left, b)
        z = np.einsum("wtr,ur->uwt", self.right, y).reshape(-1, 4)
        out = {tuple(int(x) for x in row) for row in z}
        if with_conjugate:
            out |= {tuple(int(x) for x in self.order.conjugation @ np.array(v)) for v in list(out)}
        return out

    def representatives(self, shell: list[tuple[int, ...]], with_conjugate: bool) -> list[np.ndarray]:
        covered: set[tuple[int, ...]] = set()
        reps: list[np.ndarray] = []
        for v in shell:
            if v in covered:
                continue
            arr = np.array(v, dtype=np.int64)
            covered |= self.orbit(arr, with_conjugate)
            reps.append(arr)
        return reps


def _form(order: MaximalOrder, diag: list[int], off: dict[tuple[int, int], np.ndarray]) -> HermitianForm:
    g = len(diag)
    arr = np.zeros((g, g, 4), dtype=np.int64)
    for k, d in enumerate(diag):
        arr[k, k, 0] = d
    for (k, l), x in off.items():
        arr[k, l] = x
        arr[l, k] = order.conjugate_coords(x)
    return HermitianForm(OrderMatrix.from_array(order, arr))


def block_sum(first: HermitianForm, second: HermitianForm) -> HermitianForm:
    g1, g2 = first.g, second.g
    arr = np.zeros((g1 + g2, g1 + g2, 4), dtype=np.int64)
    arr[:g1, :g1] = first.matrix.array()
    arr[g1:, g1:] = second.matrix.array()
    return HermitianForm(OrderMatrix.from_array(first.order, arr))


def _candidates_g2(order: MaximalOrder, action: _UnitAction, lo: int, hi: int) -> Iterator[HermitianForm]:
    """[[a, b], [conj b, c]] with 2 <= a <= c, lo < c <= hi and nrd(b) = ac - 1."""
    nl = order.norm_lattice()
    for c in range(max(lo + 1, 2), hi + 1):
        for a in range(2, c + 1):
            shell = [tuple(int(x) for x in v) for v in short_vector_array(nl, a * c - 1)]
            for b in action.representatives(shell, with_conjugate=(a == c)):
                yield _form(order, [a, c], {(0, 1): b})


def _candidates_g3(order: MaximalOrder, action: _UnitAction, lo: int, hi: int) -> Iterator[HermitianForm]:
    """Bordered forms [[H2, w], [w^dagger, c3]] with HNm 1, 2 <= a <= c2 <= c3 and lo < c3 <= hi.

    With d = HNm(H2) = a*c2 - nrd(b) the last column must satisfy
    w^dagger adj(H2) w = d*c3 - 1.
    """
    nl = order.norm_lattice()
    zero = np.zeros(4, dtype=np.int64)
    for c3 in range(max(lo + 1, 2), hi + 1):
        for a in range(2, c3 + 1):
            for c2 in range(a, c3 + 1):
                shells = vectors_by_norm(nl, a * c2 - 1)
                b_choices = [zero]
                for _, shell in shells.items():
                    b_choices.extend(action.representatives(shell, with_conjugate=(a == c2)))
                for b in b_choices:
                    d = a * c2 - order.norm_coords(b)
                    adj = _form(order, [c2, a], {(0, 1): -b})
                    for w in short_vector_array(adj.gram, d * c3 - 1):
                        yield _form(order, [a, c2, c3], {(0, 1): b, (0, 2): w[:4], (1, 2): w[4:]})


def hermitian_class_reps(g: int, order: MaximalOrder) -> ClassSet:
    """HNm-1 hermitian classes over O, searched with a doubling diagonal bound until the mass is met."""
    from quatbrandt.runtime.settings import get_settings

    s = get_settings()
    if g not in SUPPORTED_G:
        raise InvalidInputError(f"hermitian class enumeration supports g in {SUPPORTED_G}, got {g}")
    p = order.algebra.p
    if p is None:
        raise ClassEnumerationError("hermitian classes need an algebra built by algebra_for_prime")
    target = mass(g, p)
    theta_len = s.HERMITIAN_THETA_PREFIX_LENGTH
    accepted: list[_Accepted] = []
    seen: set[tuple[int, ...]] = set()
    total = Fraction(0)

    def admit(H: HermitianForm) -> None:
        nonlocal total
        key = H.key()
        if key in seen:
            return
        seen.add(key)
        theta = theta_prefix(H.gram, theta_len)
        for acc in accepted:
            if acc.theta == theta and are_isometric(H, acc.form):
                return
        if haupt_norm(H) != 1:
            raise ClassSetError(f"candidate {key} does not have Haupt norm 1")
        e = len(automorphism_group(H))
        accepted.append(_Accepted(theta, len(accepted), H, e))
        total += Fraction(1, e)
        logger.info("g=%d p=%d: class %d found (e=%d), mass %s of %s", g, p, len(accepted), e, total, target)

    admit(HermitianForm.identity(order, g))
    if g == 3 and total < target:
        # forms representing 1 split off [1] and reduce to the g=2 classes
        one = HermitianForm.identity(order, 1)
        for H2 in hermitian_class_reps(2, order).reps:
            admit(block_sum(one, H2))  # type: ignore[arg-type]

    action = _UnitAction(order)
    generate = _candidates_g2 if g == 2 else _candidates_g3
    lo, hi = 1, max(2, s.CLASS_SEARCH_INITIAL_BOUND)
    while total < target:
        logger.info("g=%d p=%d: searching diagonal bound %d", g, p, hi)
        for H in generate(order, action, lo, hi):
            admit(H)
            if total >= target:
                break
        if total >= target:
            break
        if hi >= s.CLASS_SEARCH_MAX_BOUND:
            raise ClassEnumerationError(
                f"g={g} p={p}: mass {total} < {target} at the diagonal ceiling {s.CLASS_SEARCH_MAX_BOUND}"
            )
        lo, hi = hi, min(2 * hi, s.CLASS_SEARCH_MAX_BOUND)
    if total != target:
        raise ClassSetError(f"g={g} p={p}: automorphism counts overshoot the mass ({total} > {target})")

    accepted.sort(key=lambda acc: (acc.theta, acc.form.gram.canonical_bytes(), acc.discovery))
    return ClassSet(
        g=g,
        p=p,
        order=order,
        reps=tuple(acc.form for acc in accepted),
        aut_counts=tuple(acc.automorphisms for acc in accepted),
        mass_target=target,
    )
