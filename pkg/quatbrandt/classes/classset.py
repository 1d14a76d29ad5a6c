from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Annotated, Literal, Union

import numpy as np
from pydantic import BaseModel, Field

from quatbrandt.arith.matrices import OrderMatrix
from quatbrandt.arith.orders import MaximalOrder
from quatbrandt.classes.ideals import IdealLattice
from quatbrandt.classes.mass import mass
from quatbrandt.errors import ClassSetError
from quatbrandt.forms.hermitian import HermitianForm

FORMAT_VERSION = 2

ClassRep = Union[IdealLattice, HermitianForm]


class IdealRepRecord(BaseModel):
    """Basis of a right ideal, one row of order coordinates per basis vector."""

    kind: Literal["ideal"] = "ideal"
    basis: list[list[int]]


class FormRepRecord(BaseModel):
    """Hermitian form as a g x g array of order coordinates."""

    kind: Literal["hermitian"] = "hermitian"
    entries: list[list[list[int]]]


RepRecord = Annotated[Union[IdealRepRecord, FormRepRecord], Field(discriminator="kind")]


class ClassSetRecord(BaseModel):
    format_version: int = FORMAT_VERSION
    g: int
    p: int
    h: int
    algebra: tuple[int, int]
    mass: str
    reps: list[RepRecord] = Field(default_factory=list)
    aut_counts: list[int] = Field(default_factory=list)


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(s: str) -> Fraction:
    return Fraction(s)


@dataclass(frozen=True)
class ClassSet:
    """Class representatives with their automorphism counts, certified by the mass formula."""

    g: int
    p: int
    order: MaximalOrder = field(compare=False, hash=False, repr=False)
    reps: tuple[ClassRep, ...]
    aut_counts: tuple[int, ...]
    mass_target: Fraction

    def __post_init__(self) -> None:
        if len(self.reps) != len(self.aut_counts):
            raise ClassSetError("one automorphism count per representative is required")
        if any(e < 2 for e in self.aut_counts):
            raise ClassSetError(f"automorphism counts must contain +-1: {self.aut_counts}")
        expected = mass(self.g, self.p)
        if self.mass_target != expected:
            raise ClassSetError(f"mass target {self.mass_target} != mass({self.g},{self.p}) = {expected}")
        got = sum((Fraction(1, e) for e in self.aut_counts), Fraction(0))
        if got != self.mass_target:
            raise ClassSetError(f"sum of 1/e = {got}, mass formula gives {self.mass_target}")

    @property
    def h(self) -> int:
        return len(self.reps)

    @property
    def weights(self) -> tuple[int, ...]:
        return self.aut_counts

    def to_record(self) -> ClassSetRecord:
        reps: list[IdealRepRecord | FormRepRecord] = []
        for rep in self.reps:
            if isinstance(rep, IdealLattice):
                rows = []
                for b in rep.basis:
                    coords = self.order.integral_coordinates(b)
                    if coords is None:
                        raise ClassSetError("ideal representative is not integral")
                    rows.append(list(coords))
                reps.append(IdealRepRecord(basis=rows))
            else:
                reps.append(FormRepRecord(entries=rep.matrix.array().tolist()))
        return ClassSetRecord(
            g=self.g,
            p=self.p,
            h=self.h,
            algebra=(self.order.algebra.a, self.order.algebra.b),
            mass=format_fraction(self.mass_target),
            reps=reps,
            aut_counts=list(self.aut_counts),
        )

    @classmethod
    def from_record(cls, record: ClassSetRecord, order: MaximalOrder) -> ClassSet:
        if record.format_version != FORMAT_VERSION:
            raise ClassSetError(f"unsupported format_version {record.format_version}")
        if tuple(record.algebra) != (order.algebra.a, order.algebra.b):
            raise ClassSetError("record was written for a different algebra")
        if record.h != len(record.reps):
            raise ClassSetError("h does not match the number of representatives")
        reps: list[ClassRep] = []
        for raw in record.reps:
            if isinstance(raw, IdealRepRecord) != (record.g == 1):
                raise ClassSetError(f"a {raw.kind} representative cannot belong to a g={record.g} class set")
            if isinstance(raw, IdealRepRecord):
                reps.append(IdealLattice.from_generators(order, [order.element(row) for row in raw.basis]))
            else:
                reps.append(HermitianForm(OrderMatrix.from_array(order, np.array(raw.entries, dtype=np.int64))))
        return cls(
            g=record.g,
            p=record.p,
            order=order,
            reps=tuple(reps),
            aut_counts=tuple(int(e) for e in record.aut_counts),
            mass_target=parse_fraction(record.mass),
        )

    @cached_property
    def fingerprint(self) -> str:
        payload = self.to_record().model_dump_json()
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()
