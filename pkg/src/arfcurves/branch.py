"""Parameterized curve branches and their blow-up sequences."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    InputError,
    InvalidArgumentError,
    NotNormalizedError,
    PrecisionError,
    StepLimitError,
)
from .semigroup import MultiplicitySequence, arf_characters, msq_to_semigroup
from .series import (
    ABOVE_PRECISION,
    DEFAULT_PRECISION,
    QQ,
    FieldSpec,
    PowerSeries,
    Scalar,
    compress_exponents,
    exponent_gcd,
    parse_series,
    series_div,
)

DEFAULT_MAX_STEPS = 64


@dataclass(frozen=True)
class Branch:
    """A branch ``x_i = phi_i(t)`` through the origin of n-space."""

    coords: tuple[PowerSeries, ...]

    def __post_init__(self):
        coords = tuple(self.coords)
        if not coords:
            raise InvalidArgumentError("a branch needs at least one coordinate")
        f, p = coords[0].field, coords[0].precision
        for s in coords:
            if s.field != f:
                raise InvalidArgumentError("all coordinates must share one field")
            if s.precision != p:
                raise InvalidArgumentError("all coordinates must share one precision")
            if s.constant_term():
                raise InvalidArgumentError(f"coordinate {s.to_text()} has a nonzero constant term")
        if all(s.is_zero() for s in coords):
            raise PrecisionError("every coordinate is zero up to precision", p)
        object.__setattr__(self, "coords", coords)

    @classmethod
    def from_series(cls, coords: Sequence[PowerSeries]) -> Branch:
        """Build from series of possibly different precisions (truncated to the least)."""
        p = min(s.precision for s in coords)
        return cls(tuple(s.truncate(p) for s in coords))

    @classmethod
    def parse(cls, text: str, field: FieldSpec = QQ, precision: int = DEFAULT_PRECISION) -> Branch:
        """One series per coordinate, separated by commas, semicolons or newlines."""
        parts = [p for p in re.split(r"[,;\n]", text) if p.strip()]
        if not parts:
            raise InputError("empty branch")
        return cls(tuple(parse_series(p, field, precision) for p in parts))

    @property
    def field(self) -> FieldSpec:
        return self.coords[0].field

    @property
    def precision(self) -> int:
        return self.coords[0].precision

    def __len__(self):
        return len(self.coords)

    def orders(self) -> list:
        return [s.order() for s in self.coords]

    def reparameterize(self, unit: PowerSeries) -> Branch:
        """Substitute ``t -> t * unit(t)`` in every coordinate."""
        if not unit.constant_term():
            raise InvalidArgumentError("reparameterization factor must be a unit")
        t = PowerSeries.monomial(1, self.precision, self.field)
        g = t * unit.truncate(self.precision)
        return Branch(tuple(s.compose(g) for s in self.coords))

    def __str__(self):
        return "(" + ", ".join(s.to_text() for s in self.coords) + ")"

    def to_json(self) -> dict:
        return {
            "field": self.field.selector,
            "precision": self.precision,
            "coords": [s.to_text() for s in self.coords],
        }


@dataclass(frozen=True)
class BlowupStep:
    multiplicity: int
    pivot: int
    recenter: tuple[Scalar, ...]

    def to_json(self, field: FieldSpec) -> dict:
        return {
            "multiplicity": self.multiplicity,
            "pivot": self.pivot,
            "recenter": [field.render(c) for c in self.recenter],
        }


@dataclass(frozen=True)
class BlowupTrace:
    steps: tuple[BlowupStep, ...]
    final: Branch

    def to_json(self) -> dict:
        f = self.final.field
        return {
            "steps": [s.to_json(f) for s in self.steps],
            "final": self.final.to_json(),
        }


def branch_multiplicity(b: Branch) -> int:
    """Order of the lowest-order coordinate."""
    orders = [o for o in b.orders() if o is not ABOVE_PRECISION]
    if not orders:
        raise PrecisionError("every coordinate is zero up to precision", b.precision)
    return min(orders)


def branch_normalize(b: Branch) -> tuple[Branch, int]:
    """Divide all exponents by their gcd ``nu`` so the order semigroup has gcd 1."""
    nu = exponent_gcd(b.coords)
    if nu <= 1:
        return b, 1
    return Branch(tuple(compress_exponents(s, nu) for s in b.coords)), nu


def branch_blowup(b: Branch) -> tuple[Branch, BlowupStep]:
    """Blow up at the origin in the chart of the lowest-order coordinate.

    Every other coordinate is divided by the pivot and recentred so that
    the transform passes through the origin again; the subtracted constants
    are recorded in the step.
    """
    m = branch_multiplicity(b)
    pivot = next(i for i, o in enumerate(b.orders()) if o == m)
    prec = b.precision - m
    if prec < 1:
        raise PrecisionError(
            f"blow-up of a multiplicity-{m} branch at precision {b.precision} leaves "
            f"precision {prec}", b.precision)
    phi = b.coords[pivot]
    zero = b.field.scalar(0)
    coords, shifts = [], []
    for i, s in enumerate(b.coords):
        if i == pivot:
            coords.append(s.truncate(prec))
            shifts.append(zero)
            continue
        q = series_div(s, phi)
        c = q.constant_term()
        coords.append(q - c if c else q)
        shifts.append(c)
    return Branch(tuple(coords)), BlowupStep(m, pivot, tuple(shifts))


def branch_multiplicity_sequence(
    b: Branch, max_steps: int = DEFAULT_MAX_STEPS
) -> tuple[MultiplicitySequence, BlowupTrace]:
    """Blow up until some coordinate has order 1; returns the sequence and trace."""
    nu = exponent_gcd(b.coords)
    if nu > 1:
        raise NotNormalizedError(f"branch exponents have gcd {nu}; call branch_normalize", nu)
    steps = []
    mults = []
    while True:
        m = branch_multiplicity(b)
        mults.append(m)
        if m == 1:
            break
        if len(steps) >= max_steps:
            raise StepLimitError(f"no smooth transform after {max_steps} blow-ups")
        b, step = branch_blowup(b)
        steps.append(step)
    return MultiplicitySequence(tuple(mults)), BlowupTrace(tuple(steps), b)


def branch_characters(b: Branch, max_steps: int = DEFAULT_MAX_STEPS) -> tuple[int, ...]:
    seq, _ = branch_multiplicity_sequence(b, max_steps)
    return arf_characters(msq_to_semigroup(seq))
