"""Brute-force reference implementations used to validate the fast paths.

These favour direct definitions over speed.  Semigroups are handled as
Python-int bitsets over a finite window; every window is chosen so that
no derivation below its top can involve an element above it.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import InvalidArgumentError, ResourceGuardError
from .semigroup import MultiplicitySequence, NumericalSemigroup, msq_to_semigroup
from .series import PowerSeries

MAX_ENUMERATION_CONDUCTOR = 24
MAX_SEARCH_CANDIDATES = 26


def _bits(members: Iterable[int]) -> int:
    b = 0
    for x in members:
        b |= 1 << x
    return b


def _positions(bits: int) -> list[int]:
    out = []
    i = 0
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return out


def _generated(gens: Sequence[int], width: int) -> int:
    """Bitset of <gens> restricted to [0, width)."""
    bits = 1
    mask = (1 << width) - 1
    for g in sorted(gens):
        # unbounded knapsack: repeatedly shift by g
        step = bits
        while step:
            step = (step << g) & mask & ~bits
            bits |= step
    return bits


def _arf_saturate(bits: int, width: int) -> int:
    """Close ``bits`` under (a, b, h) -> a + b - h for members h <= a, b, inside the window."""
    mask = (1 << width) - 1
    changed = True
    while changed:
        changed = False
        for h in _positions(bits):
            shifted = bits >> h
            acc = shifted
            for x in _positions(shifted):
                if x + h >= width:
                    break
                acc |= shifted << x
            new = (acc << h) & mask
            if new & ~bits:
                bits |= new
                changed = True
    return bits


def _semigroup_from_window(bits: int, width: int) -> NumericalSemigroup:
    members = [x for x in range(width) if bits >> x & 1]
    c = width
    while c > 0 and bits >> (c - 1) & 1:
        c -= 1
    if c == 1:
        c = 0
    return NumericalSemigroup.from_members(members, c)


def oracle_arf_closure_fixedpoint(s: NumericalSemigroup) -> NumericalSemigroup:
    """Smallest superset of ``s`` closed under the Arf rule, by monotone saturation."""
    if s.nu != 1:
        raise InvalidArgumentError("semigroup must be normalized")
    if s.conductor == 0:
        return s
    width = 2 * s.conductor
    bits = _bits(x for x in range(width) if x in s)
    return _semigroup_from_window(_arf_saturate(bits, width), width)


def _closure_reaches(gens: Sequence[int], target: int, width: int) -> bool:
    """Does the Arf closure of <gens> contain every member of ``target`` below ``width``?"""
    bits = _arf_saturate(_generated(gens, width), width)
    return bits & target == target


def oracle_minimal_character_search(s: NumericalSemigroup, bound: int | None = None) -> tuple[int, ...]:
    """Minimal generators of the smallest semigroup whose Arf closure is ``s``.

    Subsets of ``s`` in ``[1, bound]`` are tried by increasing size; the
    result is read off the intersection of every semigroup that works.
    """
    if s.nu != 1:
        raise InvalidArgumentError("semigroup must be normalized")
    if s.conductor == 0:
        return (1,)
    m = s.multiplicity
    if bound is None:
        bound = s.conductor + m
    # closure of a subset lies inside s (s is Arf), so agreement on [0, c + m) decides equality
    width = max(s.conductor + m, bound + 1)
    target = _bits(x for x in range(width) if x in s)
    candidates = [x for x in range(1, bound + 1) if x in s]
    if len(candidates) > MAX_SEARCH_CANDIDATES:
        raise ResourceGuardError(f"{len(candidates)} candidates exceed the search guard")
    # the closure keeps the multiplicity, so every working subset contains m
    others = [x for x in candidates if x != m]
    found_masks: list[int] = []
    meet = None
    for k in range(len(others) + 1):
        for combo in itertools.combinations(range(len(others)), k):
            mask = sum(1 << i for i in combo)
            if any(f & mask == f for f in found_masks):
                continue  # supersets of a working subset give larger semigroups
            gamma = [m] + [others[i] for i in combo]
            g = 0
            for x in gamma:
                g = gcd(g, x)
            if g != 1:
                continue
            if _closure_reaches(gamma, target, width):
                found_masks.append(mask)
                gen = _generated(gamma, width)
                meet = gen if meet is None else meet & gen
    if meet is None:
        raise ResourceGuardError(f"no generating subset within bound {bound}")
    chars = []
    for x in range(1, bound + 1):
        if not meet >> x & 1:
            continue
        if not any(meet >> y & 1 and meet >> (x - y) & 1 for y in range(1, x // 2 + 1)):
            chars.append(x)
    return tuple(chars)


def oracle_enumerate_arf_semigroups(conductor_bound: int) -> list[NumericalSemigroup]:
    """Every Arf semigroup with conductor <= bound, via valid multiplicity-sequence heads."""
    if conductor_bound > MAX_ENUMERATION_CONDUCTOR:
        raise ResourceGuardError(
            f"conductor bound {conductor_bound} exceeds {MAX_ENUMERATION_CONDUCTOR}")
    heads: list[tuple[int, ...]] = [()]

    def extend(prefix: tuple[int, ...], total: int):
        top = prefix[-1] if prefix else conductor_bound
        for x in range(2, min(top, conductor_bound - total) + 1):
            h = prefix + (x,)
            heads.append(h)
            extend(h, total + x)

    extend((), 0)
    seen = set()
    out = []
    for h in heads:
        seq = MultiplicitySequence(h + (1,))
        if not seq.is_valid():
            continue
        sg = msq_to_semigroup(seq)
        if sg not in seen:
            seen.add(sg)
            out.append(sg)
    out.sort(key=lambda sg: (sg.conductor, sg.elements))
    return out


def oracle_ring_orders_linear(gens: Sequence[PowerSeries], degree_bound: int,
                              precision: int | None = None) -> set[int]:
    """Leading orders of the span of all monomials in ``gens`` of degree <= bound."""
    if len(gens) > 3 or degree_bound > 8:
        raise ResourceGuardError("oracle limited to <= 3 generators and degree <= 8")
    if not gens:
        raise InvalidArgumentError("no generators")
    field = gens[0].field
    prec = min(g.precision for g in gens) if precision is None else precision
    gens = [g.truncate(prec) for g in gens]
    p = field.characteristic
    # powers[i][d] = gens[i]**d
    powers = []
    for g in gens:
        row = [PowerSeries.one(prec, field)]
        for _ in range(degree_bound):
            row.append(row[-1] * g)
        powers.append(row)
    rows: dict[int, dict[int, object]] = {}
    for degs in itertools.product(range(degree_bound + 1), repeat=len(gens)):
        if sum(degs) > degree_bound:
            continue
        mono = PowerSeries.one(prec, field)
        for i, d in enumerate(degs):
            mono = mono * powers[i][d]
        vec = dict(mono.coefficients)
        # Gaussian elimination keyed by leading exponent
        while vec:
            lead = min(vec)
            if lead not in rows:
                rows[lead] = vec
                break
            pivot = rows[lead]
            factor = vec[lead] * (pow(pivot[lead], -1, p) if p else 1 / Fraction(pivot[lead]))
            for e, v in pivot.items():
                w = vec.get(e, 0) - factor * v
                if p:
                    w %= p
                if w:
                    vec[e] = w
                else:
                    vec.pop(e, None)
    return set(rows)


__all__ = [
    "oracle_arf_closure_fixedpoint",
    "oracle_minimal_character_search",
    "oracle_enumerate_arf_semigroups",
    "oracle_ring_orders_linear",
]
