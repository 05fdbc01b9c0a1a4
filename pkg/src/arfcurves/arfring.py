"""Subrings of k[[t]]: order semigroups, Arf closures, membership and bases.

Rings are the complete local rings ``k[[phi_1, ..., phi_n]]`` of a branch.
Once the order semigroup ``W(H)`` is certified to contain every integer
from ``c`` on, ``H`` contains the whole ideal ``t^c k[[t]]``; from then on
series are only kept modulo that ideal (precision ``c - 1``), and any
representative of a class is an honest element of the ring.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from .branch import Branch, branch_characters
from .errors import (
    IndeterminateMembershipError,
    InvalidArgumentError,
    NotNormalizedError,
    PrecisionError,
)
from .semigroup import (
    MultiplicitySequence,
    NumericalSemigroup,
    arf_characters,
    arf_closure,
    check_characters,
    msq_to_semigroup,
    sg_from_generators,
)
from .series import (
    ABOVE_PRECISION,
    DEFAULT_PRECISION,
    FieldSpec,
    PowerSeries,
    series_div,
)

_START_PRECISION = 32


def _monic(s: PowerSeries) -> PowerSeries:
    lc = s.leading_coefficient()
    return s if lc == 1 else s.scale(s.field.inv(lc))


@dataclass(frozen=True)
class OrderBasis:
    """Triangular representatives of a ring, one per achieved order.

    ``reps`` holds a monic representative for each achieved order below
    ``conductor``, known modulo ``t^conductor``; above the conductor the
    ring contains every series, and :meth:`rep` returns ``t^e``.
    ``achieved`` is ``W(H)`` intersected with ``[0, precision]``.
    """

    field: FieldSpec
    precision: int
    conductor: int
    reps: dict[int, PowerSeries] = field(repr=False)
    achieved: tuple[int, ...] = field(repr=False)

    @property
    def multiplicity(self) -> int:
        positive = [e for e in self.reps if e > 0]
        return min(positive) if positive else max(self.conductor, 1)

    def __contains__(self, order: int) -> bool:
        return order >= self.conductor or order in self.reps

    def rep(self, e: int, precision: int | None = None) -> PowerSeries:
        """A ring element of order ``e``, lifted to ``precision`` (default: the ideal's)."""
        p = self.conductor - 1 if precision is None else precision
        if e >= self.conductor:
            return PowerSeries.monomial(e, max(p, e), self.field)
        if e not in self.reps:
            raise InvalidArgumentError(f"order {e} is not achieved")
        return self.reps[e].lift(p)

    def semigroup(self) -> NumericalSemigroup:
        return NumericalSemigroup.from_members(self.reps, self.conductor)

    def to_json(self) -> dict:
        return {
            "precision": self.precision,
            "conductor": self.conductor,
            "achieved_orders": list(self.achieved),
            "semigroup": self.semigroup().to_json(),
        }


def _run_start(orders: set[int], m: int, limit: int) -> int | None:
    """Smallest ``r`` with ``[r, r+m)`` inside ``orders`` and ``r+m <= limit``."""
    run = 0
    for x in range(limit):
        run = run + 1 if x in orders else 0
        if run >= m:
            return x - m + 1
    return None


def _conductor_below(orders, limit: int) -> int:
    c = limit
    while c > 0 and c - 1 in orders:
        c -= 1
    return 0 if c == 1 else c


def _saturate(gens: Sequence[PowerSeries], precision: int, ideal: int | None):
    """Triangular basis of k[[gens]] (+ t^ideal k[[t]] when ``ideal`` is given).

    Returns ``(reps, limit, certified)``: every order below ``limit`` is
    decided exactly, and when ``certified`` all orders ``>= limit`` are in
    the ring.
    """
    f = gens[0].field
    if ideal is not None:
        precision = ideal - 1
        if precision < 1:
            return {0: PowerSeries.one(max(precision, 0), f)}, 0, True
    work = []
    for g in gens:
        g = g.truncate(precision)
        c0 = g.constant_term()
        if c0:
            g = g - c0
        if not g.is_zero():
            work.append(g)
    limit = precision + 1 if ideal is None else ideal
    certified = ideal is not None
    reps: dict[int, PowerSeries] = {0: PowerSeries.one(precision, f)}
    if not work:
        return reps, limit, certified
    m = min(g.order() for g in work)
    gen_orders = [(g.order(), g) for g in work]
    heap = [(0, 0)]
    while heap:
        e, _ = heapq.heappop(heap)
        if e >= limit or e not in reps:
            continue
        r = reps[e]
        for og, g in gen_orders:
            if e + og >= limit:
                continue
            h = r * g
            while not h.is_zero():
                o = h.order()
                if o >= limit or o not in reps:
                    break
                h = h - reps[o].scale(h.leading_coefficient())
            if h.is_zero():
                continue
            o = h.order()
            if o >= limit:
                continue
            reps[o] = _monic(h)
            heapq.heappush(heap, (o, len(reps)))
            start = _run_start(reps.keys(), m, limit)
            if start is not None and (not certified or start < limit):
                # every order from ``start`` on is achieved, so work modulo t^start
                certified = True
                limit = start
                for k in [k for k in reps if k >= limit]:
                    del reps[k]
                for k in reps:
                    reps[k] = reps[k].truncate(limit - 1)
                gen_orders = [(og2, g2.truncate(limit - 1)) for og2, g2 in gen_orders
                              if og2 < limit]
                break
    return reps, limit, certified


def _basis_from(reps, limit, field_, report_precision) -> OrderBasis:
    c = _conductor_below(reps, limit)
    reps = {e: r.truncate(c - 1) for e, r in reps.items() if e < c}
    achieved = tuple(e for e in range(report_precision + 1) if e >= c or e in reps)
    return OrderBasis(field_, report_precision, c, reps, achieved)


def _check_gens(gens: Sequence[PowerSeries]) -> list[PowerSeries]:
    gens = list(gens)
    if not gens:
        raise InvalidArgumentError("a ring needs at least one generator")
    f = gens[0].field
    if any(g.field != f for g in gens):
        raise InvalidArgumentError("generators must share one field")
    if all(g.truncate(g.precision).is_zero() or g.order() == 0 and len(g.coefficients) == 1
           for g in gens):
        raise InvalidArgumentError("generators are constant up to precision")
    return gens


def ring_order_basis(gens: Sequence[PowerSeries], precision: int = DEFAULT_PRECISION) -> OrderBasis:
    """``W(H)`` and triangular representatives for ``H = k[[gens]]``.

    Saturation runs at increasing working precision (doubling up to
    ``precision``) until a run of achieved orders as long as the
    multiplicity certifies cofiniteness.
    """
    gens = _check_gens(gens)
    precision = min([precision] + [g.precision for g in gens])
    work = min(_START_PRECISION, precision)
    while True:
        reps, limit, certified = _saturate(gens, work, None)
        if certified:
            return _basis_from(reps, limit, gens[0].field, precision)
        if work >= precision:
            break
        work = min(2 * work, precision)
    nu = 0
    for e in reps:
        nu = gcd(nu, e)
    if nu > 1:
        raise NotNormalizedError(
            f"achieved orders have gcd {nu}; compress exponents or reparameterize", nu)
    raise PrecisionError(
        f"cannot certify cofiniteness of W(H) at precision {precision}; try --prec {2 * precision}",
        precision)


@dataclass(frozen=True)
class ChainLevel:
    multiplicity: int
    pivot: PowerSeries
    basis: OrderBasis

    def to_json(self) -> dict:
        return {
            "multiplicity": self.multiplicity,
            "pivot": self.pivot.to_json(),
            "achieved_orders": [e for e in self.basis.achieved if e <= self.basis.conductor],
            "conductor": self.basis.conductor,
        }


@dataclass(frozen=True)
class ArfClosureChain:
    """Level rings ``H = R_0, R_1, ...`` with ``R_{h+1} = [I_m(R_h)]``.

    ``*R_h = k + pivot_h * (*R_{h+1})``; the closure orders are the partial
    sums of the level multiplicities.
    """

    levels: tuple[ChainLevel, ...]
    precision: int

    @property
    def field(self) -> FieldSpec:
        return self.levels[0].basis.field

    @property
    def multiplicity_sequence(self) -> MultiplicitySequence:
        return MultiplicitySequence(tuple(lv.multiplicity for lv in self.levels))

    def sub_chain(self, h: int) -> ArfClosureChain:
        if not 0 <= h < len(self.levels):
            raise InvalidArgumentError(f"level {h} out of range (chain has {len(self.levels)})")
        return ArfClosureChain(self.levels[h:], self.precision)

    def closure_semigroup(self) -> NumericalSemigroup:
        """``W(*H)``."""
        return msq_to_semigroup(self.multiplicity_sequence)

    @property
    def closure_conductor(self) -> int:
        return self.closure_semigroup().conductor

    def closure_reps(self) -> dict[int, PowerSeries]:
        """Elements of ``*H``, one per closure order below the closure conductor.

        Built as ``1`` plus ``pivot * (reps of the next level's closure)``;
        each is known modulo ``t^c`` for the closure conductor ``c`` and
        returned at precision ``c - 1``.
        """
        reps: dict[int, PowerSeries] = {}
        conductor = 0
        for lv in reversed(self.levels):
            m = lv.multiplicity
            new_c = 0 if m == 1 else m + conductor
            if new_c == 0:
                reps, conductor = {}, 0
                continue
            p = new_c - 1
            pivot = lv.pivot.lift(max(lv.pivot.precision, p)).truncate(p)
            nxt = {0: PowerSeries.one(max(conductor - 1, 0), self.field)}
            nxt.update(reps)
            out = {0: PowerSeries.one(p, self.field)}
            for e, r in nxt.items():
                if m + e < new_c:
                    out[m + e] = pivot * r.lift(p)
            reps, conductor = out, new_c
        if not reps:
            reps = {}
        return reps

    def closure_rep(self, e: int, precision: int | None = None) -> PowerSeries:
        c = self.closure_conductor
        p = c - 1 if precision is None else precision
        if e >= c:
            return PowerSeries.monomial(e, max(p, e), self.field)
        reps = self.closure_reps()
        if e not in reps:
            raise InvalidArgumentError(f"order {e} is not in W(*H)")
        return reps[e].lift(p)

    def to_json(self) -> dict:
        cs = self.closure_semigroup()
        return {
            "levels": [lv.to_json() for lv in self.levels],
            "multiplicities": self.multiplicity_sequence.to_json(),
            "closure_orders": cs.to_json(),
            "conductor": cs.conductor,
        }


def _full_basis(f: FieldSpec, precision: int) -> OrderBasis:
    return OrderBasis(f, precision, 0, {}, tuple(range(precision + 1)))


def ring_arf_closure(gens: Sequence[PowerSeries], precision: int = DEFAULT_PRECISION) -> ArfClosureChain:
    """Level-by-level Arf closure of ``k[[gens]]``."""
    basis = ring_order_basis(gens, precision)
    return _chain_from_basis(basis, precision)


def _chain_from_basis(basis: OrderBasis, precision: int) -> ArfClosureChain:
    f = basis.field
    levels = []
    while True:
        m = basis.multiplicity
        c = basis.conductor
        if c == 0:
            pivot = PowerSeries.monomial(1, max(precision, 1), f)
            levels.append(ChainLevel(1, pivot, basis))
            break
        pivot = basis.rep(m, max(c - 1, m))
        levels.append(ChainLevel(m, pivot, basis))
        ideal = c - m
        if ideal <= 1:
            basis = _full_basis(f, precision)
            continue
        quotients = [series_div(basis.rep(e), pivot.truncate(c - 1)) for e in sorted(basis.reps)
                     if e >= m]
        reps, limit, _ = _saturate(quotients, ideal - 1, ideal)
        basis = _basis_from(reps, limit, f, precision)
    return ArfClosureChain(tuple(levels), precision)


def closure_membership(x: PowerSeries, chain: ArfClosureChain) -> bool:
    """Decide ``x in *H`` by triangular reduction against the closure reps.

    Raises :class:`IndeterminateMembershipError` when ``x`` reduces to zero
    only up to a precision below the closure conductor.
    """
    if x.field != chain.field:
        raise InvalidArgumentError("field mismatch")
    w = chain.closure_semigroup()
    c = w.conductor
    reps = chain.closure_reps()
    y = x.truncate(max(c - 1, 0))
    while not y.is_zero():
        o = y.order()
        if o >= c:
            return True
        if o not in w:
            return False
        y = y - reps[o].scale(y.leading_coefficient())
    if y.precision >= c - 1:
        return True
    raise IndeterminateMembershipError(
        f"x vanishes up to t^{y.precision} but the closure conductor is {c}")


# -- bases ---------------------------------------------------------------------

@dataclass(frozen=True)
class Base:
    elements: tuple[PowerSeries, ...]
    characters: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.elements)

    def to_json(self) -> dict:
        return {
            "base_characters": list(self.characters),
            "dimension": self.dimension,
            "elements": [s.to_text() for s in self.elements],
        }


def _rewrite(x: PowerSeries, T: PowerSeries, nu: int) -> PowerSeries | None:
    """Express ``x`` as a series in ``T`` (``ord T = nu``); None if ``x`` is not in k[[T]]."""
    f = x.field
    prec = min(x.precision, T.precision)
    x = x.truncate(prec)
    lt = T.leading_coefficient()
    out = {}
    power = PowerSeries.one(prec, f)
    powers = [power]
    y = x
    while not y.is_zero():
        o = y.order()
        if o % nu:
            return None
        j = o // nu
        while len(powers) <= j:
            powers.append(powers[-1] * T)
        c = y.leading_coefficient() * f.inv(powers[j].leading_coefficient())
        if f.characteristic:
            c %= f.characteristic
        out[j] = c
        y = y - powers[j].scale(c)
    del lt
    return PowerSeries(out, prec // nu, f)


@dataclass(frozen=True)
class _SubClosure:
    """Arf closure of k[[X_1..X_r]], possibly inside k[[T]] with ``ord T = nu``."""

    chain: ArfClosureChain
    nu: int
    uniformizer: PowerSeries | None

    def orders(self) -> NumericalSemigroup:
        return self.chain.closure_semigroup()

    def contains_order(self, e: int) -> bool:
        return e % self.nu == 0 and e // self.nu in self.orders()

    def contains(self, x: PowerSeries) -> bool:
        if self.nu == 1:
            return closure_membership(x, self.chain)
        y = _rewrite(x, self.uniformizer, self.nu)
        if y is None:
            return False
        return closure_membership(y, self.chain)


def _sub_closure(elements: Sequence[PowerSeries], precision: int) -> _SubClosure:
    try:
        return _SubClosure(ring_arf_closure(elements, precision), 1, None)
    except NotNormalizedError as exc:
        nu = exc.nu
    reps, _, _ = _saturate(list(elements), precision, None)
    orders = sorted(reps)
    pair = next(((q, q + nu) for q in orders if q + nu in reps), None)
    if pair is None:
        raise PrecisionError("cannot find a uniformizer at this precision", precision)
    T = series_div(reps[pair[1]], reps[pair[0]])
    rewritten = [_rewrite(x, T, nu) for x in elements]
    if any(r is None for r in rewritten):
        raise PrecisionError("generators do not rewrite in the uniformizer", precision)
    p = min(r.precision for r in rewritten)
    return _SubClosure(ring_arf_closure(rewritten, p), nu, T)


def in_generated_closure(x: PowerSeries, elements: Sequence[PowerSeries],
                         precision: int = DEFAULT_PRECISION) -> bool:
    """Is ``x`` in the Arf closure of k[[elements]]?  The elements' orders may share a gcd."""
    return _sub_closure(list(elements), precision).contains(x)


def ring_base(chain: ArfClosureChain, level: int = 0) -> Base:
    """Greedy base of the Arf ring ``*H_level``.

    ``X_1`` is the level pivot; each next element is a closure rep of the
    smallest order of ``W(*H)`` not yet achieved by the Arf closure of the
    ring the earlier elements generate.
    """
    if level:
        chain = chain.sub_chain(level)
    target = chain.closure_semigroup()
    c = target.conductor
    work = chain.precision
    first = chain.levels[0].pivot
    elements = [first.lift(work)]
    while True:
        sub = _sub_closure(elements, work)
        top = max(c, sub.nu * sub.orders().conductor) + 1
        missing = [e for e in range(1, top + 1) if e in target and not sub.contains_order(e)]
        if not missing:
            break
        e = missing[0]
        x = chain.closure_rep(e, work)
        if sub.contains(x):
            raise IndeterminateMembershipError(
                f"closure rep of order {e} unexpectedly lies in the sub-closure")
        elements.append(x)
    return Base(tuple(elements), tuple(x.order() for x in elements))


def ring_characters(chain: ArfClosureChain) -> tuple[int, ...]:
    """Characters of the ring: those of ``W(*H)``."""
    return arf_characters(chain.closure_semigroup())


def embedding_dimension(gens: Sequence[PowerSeries], precision: int = DEFAULT_PRECISION) -> int:
    return ring_base(ring_arf_closure(gens, precision)).dimension


def level_base_characters(chain: ArfClosureChain, h: int) -> tuple[int, ...]:
    """Base characters of the level ring ``*H_h``."""
    return ring_base(chain, h).characters


# -- synthesis -----------------------------------------------------------------

def synthesize_monomial_branch(chi: Iterable[int], precision: int = DEFAULT_PRECISION,
                               field_: FieldSpec | None = None) -> Branch:
    chi = check_characters(chi)
    f = field_ or FieldSpec.rationals()
    if chi[-1] > precision:
        raise PrecisionError(f"character {chi[-1]} exceeds precision {precision}", precision)
    return Branch(tuple(PowerSeries.monomial(x, precision, f) for x in chi))


@dataclass(frozen=True)
class Realization:
    requested: tuple[int, ...]
    branch: Branch
    closure_characters: tuple[int, ...]
    recomputed: tuple[int, ...]

    @property
    def subset(self) -> bool:
        return set(self.recomputed) <= set(self.requested)

    @property
    def reproduces(self) -> bool:
        return self.recomputed == self.requested

    @property
    def consistent(self) -> bool:
        """Recomputed characters equal those of the Arf closure of ``<chi>``."""
        return self.recomputed == self.closure_characters

    def to_json(self) -> dict:
        return {
            "requested": list(self.requested),
            "branch": self.branch.to_json(),
            "closure_characters": list(self.closure_characters),
            "recomputed_characters": list(self.recomputed),
            "subset": self.subset,
            "reproduces": self.reproduces,
        }


def realize_characters(chi: Iterable[int], precision: int = DEFAULT_PRECISION,
                       field_: FieldSpec | None = None) -> Realization:
    """Build the monomial branch on ``chi`` and recompute its characters."""
    chi = check_characters(chi)
    b = synthesize_monomial_branch(chi, precision, field_)
    closure_chars = arf_characters(arf_closure(sg_from_generators(chi)))
    return Realization(chi, b, closure_chars, branch_characters(b))


__all__ = [
    "OrderBasis",
    "ChainLevel",
    "ArfClosureChain",
    "Base",
    "Realization",
    "ring_order_basis",
    "ring_arf_closure",
    "closure_membership",
    "ring_base",
    "in_generated_closure",
    "ring_characters",
    "embedding_dimension",
    "level_base_characters",
    "synthesize_monomial_branch",
    "realize_characters",
    "ABOVE_PRECISION",
]
