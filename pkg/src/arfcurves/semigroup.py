"""Numerical semigroups, Arf closures, multiplicity sequences and characters."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from . import kernels
from .errors import InputError, InvalidArgumentError, NotArfError


@dataclass(frozen=True)
class NumericalSemigroup:
    """A cofinite additive submonoid of N, stored after gcd normalization.

    ``nu`` records the factor removed by normalization: the semigroup the
    caller started from is ``nu * self``.  ``elements`` lists the members
    in ``[0, conductor]``.
    """

    generators: tuple[int, ...]
    conductor: int
    elements: tuple[int, ...]
    nu: int = 1
    _table: bytes = field(default=b"", repr=False, compare=False)

    @classmethod
    def from_table(cls, table, conductor: int, nu: int = 1) -> NumericalSemigroup:
        table = bytes(table)
        elems = tuple(x for x in range(conductor) if table[x]) + (conductor,)
        if conductor == 0:
            elems = (0,)
        gens = tuple(kernels.minimal_generators(table, conductor))
        return cls(gens, conductor, elems, nu, table)

    @classmethod
    def from_members(cls, members: Iterable[int], conductor: int) -> NumericalSemigroup:
        """Build from an explicit member list below ``conductor`` (caller guarantees closure)."""
        table = bytearray(conductor)
        for x in members:
            if x < conductor:
                table[x] = 1
        if conductor:
            table[0] = 1
        return cls.from_table(table, conductor)

    def __contains__(self, x: int) -> bool:
        return x >= 0 and (x >= self.conductor or bool(self._table[x]))

    @property
    def multiplicity(self) -> int:
        """Smallest positive member."""
        return self.elements[1] if self.conductor else 1

    def members_up_to(self, n: int) -> list[int]:
        return [x for x in range(n + 1) if x in self]

    def gaps(self) -> list[int]:
        return [x for x in range(self.conductor) if x not in self]

    def is_full(self) -> bool:
        return self.conductor == 0

    def __eq__(self, other):
        if not isinstance(other, NumericalSemigroup):
            return NotImplemented
        return (self.conductor, self.elements, self.nu) == (other.conductor, other.elements, other.nu)

    def __hash__(self):
        return hash((self.conductor, self.elements, self.nu))

    def issubset(self, other: NumericalSemigroup) -> bool:
        return all(x in other for x in range(max(self.conductor, other.conductor) + 1) if x in self)

    def __str__(self):
        if self.conductor == 0:
            return "N"
        return "{" + ",".join(map(str, self.elements)) + ",...}"

    def to_json(self) -> dict:
        return {
            "generators": list(self.generators),
            "conductor": self.conductor,
            "elements": list(self.elements),
            "nu": self.nu,
        }


@dataclass(frozen=True)
class MultiplicitySequence:
    """Non-increasing, eventually-1 sequence of positive integers.

    Trailing ones are implicit; the canonical ``head`` is the entries
    greater than one followed by a single 1 (``(1,)`` for a smooth branch).
    """

    head: tuple[int, ...]

    def __post_init__(self):
        h = tuple(int(x) for x in self.head)
        if not h or any(x < 1 for x in h):
            raise InvalidArgumentError("multiplicities must be positive integers")
        if any(a < b for a, b in zip(h, h[1:])):
            raise InvalidArgumentError(f"multiplicity sequence {list(h)} is not non-increasing")
        while h and h[-1] == 1:
            h = h[:-1]
        object.__setattr__(self, "head", h + (1,))

    def at(self, i: int) -> int:
        """Entry ``m_{i+1}`` (0-based), with the implicit trailing ones."""
        return self.head[i] if i < len(self.head) else 1

    def __len__(self):
        return len(self.head)

    def __iter__(self):
        return iter(self.head)

    def partial_sums(self, extra: int = 0) -> list[int]:
        """``[0, m_1, m_1+m_2, ...]`` through the head plus ``extra`` more ones."""
        out = [0]
        for i in range(len(self.head) + extra):
            out.append(out[-1] + self.at(i))
        return out

    @property
    def conductor(self) -> int:
        """Sum of the entries greater than one."""
        return sum(self.head[:-1])

    def is_valid(self) -> bool:
        """Every ``m_j`` equals ``m_{j+1} + ... + m_{j+k}`` for some ``k >= 1``.

        This makes the partial sums an Arf semigroup.  Additive closure of
        the partial sums alone is weaker: ``[5,3,2,2,1]`` passes it.
        """
        for j, mj in enumerate(self.head[:-1]):
            total, i = 0, j + 1
            while total < mj:
                total += self.at(i)
                i += 1
            if total != mj:
                return False
        return True

    def partial_sums_closed(self) -> bool:
        """Partial-sum set closed under addition (checked up to twice the head sum)."""
        c = self.conductor
        sums = set(self.partial_sums())
        members = [x for x in sums if x < c]
        return all(a + b >= c or a + b in sums for a in members for b in members)

    def __str__(self):
        return "[" + ",".join(map(str, self.head)) + "]"

    def to_json(self) -> list[int]:
        return list(self.head)


# -- construction ------------------------------------------------------------

def parse_int_list(text: str) -> list[int]:
    """Parse ``"3,7"`` (brackets and whitespace tolerated)."""
    s = text.strip().strip("[]{}()")
    try:
        vals = [int(x) for x in s.replace(" ", ",").split(",") if x.strip()]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None
    if not vals:
        raise InputError("empty integer list")
    return vals


def sg_from_generators(gens: Iterable[int]) -> NumericalSemigroup:
    """Semigroup generated by ``gens``, gcd-normalized with ``nu`` recorded."""
    gens = [int(g) for g in gens]
    if not gens:
        raise InvalidArgumentError("empty generator set")
    if any(g <= 0 for g in gens):
        raise InvalidArgumentError("generators must be positive integers")
    nu = 0
    for g in gens:
        nu = gcd(nu, g)
    table, c = kernels.generate([g // nu for g in gens])
    return NumericalSemigroup.from_table(table, c, nu)


def sg_normalize(s: NumericalSemigroup | Iterable[int]) -> tuple[NumericalSemigroup, int]:
    """Return the gcd-1 semigroup and the removed factor ``nu``."""
    if not isinstance(s, NumericalSemigroup):
        s = sg_from_generators(s)
    if s.nu == 1:
        return s, 1
    return NumericalSemigroup(s.generators, s.conductor, s.elements, 1, s._table), s.nu


def _require_normalized(s: NumericalSemigroup):
    if s.nu != 1:
        raise InvalidArgumentError(f"semigroup is not normalized (nu={s.nu}); call sg_normalize")


def sg_is_arf(s: NumericalSemigroup) -> bool:
    _require_normalized(s)
    return bool(kernels.is_arf(s._table, s.conductor))


def sg_arf_closure(s: NumericalSemigroup) -> MultiplicitySequence:
    """Multiplicity sequence whose partial sums form the Arf closure of ``s``.

    Iterates the semigroup blow-up ``S -> <S_m - m>`` until it reaches N.
    """
    _require_normalized(s)
    return MultiplicitySequence(tuple(kernels.multiplicities(s._table, s.conductor)) + (1,))


def arf_closure(s: NumericalSemigroup) -> NumericalSemigroup:
    """The Arf closure as a semigroup."""
    return msq_to_semigroup(sg_arf_closure(s))


def msq_to_semigroup(m: MultiplicitySequence | Sequence[int]) -> NumericalSemigroup:
    if not isinstance(m, MultiplicitySequence):
        m = MultiplicitySequence(tuple(m))
    if not m.is_valid():
        raise InvalidArgumentError(f"partial sums of {m} are not closed under addition")
    return NumericalSemigroup.from_members(m.partial_sums(), m.conductor)


def proximity_counts(m: MultiplicitySequence, length: int | None = None) -> list[int]:
    """``prox(i)`` = #{j < i : m_{j+1} + ... + m_i <= m_j}, listed for i = 1..length.

    The default length runs far enough past the head that the values have
    settled to the constant tail of a smooth branch.
    """
    if length is None:
        length = len(m.head) + m.head[0] + 2
    vals = [m.at(i) for i in range(length)]
    out = []
    for i in range(length):
        count = 0
        budget = 0
        for j in range(i - 1, -1, -1):
            budget += vals[j + 1]
            if budget <= vals[j]:
                count += 1
        out.append(count)
    return out


def leading_points(m: MultiplicitySequence) -> list[int]:
    """1-based indices ``i`` with ``prox(i) < prox(i+1)``."""
    prox = proximity_counts(m)
    return [i + 1 for i in range(len(prox) - 1) if prox[i] < prox[i + 1]]


def arf_characters(s: NumericalSemigroup) -> tuple[int, ...]:
    """Characters of an Arf semigroup: multiplicity sums at the leading points."""
    if not sg_is_arf(s):
        raise NotArfError(f"{s} is not an Arf semigroup")
    if s.is_full():
        return (1,)
    m = sg_arf_closure(s)
    sums = m.partial_sums(extra=m.head[0] + 2)
    return tuple(sums[i] for i in leading_points(m))


def check_characters(chi: Iterable[int]) -> tuple[int, ...]:
    """Validate a character-candidate set: positive, gcd 1; returns it sorted."""
    vals = sorted(set(int(x) for x in chi))
    if not vals or vals[0] < 1:
        raise InvalidArgumentError("characters must be positive integers")
    g = 0
    for x in vals:
        g = gcd(g, x)
    if g != 1:
        raise InvalidArgumentError(f"characters {vals} have gcd {g} != 1")
    return tuple(vals)


def chars_to_multseq(chi: Iterable[int]) -> MultiplicitySequence:
    """Multiplicity sequence of the Arf closure of ``<chi>``."""
    return sg_arf_closure(sg_from_generators(check_characters(chi)))


def character_stability(chi: Iterable[int], extra: int) -> bool:
    """Adding a member of the closure to ``chi`` leaves the multiplicity sequence unchanged."""
    chi = check_characters(chi)
    base = chars_to_multseq(chi)
    if extra not in msq_to_semigroup(base):
        raise InvalidArgumentError(f"{extra} is not in the Arf closure of <{','.join(map(str, chi))}>")
    widened = sg_from_generators(chi + (extra,)).generators
    return chars_to_multseq(widened) == base
