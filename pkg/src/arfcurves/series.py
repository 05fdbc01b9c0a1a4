"""Truncated formal power series in one variable ``t`` over Q or GF(p).

A :class:`PowerSeries` stores its nonzero coefficients sparsely together
with a precision ``P``: the coefficients of ``t^0 .. t^P`` are known
exactly, nothing beyond ``P`` is.  Every operation reports the precision
of its result and never extrapolates past it.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Union

from .errors import (
    FieldMismatchError,
    InputError,
    InvalidArgumentError,
    ParseError,
    PrecisionError,
    SeriesDivisionError,
)

DEFAULT_PRECISION = 128

Scalar = Union[int, Fraction]


def _is_prime(n: int) -> bool:
    from sympy import isprime

    return bool(isprime(n))


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: the rationals (characteristic 0) or GF(p)."""

    kind: str = "rationals"
    characteristic: int = 0

    def __post_init__(self):
        if self.kind == "rationals":
            if self.characteristic != 0:
                raise InvalidArgumentError("the rationals have characteristic 0")
        elif self.kind == "prime-field":
            if self.characteristic < 2 or not _is_prime(self.characteristic):
                raise InvalidArgumentError(
                    f"characteristic {self.characteristic} is not a prime")
        else:
            raise InvalidArgumentError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls("rationals", 0)

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls("prime-field", p)

    @classmethod
    def parse(cls, selector: str) -> FieldSpec:
        """``q`` for the rationals, ``f<p>`` (e.g. ``f7``) for GF(p)."""
        s = selector.strip().lower()
        if s in ("q", "qq", "rationals"):
            return cls.rationals()
        m = re.fullmatch(r"f(\d+)", s)
        if m is None:
            raise InputError(f"bad field selector {selector!r}; use q or f<p>")
        return cls.prime(int(m.group(1)))

    @property
    def selector(self) -> str:
        return "q" if self.characteristic == 0 else f"f{self.characteristic}"

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    # scalar arithmetic -------------------------------------------------

    def scalar(self, x) -> Scalar:
        """Coerce an int or Fraction into this field."""
        p = self.characteristic
        if p == 0:
            return Fraction(x)
        x = Fraction(x)
        if x.denominator % p == 0:
            raise InvalidArgumentError(
                f"denominator of {x} is divisible by the characteristic {p}")
        return x.numerator * pow(x.denominator, -1, p) % p

    def inv(self, x: Scalar) -> Scalar:
        if x == 0:
            raise SeriesDivisionError("division by zero scalar")
        p = self.characteristic
        return 1 / Fraction(x) if p == 0 else pow(x, -1, p)

    def sqrt(self, x: Scalar) -> Scalar:
        """Deterministic square root; raises if ``x`` is not a square."""
        p = self.characteristic
        if p == 2:
            raise InvalidArgumentError("square roots are not supported in characteristic 2")
        if x == 0:
            raise InvalidArgumentError("square root of zero is not a unit")
        if p == 0:
            x = Fraction(x)
            if x < 0:
                raise InvalidArgumentError(f"{x} is not a square in QQ")
            rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
            if rn * rn != x.numerator or rd * rd != x.denominator:
                raise InvalidArgumentError(f"{x} is not a square in QQ")
            return Fraction(rn, rd)
        from sympy.ntheory import sqrt_mod

        r = sqrt_mod(int(x), p)
        if r is None:
            raise InvalidArgumentError(f"{x} is not a square in GF({p})")
        return min(r, p - r)

    def render(self, x: Scalar) -> str:
        """Exact text form: ``"p/q"`` or an integer string."""
        if self.characteristic:
            return str(int(x))
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


QQ = FieldSpec.rationals()


class Order(enum.Enum):
    """Marker for a series that is zero up to its precision."""

    ABOVE_PRECISION = "above-precision"

    def __repr__(self):
        return "ABOVE_PRECISION"


ABOVE_PRECISION = Order.ABOVE_PRECISION


class PowerSeries:
    """Immutable truncated element of k[[t]].

    ``coefficients`` maps exponents in ``[0, precision]`` to nonzero field
    scalars; a missing exponent is a zero coefficient.
    """

    __slots__ = ("field", "precision", "_c")

    def __init__(self, coefficients: Mapping[int, Scalar] | Iterable[tuple[int, Scalar]] = (),
                 precision: int = DEFAULT_PRECISION, field: FieldSpec = QQ):
        if precision < 0:
            raise InvalidArgumentError("precision must be nonnegative")
        items = coefficients.items() if isinstance(coefficients, Mapping) else coefficients
        c: dict[int, Scalar] = {}
        for e, v in items:
            if e < 0:
                raise InvalidArgumentError(f"negative exponent {e}")
            if e > precision:
                raise PrecisionError(
                    f"exponent {e} exceeds precision {precision}", precision)
            v = field.scalar(v)
            if v:
                c[e] = v
        self._init(field, precision, c)

    def _init(self, field, precision, c):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "precision", precision)
        object.__setattr__(self, "_c", c)

    def __setattr__(self, name, value):
        raise AttributeError("PowerSeries is immutable")

    @classmethod
    def _raw(cls, field: FieldSpec, precision: int, c: dict[int, Scalar]) -> PowerSeries:
        # trusted constructor: c already reduced, nonzero and <= precision
        s = cls.__new__(cls)
        s._init(field, precision, c)
        return s

    @classmethod
    def monomial(cls, exponent: int, precision: int = DEFAULT_PRECISION,
                 field: FieldSpec = QQ, coefficient: Scalar = 1) -> PowerSeries:
        return cls({exponent: coefficient}, precision, field)

    @classmethod
    def one(cls, precision: int = DEFAULT_PRECISION, field: FieldSpec = QQ) -> PowerSeries:
        return cls({0: 1}, precision, field)

    @classmethod
    def zero(cls, precision: int = DEFAULT_PRECISION, field: FieldSpec = QQ) -> PowerSeries:
        return cls({}, precision, field)

    # inspection ----------------------------------------------------------

    @property
    def coefficients(self) -> Mapping[int, Scalar]:
        return MappingProxyType(self._c)

    def coeff(self, e: int) -> Scalar:
        if e > self.precision:
            raise PrecisionError(
                f"coefficient of t^{e} is beyond precision {self.precision}", self.precision)
        return self._c.get(e, self.field.scalar(0))

    def exponents(self) -> list[int]:
        return sorted(self._c)

    def order(self) -> int | Order:
        return min(self._c) if self._c else ABOVE_PRECISION

    def is_zero(self) -> bool:
        """True when every coefficient up to the precision vanishes."""
        return not self._c

    def leading_coefficient(self) -> Scalar:
        if not self._c:
            raise SeriesDivisionError("series is zero up to precision")
        return self._c[min(self._c)]

    def constant_term(self) -> Scalar:
        return self._c.get(0, self.field.scalar(0))

    # precision management --------------------------------------------------

    def truncate(self, precision: int) -> PowerSeries:
        if precision >= self.precision:
            return self
        if precision < 0:
            raise PrecisionError("precision exhausted", precision)
        return PowerSeries._raw(self.field, precision,
                                {e: v for e, v in self._c.items() if e <= precision})

    def lift(self, precision: int) -> PowerSeries:
        """Declare the coefficients between the old and new precision to be zero.

        Only sound when the caller works modulo an ideal containing every
        series of order > ``self.precision`` (a conductor ideal).
        """
        if precision <= self.precision:
            return self.truncate(precision)
        return PowerSeries._raw(self.field, precision, self._c)

    # arithmetic -----------------------------------------------------------

    def _check(self, other: PowerSeries):
        if self.field != other.field:
            raise FieldMismatchError(f"cannot combine series over {self.field} and {other.field}")

    def _coerce(self, other) -> PowerSeries | None:
        if isinstance(other, PowerSeries):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return PowerSeries({0: other}, self.precision, self.field)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return _add(self, other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return _add(self, other, -1)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return _add(other, self, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> PowerSeries:
        """Multiply by a field scalar."""
        f = self.field
        c = f.scalar(c)
        if not c:
            return PowerSeries._raw(f, self.precision, {})
        p = f.characteristic
        if p:
            return PowerSeries._raw(f, self.precision, {e: v * c % p for e, v in self._c.items()})
        return PowerSeries._raw(f, self.precision, {e: v * c for e, v in self._c.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        self._check(other)
        return _mul(self, other, min(self.precision, other.precision))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(self.field.inv(self.field.scalar(other)))
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return series_div(self, other)

    def __pow__(self, n: int) -> PowerSeries:
        if n < 0:
            raise InvalidArgumentError("negative powers are not supported")
        result = PowerSeries.one(self.precision, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_exact(self, other: PowerSeries) -> PowerSeries:
        """Product with the sharp precision ``min(Pa + ord b, Pb + ord a)``."""
        self._check(other)
        oa, ob = self.order(), other.order()
        pa = self.precision + (ob if ob is not ABOVE_PRECISION else other.precision + 1)
        pb = other.precision + (oa if oa is not ABOVE_PRECISION else self.precision + 1)
        return _mul(self, other, min(pa, pb))

    def compose(self, g: PowerSeries) -> PowerSeries:
        """Substitute ``t -> g(t)``; ``g`` must have positive order."""
        self._check(g)
        og = g.order()
        if og is ABOVE_PRECISION or og < 1:
            raise InvalidArgumentError("substituted series must have positive order")
        prec = min(self.precision, g.precision)
        g = g.truncate(prec)
        result = PowerSeries._raw(self.field, prec, {})
        # Horner from the top exponent down
        for e in range(max(self._c, default=0), -1, -1):
            result = result * g
            c = self._c.get(e)
            if c:
                result = _add(result, PowerSeries._raw(self.field, prec, {0: c}), 1)
        return result

    # comparison and rendering ---------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return (self.field == other.field and self.precision == other.precision
                and self._c == other._c)

    def agrees_with(self, other: PowerSeries, precision: int | None = None) -> bool:
        """Coefficientwise equality up to ``precision`` (default: the common one)."""
        self._check(other)
        p = min(self.precision, other.precision) if precision is None else precision
        return self.truncate(p)._c == other.truncate(p)._c

    def __hash__(self):
        return hash((self.field, self.precision, frozenset(self._c.items())))

    def to_text(self) -> str:
        return format_series(self)

    def __str__(self):
        return f"{format_series(self)} + O(t^{self.precision + 1})"

    def __repr__(self):
        return f"PowerSeries({format_series(self)!r}, precision={self.precision}, field={self.field})"

    def to_json(self) -> dict:
        f = self.field
        return {
            "text": format_series(self),
            "precision": self.precision,
            "coefficients": {str(e): f.render(v) for e, v in sorted(self._c.items())},
        }


def _add(a: PowerSeries, b: PowerSeries, sign: int) -> PowerSeries:
    prec = min(a.precision, b.precision)
    p = a.field.characteristic
    c = {e: v for e, v in a._c.items() if e <= prec}
    for e, v in b._c.items():
        if e > prec:
            continue
        w = c.get(e, 0) + v if sign > 0 else c.get(e, 0) - v
        if p:
            w %= p
        if w:
            c[e] = w
        else:
            c.pop(e, None)
    return PowerSeries._raw(a.field, prec, c)


def _mul(a: PowerSeries, b: PowerSeries, prec: int) -> PowerSeries:
    p = a.field.characteristic
    bi = sorted(b._c.items())
    acc: dict[int, Scalar] = {}
    for i, x in a._c.items():
        lim = prec - i
        if lim < 0:
            continue
        for j, y in bi:
            if j > lim:
                break
            k = i + j
            acc[k] = acc.get(k, 0) + x * y
    if p:
        c = {k: v % p for k, v in acc.items() if v % p}
    else:
        c = {k: v for k, v in acc.items() if v}
    return PowerSeries._raw(a.field, prec, c)


# -- named operations -----------------------------------------------------------

def series_order(s: PowerSeries) -> int | Order:
    """Minimal exponent with nonzero coefficient, or ``ABOVE_PRECISION``."""
    return s.order()


def series_div(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Exact quotient ``q`` with ``q*b == a`` up to ``min(Pa, Pb) - ord b``."""
    a._check(b)
    k = b.order()
    if k is ABOVE_PRECISION:
        raise SeriesDivisionError("division by a series that is zero up to precision")
    ka = a.order()
    if ka is not ABOVE_PRECISION and ka < k:
        raise SeriesDivisionError(f"ord(divisor)={k} exceeds ord(dividend)={ka}")
    prec = min(a.precision, b.precision) - k
    if prec < 1:
        raise PrecisionError(f"quotient precision {prec} < 1", prec)
    f = a.field
    p = f.characteristic
    if ka is ABOVE_PRECISION:
        return PowerSeries._raw(f, prec, {})
    bc = b._c
    inv0 = f.inv(bc[k])
    tail = sorted((e - k, v) for e, v in bc.items() if e > k)
    q: list = [0] * (prec + 1)
    ac = a._c
    for n in range(prec + 1):
        s = ac.get(n + k, 0)
        for i, v in tail:
            if i > n:
                break
            qi = q[n - i]
            if qi:
                s -= v * qi
        s = s * inv0
        if p:
            s %= p
        q[n] = s
    return PowerSeries._raw(f, prec, {n: v for n, v in enumerate(q) if v})


def series_sqrt_unit(u: PowerSeries) -> PowerSeries:
    """Square root of a unit; the constant term is the canonical root."""
    f = u.field
    if f.characteristic == 2:
        raise InvalidArgumentError("square roots are not supported in characteristic 2")
    u0 = u.constant_term()
    if not u0:
        raise InvalidArgumentError("constant term is zero; not a unit")
    s0 = f.sqrt(u0)
    p = f.characteristic
    inv2s0 = f.inv(f.scalar(2) * s0 % p if p else 2 * s0)
    s = [s0] + [0] * u.precision
    for n in range(1, u.precision + 1):
        acc = u._c.get(n, 0)
        for i in range(1, n):
            if s[i] and s[n - i]:
                acc -= s[i] * s[n - i]
        v = acc * inv2s0
        s[n] = v % p if p else v
    return PowerSeries._raw(f, u.precision, {n: v for n, v in enumerate(s) if v})


def compress_exponents(s: PowerSeries, nu: int) -> PowerSeries:
    """Substitute ``t = T^(1/nu)``: exponent ``e`` becomes ``e / nu``."""
    if nu < 1:
        raise InvalidArgumentError("nu must be positive")
    bad = [e for e in s._c if e % nu]
    if bad:
        raise InvalidArgumentError(f"exponent {min(bad)} is not divisible by {nu}")
    return PowerSeries._raw(s.field, s.precision // nu, {e // nu: v for e, v in s._c.items()})


def expand_exponents(s: PowerSeries, nu: int) -> PowerSeries:
    """Inverse of :func:`compress_exponents`: substitute ``T = t^nu``."""
    return PowerSeries._raw(s.field, s.precision * nu, {e * nu: v for e, v in s._c.items()})


def exponent_gcd(series: Iterable[PowerSeries]) -> int:
    """gcd of all exponents carrying a nonzero coefficient (0 if none)."""
    g = 0
    for s in series:
        for e in s._c:
            g = math.gcd(g, e)
    return g


# -- text form -----------------------------------------------------------------

def format_series(s: PowerSeries) -> str:
    if not s._c:
        return "0"
    f = s.field
    out = []
    for e in sorted(s._c):
        v = s._c[e]
        if f.characteristic == 0:
            neg = v < 0
            mag = -v if neg else v
        else:
            neg, mag = False, v
        if mag == 1 and e:
            coef = ""
        elif f.characteristic == 0 and Fraction(mag).denominator != 1:
            coef = f"({f.render(mag)})"
        else:
            coef = f.render(mag)
        mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
        term = coef + ("*" if coef and mono else "") + mono
        if not out:
            out.append(("-" if neg else "") + term)
        else:
            out.append((" - " if neg else " + ") + term)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|(\()|(\))|(/)|(\*)|(\^)|(\+)|(-)|(t)|(\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    n = len(text)
    kinds = ("int", "(", ")", "/", "*", "^", "+", "-", "t", "bad")
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        for kind, g in zip(kinds, m.groups()):
            if g is not None:
                start = m.start(m.lastindex)
                if kind == "bad":
                    raise ParseError(f"unexpected character {g!r}", start, text)
                toks.append((kind, g, start))
                break
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind: str):
        tok = self.toks[self.i]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", tok[2], self.text)
        self.i += 1
        return tok

    def parse(self) -> list[tuple[int, Fraction, int]]:
        terms = []
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take(self.peek()[0])[0] == "-" else 1
        terms.append(self.term(sign))
        while self.peek()[0] in ("+", "-"):
            sign = -1 if self.take(self.peek()[0])[0] == "-" else 1
            terms.append(self.term(sign))
        self.take("end")
        return terms

    def term(self, sign: int) -> tuple[int, Fraction, int]:
        kind, _, pos = self.peek()
        coef = Fraction(1)
        if kind in ("int", "("):
            coef = self.coefficient()
            if self.peek()[0] != "*":
                return 0, sign * coef, pos
            self.take("*")
        self.take("t")
        e = 1
        if self.peek()[0] == "^":
            self.take("^")
            e = int(self.take("int")[1])
        return e, sign * coef, pos

    def coefficient(self) -> Fraction:
        if self.peek()[0] == "int":
            return Fraction(int(self.take("int")[1]))
        self.take("(")
        neg = False
        if self.peek()[0] == "-":
            self.take("-")
            neg = True
        num = int(self.take("int")[1])
        den = 1
        if self.peek()[0] == "/":
            self.take("/")
            tok = self.take("int")
            den = int(tok[1])
            if den == 0:
                raise ParseError("zero denominator", tok[2], self.text)
        self.take(")")
        return Fraction(-num if neg else num, den)


def parse_series(text: str, field: FieldSpec = QQ,
                 precision: int = DEFAULT_PRECISION) -> PowerSeries:
    """Parse e.g. ``"t^4 - (1/2)*t^6"``; exponents above ``precision`` are rejected."""
    if precision < 1:
        raise InvalidArgumentError("precision must be positive")
    terms = _Parser(text).parse()
    acc: dict[int, Fraction] = {}
    for e, c, pos in terms:
        if e > precision:
            raise PrecisionError(
                f"exponent {e} at position {pos} exceeds precision {precision}", precision)
        if field.characteristic and c.denominator % field.characteristic == 0:
            raise InvalidArgumentError(
                f"coefficient {c} at position {pos} has denominator divisible by "
                f"{field.characteristic}")
        acc[e] = acc.get(e, Fraction(0)) + c
    return PowerSeries(acc, precision, field)
