"""Pure-Python semigroup kernels (fallback for the compiled ``_ckernels``).

A numerical semigroup with gcd 1 is passed around as ``(table, c)``:
``c`` is the conductor and ``table[x]`` (``0 <= x < c``) is 1 iff ``x`` is
a member.  Every integer ``>= c`` is a member.
"""

from __future__ import annotations

from math import gcd


def generate(gens):
    """Membership table and conductor of the semigroup generated by ``gens`` (gcd 1)."""
    gens = sorted(set(int(g) for g in gens if g > 0))
    if not gens:
        raise ValueError("empty generator set")
    g = 0
    for x in gens:
        g = gcd(g, x)
    if g != 1:
        raise ValueError("generators must have gcd 1")
    m = gens[0]
    if m == 1:
        return bytearray(), 0
    table = bytearray([1])
    run = 0
    x = 0
    while run < m:
        x += 1
        member = 0
        for s in gens:
            if s > x:
                break
            if table[x - s]:
                member = 1
                break
        table.append(member)
        run = run + 1 if member else 0
    c = x - run + 1
    del table[c:]
    return table, c


def multiplicity(table, c):
    for x in range(1, c):
        if table[x]:
            return x
    return c if c else 1


def blowup(table, c):
    """One semigroup blow-up: ``S -> <S_m - m>``.  Returns ``(table', c', m)``."""
    m = multiplicity(table, c)
    if c <= m:
        return bytearray(), 0, m
    bound = c - m
    # positive elements of S_m - m below the new conductor bound act as generators
    gens = [x for x in range(1, bound) if table[x + m]]
    new = bytearray(bound)
    new[0] = 1
    for x in range(1, bound):
        if table[x + m]:
            new[x] = 1
            continue
        for s in gens:
            if s >= x:
                break
            if new[x - s]:
                new[x] = 1
                break
    c2 = bound
    while c2 > 0 and new[c2 - 1]:
        c2 -= 1
    if c2 == 1:
        c2 = 0
    del new[c2:]
    return new, c2, m


def multiplicities(table, c):
    """Blow-up multiplicities until the semigroup becomes N (final 1 excluded)."""
    out = []
    while c > 0:
        table, c, m = blowup(table, c)
        out.append(m)
    return out


def is_arf(table, c):
    def member(x):
        return x >= c or table[x]

    members = [x for x in range(c) if table[x]]
    for h in members:
        above = [a for a in members if a >= h]
        for i, a in enumerate(above):
            for b in above[i:]:
                s = a + b - h
                if s >= c:
                    break
                if not member(s):
                    return False
    return True


def minimal_generators(table, c):
    if c == 0:
        return [1]
    m = multiplicity(table, c)

    def member(x):
        return x >= c or table[x]

    out = []
    for x in range(m, c + m + 1):
        if not member(x):
            continue
        for y in range(m, x // 2 + 1):
            if member(y) and member(x - y):
                break
        else:
            out.append(x)
    return out
