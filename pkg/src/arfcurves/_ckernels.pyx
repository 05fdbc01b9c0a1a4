# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled semigroup kernels; same contract as ``_kernels_py``."""

from libc.stdlib cimport malloc, free


cdef long _gcd(long a, long b):
    while b:
        a, b = b, a % b
    return a


def generate(gens):
    cdef list gl = sorted(set(int(g) for g in gens if g > 0))
    if not gl:
        raise ValueError("empty generator set")
    cdef long g = 0, x
    for x in gl:
        g = _gcd(g, x)
    if g != 1:
        raise ValueError("generators must have gcd 1")
    cdef long m = gl[0]
    if m == 1:
        return bytearray(), 0
    cdef Py_ssize_t n = len(gl), i
    cdef long *gs = <long *> malloc(n * sizeof(long))
    for i in range(n):
        gs[i] = gl[i]
    # Frobenius bound: conductor <= (m - 1) * (max - 1) < m * max
    cdef long cap = m * gs[n - 1] + 2
    cdef bytearray table = bytearray(cap)
    cdef unsigned char[:] t = table
    t[0] = 1
    cdef long run = 0, s
    cdef unsigned char member
    x = 0
    try:
        while run < m:
            x += 1
            member = 0
            for i in range(n):
                s = gs[i]
                if s > x:
                    break
                if t[x - s]:
                    member = 1
                    break
            t[x] = member
            run = run + 1 if member else 0
    finally:
        free(gs)
    cdef long c = x - run + 1
    return table[:c], c


cpdef long multiplicity(const unsigned char[:] table, long c):
    cdef long x
    for x in range(1, c):
        if table[x]:
            return x
    return c if c else 1


def blowup(table, long c):
    cdef const unsigned char[:] t = table
    cdef long m = multiplicity(t, c)
    if c <= m:
        return bytearray(), 0, m
    cdef long bound = c - m, x, j, s, ng = 0
    cdef long *gs = <long *> malloc(bound * sizeof(long))
    for x in range(1, bound):
        if t[x + m]:
            gs[ng] = x
            ng += 1
    cdef bytearray new = bytearray(bound)
    cdef unsigned char[:] nw = new
    nw[0] = 1
    try:
        for x in range(1, bound):
            if t[x + m]:
                nw[x] = 1
                continue
            for j in range(ng):
                s = gs[j]
                if s >= x:
                    break
                if nw[x - s]:
                    nw[x] = 1
                    break
    finally:
        free(gs)
    cdef long c2 = bound
    while c2 > 0 and nw[c2 - 1]:
        c2 -= 1
    if c2 == 1:
        c2 = 0
    return new[:c2], c2, m


def multiplicities(table, long c):
    out = []
    while c > 0:
        table, c, m = blowup(table, c)
        out.append(m)
    return out


def is_arf(table, long c):
    cdef const unsigned char[:] t = table
    cdef long h, a, b, s
    for h in range(c):
        if not t[h]:
            continue
        for a in range(h, c):
            if not t[a]:
                continue
            for b in range(a, c):
                if not t[b]:
                    continue
                s = a + b - h
                if s >= c:
                    break
                if not t[s]:
                    return False
    return True


def minimal_generators(table, long c):
    if c == 0:
        return [1]
    cdef const unsigned char[:] t = table
    cdef long m = multiplicity(t, c), x, y
    cdef bint found
    out = []
    for x in range(m, c + m + 1):
        if x < c and not t[x]:
            continue
        found = False
        for y in range(m, x // 2 + 1):
            if (y >= c or t[y]) and (x - y >= c or t[x - y]):
                found = True
                break
        if not found:
            out.append(x)
    return out
