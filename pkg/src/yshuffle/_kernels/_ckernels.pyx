# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse polynomial kernels (same contract as _pykernels)."""

cdef int FIELD_BITS = 12

cdef object FIELD_MASK = (1 << FIELD_BITS) - 1


cpdef dict mul(dict a, dict b):
    cdef dict out = {}
    cdef dict t
    cdef object ma, ca, mb, cb, m, prev
    if len(a) > len(b):
        t = a
        a = b
        b = t
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = ma + mb
            prev = out.get(m)
            if prev is None:
                out[m] = ca * cb
            else:
                out[m] = prev + ca * cb
    return {m: ca for m, ca in out.items() if ca}


cpdef add_scaled(dict acc, dict a, object scale):
    cdef object m, c, prev
    for m, c in a.items():
        prev = acc.get(m)
        if prev is None:
            acc[m] = scale * c
        else:
            acc[m] = prev + scale * c


cpdef dict prune(dict a):
    cdef object m, c
    return {m: c for m, c in a.items() if c}


cpdef dict scale(dict a, object s):
    cdef object m, c
    if not s:
        return {}
    return {m: s * c for m, c in a.items()}


cdef inline object _move(object m, tuple moves):
    cdef object n = m
    cdef object e
    cdef int s, d
    cdef tuple mv
    for mv in moves:
        s = mv[0]
        d = mv[1]
        e = (m >> s) & FIELD_MASK
        if e:
            n = n + (e << d) - (e << s)
    return n


cpdef dict relabel(dict a, moves):
    cdef dict out = {}
    cdef tuple mvs = tuple(moves)
    cdef object m, c, n, prev
    for m, c in a.items():
        n = _move(m, mvs)
        prev = out.get(n)
        if prev is None:
            out[n] = c
        else:
            out[n] = prev + c
    return {m: c for m, c in out.items() if c}


cpdef relabel_accumulate(dict acc, dict a, moves, object sign):
    cdef tuple mvs = tuple(moves)
    cdef object m, c, n, prev
    for m, c in a.items():
        n = _move(m, mvs)
        prev = acc.get(n)
        if prev is None:
            acc[n] = sign * c
        else:
            acc[n] = prev + sign * c


cpdef dict split_var(dict a, int shift):
    cdef dict out = {}
    cdef dict bucket
    cdef object m, c, e, rest
    for m, c in a.items():
        e = (m >> shift) & FIELD_MASK
        rest = m - (e << shift)
        bucket = out.get(e)
        if bucket is None:
            out[e] = {rest: c}
        else:
            bucket[rest] = c
    return out


cpdef int max_field(dict a):
    cdef int best = 0
    cdef int e
    cdef object m
    for m in a:
        while m:
            e = m & FIELD_MASK
            if e > best:
                best = e
            m = m >> FIELD_BITS
    return best


cpdef int monomial_degree(object m):
    cdef int d = 0
    while m:
        d += m & FIELD_MASK
        m = m >> FIELD_BITS
    return d
