"""Pure-Python implementation of the sparse polynomial kernels.

Polynomials are stored as ``dict[int, int]`` mapping a packed monomial to an
integer coefficient.  A packed monomial holds one exponent per variable in a
fixed-width bit field, so multiplying monomials is integer addition.
"""

FIELD_BITS = 12
FIELD_MASK = (1 << FIELD_BITS) - 1


def mul(a, b):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = ma + mb
            if m in out:
                out[m] += ca * cb
            else:
                out[m] = ca * cb
    return {m: c for m, c in out.items() if c}


def add_scaled(acc, a, scale):
    """acc += scale * a, in place. Zero entries are left for ``prune``."""
    for m, c in a.items():
        if m in acc:
            acc[m] += scale * c
        else:
            acc[m] = scale * c


def prune(a):
    return {m: c for m, c in a.items() if c}


def scale(a, s):
    if not s:
        return {}
    return {m: s * c for m, c in a.items()}


def relabel(a, moves):
    """Rename variables. ``moves`` is a sequence of (src_shift, dst_shift)."""
    out = {}
    for m, c in a.items():
        n = m
        for s, d in moves:
            e = (m >> s) & FIELD_MASK
            if e:
                n += (e << d) - (e << s)
        if n in out:
            out[n] += c
        else:
            out[n] = c
    return {m: c for m, c in out.items() if c}


def relabel_accumulate(acc, a, moves, sign):
    """acc += sign * relabel(a, moves), in place."""
    for m, c in a.items():
        n = m
        for s, d in moves:
            e = (m >> s) & FIELD_MASK
            if e:
                n += (e << d) - (e << s)
        if n in acc:
            acc[n] += sign * c
        else:
            acc[n] = sign * c


def split_var(a, shift):
    """Group terms by the exponent of one variable, removing that variable."""
    out = {}
    for m, c in a.items():
        e = (m >> shift) & FIELD_MASK
        rest = m - (e << shift)
        bucket = out.get(e)
        if bucket is None:
            out[e] = {rest: c}
        else:
            bucket[rest] = c
    return out


def max_field(a):
    best = 0
    for m in a:
        while m:
            e = m & FIELD_MASK
            if e > best:
                best = e
            m >>= FIELD_BITS
    return best


def monomial_degree(m):
    d = 0
    while m:
        d += m & FIELD_MASK
        m >>= FIELD_BITS
    return d
