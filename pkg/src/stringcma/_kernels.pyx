# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled exact rank kernel: Bareiss elimination on int64 with overflow detection."""

from libc.stdint cimport int64_t


cdef extern from *:
    """
    static int mul_ovf(long long a, long long b, long long *r) { return __builtin_mul_overflow(a, b, r); }
    static int sub_ovf(long long a, long long b, long long *r) { return __builtin_sub_overflow(a, b, r); }
    """
    int mul_ovf(long long a, long long b, long long *r)
    int sub_ovf(long long a, long long b, long long *r)


def rank(rows, Py_ssize_t ncols):
    """Rank over the rationals; raises OverflowError when int64 is not wide enough."""
    cdef list kept = [row_ for row_ in rows if any(row_)]
    cdef Py_ssize_t nrows = len(kept)
    if nrows == 0 or ncols == 0:
        return 0
    cdef int64_t[:, ::1] m
    import array
    buf = array.array("q", [0]) * (nrows * ncols)
    m = memoryview(buf).cast("B").cast("q", [nrows, ncols])
    cdef Py_ssize_t i, k, c, piv, r = 0
    for i in range(nrows):
        row = kept[i]
        for k in range(ncols):
            m[i, k] = row[k]
    cdef long long p, f, prev = 1, x, y, z
    for c in range(ncols):
        piv = -1
        for i in range(r, nrows):
            if m[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(ncols):
                x = m[r, k]
                m[r, k] = m[piv, k]
                m[piv, k] = x
        p = m[r, c]
        for i in range(r + 1, nrows):
            f = m[i, c]
            for k in range(c + 1, ncols):
                if mul_ovf(p, m[i, k], &x):
                    raise OverflowError
                if f != 0:
                    if mul_ovf(f, m[r, k], &y):
                        raise OverflowError
                    if sub_ovf(x, y, &z):
                        raise OverflowError
                else:
                    z = x
                m[i, k] = z // prev
            m[i, c] = 0
        prev = p
        r += 1
        if r == nrows:
            break
    return r
