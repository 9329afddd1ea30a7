"""Pure-Python exact rank kernel (fraction-free Gaussian elimination)."""


def rank(rows, ncols):
    """Rank over the rationals of an integer matrix given as a list of rows."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    nrows = len(m)
    r = 0
    prev = 1
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        p = pr[c]
        for i in range(r + 1, nrows):
            row = m[i]
            f = row[c]
            if f:
                for k in range(c + 1, ncols):
                    row[k] = (p * row[k] - f * pr[k]) // prev
            else:
                for k in range(c + 1, ncols):
                    row[k] = (p * row[k]) // prev
            row[c] = 0
        prev = p
        r += 1
        if r == nrows:
            break
    return r
