"""Exact integer linear algebra on tuple-of-tuples matrices.

Matrices are immutable tuples of tuples of ints and act on column
vectors (tuples of ints).  Everything is fraction-free or uses
fractions.Fraction internally, so results are exact.
"""

from fractions import Fraction


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a, b):
    n = len(a)
    k = len(b)
    m = len(b[0])
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(row[t] * col[t] for t in range(k)) for col in bt) for row in a
    )


def mat_vec(a, v):
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in a)


def mat_pow(a, k):
    n = len(a)
    if k < 0:
        return mat_pow(mat_inverse(a), -k)
    result = identity(n)
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        k >>= 1
    return result


def mat_sub(a, b):
    return tuple(
        tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def rank(m):
    """Rank over the rationals by Bareiss fraction-free elimination."""
    if not m:
        return 0
    a = [list(row) for row in m]
    rows = len(a)
    cols = len(a[0])
    r = 0
    prev = 1
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == rows:
            break
    return r


def mat_inverse(m):
    """Exact inverse of an integer matrix that is invertible over Z."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        piv = next(i for i in range(c, n) if a[i][c] != 0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    out = []
    for i in range(n):
        row = a[i][n:]
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not invertible over the integers")
        out.append(tuple(int(x) for x in row))
    return tuple(out)


def mat_order(m, cap=10000):
    """Multiplicative order of an integer matrix of finite order."""
    n = len(m)
    e = identity(n)
    p = m
    for k in range(1, cap + 1):
        if p == e:
            return k
        p = mat_mul(p, m)
    raise ValueError("order exceeds cap")
