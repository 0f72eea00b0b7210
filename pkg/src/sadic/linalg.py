"""Small exact linear algebra over ints and Fractions.

Matrices are tuples of row tuples. Everything here is exact; the cone helpers
are meant for the handful of generators that occur in cone reports.
"""

from fractions import Fraction
from itertools import combinations


def identity(d):
    return tuple(tuple(int(i == j) for j in range(d)) for i in range(d))


def matmul(a, b):
    if not a:
        return ()
    inner = len(b)
    if len(a[0]) != inner:
        raise ValueError(f"shape mismatch: {len(a)}x{len(a[0])} times {inner}x?")
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def matvec(a, v):
    if a and len(a[0]) != len(v):
        raise ValueError(f"shape mismatch: {len(a[0])} columns, vector of length {len(v)}")
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def transpose(a):
    return tuple(zip(*a))


def columns(a):
    return tuple(tuple(c) for c in zip(*a))


def is_positive(a):
    return all(x > 0 for row in a for x in row)


def rank(rows):
    """Exact rank of a matrix given as a sequence of rows."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    r = 0
    ncols = len(m[0])
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        for i in range(r + 1, len(m)):
            f = m[i][c] / pv
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def solve_exact(cols, target):
    """Coefficients ``x`` with ``sum(x[j] * cols[j]) == target``, or None.

    ``cols`` must be linearly independent.
    """
    k = len(cols)
    n = len(target)
    aug = [[Fraction(cols[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    r = 0
    where = [-1] * k
    for c in range(k):
        pivot = next((i for i in range(r, n) if aug[i][c] != 0), None)
        if pivot is None:
            return None
        aug[r], aug[pivot] = aug[pivot], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        where[c] = r
        r += 1
    if any(aug[i][k] != 0 for i in range(r, n)):
        return None
    return tuple(aug[where[c]][k] for c in range(k))


def in_cone(g, gens):
    """Exact test whether ``g`` lies in the cone spanned by ``gens``.

    Uses Carathéodory: it suffices to try linearly independent subsets.
    """
    g = tuple(g)
    if all(x == 0 for x in g):
        return True
    gens = [tuple(x) for x in gens if any(y != 0 for y in x)]
    if not gens:
        return False
    rk = rank(gens)
    for size in range(1, rk + 1):
        for subset in combinations(gens, size):
            if rank(subset) < size:
                continue
            coeffs = solve_exact(subset, g)
            if coeffs is not None and all(c >= 0 for c in coeffs):
                return True
    return False


def proportional(u, v):
    """Same ray: positive multiples of each other."""
    if rank([u, v]) > 1:
        return False
    return sum(x * y for x, y in zip(u, v)) > 0


def extreme_rays(gens):
    """Redundancy-pruned generators: one representative per extreme ray."""
    reps = []
    for g in gens:
        g = tuple(g)
        if all(x == 0 for x in g):
            continue
        if not any(proportional(g, h) for h in reps):
            reps.append(g)
    keep = []
    for i, g in enumerate(reps):
        others = reps[:i] + reps[i + 1:]
        if not in_cone(g, others):
            keep.append(g)
    return keep
