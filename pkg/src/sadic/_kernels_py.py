"""Pure-Python word scanning kernels.

Words are ``bytes`` objects holding letter indices. Every function here has a
compiled twin in ``_ckernels.pyx`` with the same signature and results.
"""

from collections import Counter


def count_overlapping(hay, needle):
    """Number of (possibly overlapping) occurrences of ``needle`` in ``hay``."""
    m = len(needle)
    if m == 0:
        raise ValueError("empty pattern")
    if m > len(hay):
        return 0
    if m == 1:
        return hay.count(needle)
    count = 0
    i = hay.find(needle)
    while i >= 0:
        count += 1
        i = hay.find(needle, i + 1)
    return count


def factor_counts(word, maxlen, cyclic):
    """Counts of every factor of length 1..maxlen.

    With ``cyclic`` the factors are read off ``word`` repeated forever, one
    start position per letter of ``word``; otherwise only windows lying fully
    inside ``word`` count.
    """
    n = len(word)
    out = {}
    if n == 0:
        return out
    if cyclic:
        reps = maxlen // n + 2
        ext = word * reps
        for k in range(1, maxlen + 1):
            out.update(Counter(ext[i:i + k] for i in range(n)))
    else:
        for k in range(1, min(maxlen, n) + 1):
            out.update(Counter(word[i:i + k] for i in range(n - k + 1)))
    return out


def factor_set(word, maxlen):
    """Set of factors of length 1..maxlen lying inside ``word``."""
    n = len(word)
    out = set()
    for k in range(1, min(maxlen, n) + 1):
        out.update(word[i:i + k] for i in range(n - k + 1))
    return out


def essential_factor_counts(image, first, last, maxlen):
    """Counts of factors starting in the first ``first`` letters of ``image``
    and ending in its last ``last`` letters, of length at most ``maxlen``."""
    n = len(image)
    out = Counter()
    lo_end = n - last
    for p in range(min(first, n)):
        e0 = max(p, lo_end)
        e1 = min(n - 1, p + maxlen - 1)
        for e in range(e0, e1 + 1):
            out[image[p:e + 1]] += 1
    return dict(out)
