"""Finite-depth subshift languages, complexity and entropy bounds."""

import json
import math
from dataclasses import dataclass

from . import kernels
from .directive import DepthError, beta_minus
from .symbols import apply_morphism


class InsufficientDepth(DepthError):
    pass


@dataclass(frozen=True)
class LanguageTable:
    """Admitted factors of a level subshift, by length.

    ``words[k]`` is the frozenset of admitted words of length ``k`` for
    1 <= k <= L. ``stable`` records whether the last generation step changed
    nothing; ``certified`` is the length up to which the depth used makes a
    completeness claim plausible (never a proof).
    """

    alphabet: object
    level: int
    L: int
    words: dict
    depth: int
    stable: bool
    certified: int

    def __contains__(self, w):
        w = bytes(w)
        return 1 <= len(w) <= self.L and w in self.words.get(len(w), ())

    def of_length(self, k):
        return sorted(self.words.get(k, ()))

    def all_words(self):
        return [w for k in range(1, self.L + 1) for w in self.of_length(k)]

    def to_text(self):
        fmt = self.alphabet.format
        return "".join(f"{fmt(w)}\n" for w in self.all_words())

    def to_dict(self):
        fmt = self.alphabet.format
        return {
            "alphabet": list(self.alphabet.letters),
            "level": self.level,
            "L": self.L,
            "depth": self.depth,
            "stable": self.stable,
            "certified_length": self.certified,
            "words": {str(k): sorted(fmt(w) for w in self.words.get(k, ()))
                      for k in range(1, self.L + 1)},
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _bucket(words, L):
    out = {k: set() for k in range(1, L + 1)}
    for w in words:
        out[len(w)].add(w)
    return {k: frozenset(v) for k, v in out.items()}


def generate_language(seq, n, L, N):
    """Factors of length <= L of σ_[n,m)(a) for n < m <= N and a in 𝒜_m."""
    if L < 1:
        raise ValueError("L must be at least 1")
    if not n < N <= seq.max_depth:
        raise DepthError(f"need {n} < N <= {seq.max_depth}, got N={N}")
    found = set()
    previous = None
    for m in range(n + 1, N + 1):
        if m == N:
            previous = frozenset(found)
        sigma = seq.telescope(n, m)
        for img in sigma.images:
            found |= kernels.factor_set(img, L)
    if not any(len(w) == L for w in found):
        raise InsufficientDepth(
            f"no factor of length {L} appears at level {n} by depth {N}")
    stable = previous is not None and previous == frozenset(found) and N - n >= 2
    beta = min(seq.image_lengths(n, N))
    return LanguageTable(seq.alphabet(n), n, L, _bucket(found, L), N, stable,
                         min(L, beta))


def full_shift_table(alphabet, L):
    """Every word up to length L (the language of the full shift)."""
    words = {k: frozenset(alphabet.words(k)) for k in range(1, L + 1)}
    return LanguageTable(alphabet, 0, L, words, 0, True, L)


def table_from_words(alphabet, words, L, cyclic=True):
    """Language of the periodic orbits of ``words`` (cyclic) or of their factors."""
    found = set()
    for w in words:
        w = bytes(w)
        if cyclic:
            found |= set(kernels.factor_counts(w, L, True))
        else:
            found |= kernels.factor_set(w, L)
    return LanguageTable(alphabet, 0, L, _bucket(found, L), 0, True, L)


def image_language(sigma, table, L_out):
    """Factors of length <= L_out of σ-images of admitted words."""
    if table.alphabet != sigma.source:
        raise ValueError("table alphabet differs from the morphism source")
    if L_out <= 1:
        need = 1
    else:
        need = -(-(L_out - 2) // sigma.min_length) + 2
    if table.L < need:
        raise InsufficientDepth(f"table length {table.L} < required input length {need}")
    found = set()
    for k in range(1, need + 1):
        for w in table.words.get(k, ()):
            found |= kernels.factor_set(apply_morphism(sigma, w), L_out)
    return LanguageTable(sigma.target, table.level, L_out, _bucket(found, L_out),
                         table.depth, table.stable, L_out)


def complexity(table, n):
    """(p(n), log p(n) / n) with the natural logarithm."""
    if not 1 <= n <= table.L:
        raise ValueError(f"length {n} outside 1..{table.L}")
    p = len(table.words.get(n, ()))
    return p, (math.log(p) / n if p else float("-inf"))


def entropy_profile(seq, N):
    """Per-level terms log(card 𝒜_n) / β_-(n) for 1 <= n <= N."""
    if N > seq.max_depth:
        raise DepthError(f"depth {N} exceeds {seq.max_depth}")
    return [(n, len(seq.alphabet(n)), beta_minus(seq, n),
             math.log(len(seq.alphabet(n))) / beta_minus(seq, n))
            for n in range(1, N + 1)]


def entropy_upper_bound(seq, N):
    """min over 1 <= n <= N of log(card 𝒜_n) / β_-(n), natural log."""
    if N < 1:
        raise ValueError("N must be at least 1")
    return min(term for *_, term in entropy_profile(seq, N))
