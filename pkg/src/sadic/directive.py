"""Directive sequences of non-erasing morphisms.

A sequence is described by a rule ``level -> Morphism`` together with a
materializable depth ``max_depth``: the level maps σ_0, ..., σ_{max_depth-1}
and the level alphabets 𝒜_0, ..., 𝒜_{max_depth} are available. Every
analysis states the depth it used; nothing here claims a limit property.
"""

import threading
from dataclasses import dataclass

from . import linalg
from .symbols import AlphabetMismatch, Morphism, compose, incidence_matrix


class DepthError(ValueError):
    """A requested level lies beyond what the sequence can materialize."""


class DirectiveSequence:
    def __init__(self, rule, max_depth, descriptor=None):
        if max_depth < 1:
            raise ValueError("max_depth must be at least 1")
        self._rule = rule
        self.max_depth = int(max_depth)
        self.descriptor = descriptor
        self.annotations = {}
        self._levels = {}
        self._tele = {}
        self._mats = {}
        self._lock = threading.Lock()
        self._parent = None
        self._offset = 0

    # -- construction -----------------------------------------------------

    @classmethod
    def from_prefix(cls, prefix, tail=None, period=None, max_depth=None):
        """Explicit prefix, then either a stationary ``tail`` or a periodic
        block ``period`` repeated forever."""
        prefix = list(prefix)
        if tail is not None and period is not None:
            raise ValueError("give either a stationary tail or a period, not both")
        if period is not None:
            period = list(period)
            if not period:
                raise ValueError("empty period")
        if max_depth is None:
            if tail is None and period is None:
                max_depth = len(prefix)
            else:
                raise ValueError("max_depth is required for infinite sequences")
        if tail is None and period is None and max_depth > len(prefix):
            raise ValueError("finite sequence cannot exceed its prefix")

        def rule(n):
            if n < len(prefix):
                return prefix[n]
            if tail is not None:
                return tail
            return period[(n - len(prefix)) % len(period)]

        desc = {
            "kind": "stationary" if not prefix and tail is not None else
                    "prefix+stationary" if tail is not None else
                    "prefix+periodic" if period is not None else "prefix",
            "prefix": [s.to_dict() for s in prefix],
            "max_depth": max_depth,
        }
        if tail is not None:
            desc["tail"] = tail.to_dict()
        if period is not None:
            desc["period"] = [s.to_dict() for s in period]
        seq = cls(rule, max_depth, desc)
        seq.check_chain()
        return seq

    @classmethod
    def stationary(cls, sigma, max_depth):
        return cls.from_prefix([], tail=sigma, max_depth=max_depth)

    @classmethod
    def parameterized(cls, builder, params, max_depth=None, name=None):
        """Level maps ``builder(n, params)``; ``params`` maps names to
        per-level schedules (e.g. ``{"ell": [2, 4, 8]}``)."""
        if max_depth is None:
            lengths = [len(v) for v in params.values() if isinstance(v, (list, tuple))]
            if not lengths:
                raise ValueError("max_depth is required")
            max_depth = min(lengths)
        desc = {"kind": "parameterized", "family": name, "params": params,
                "max_depth": max_depth}
        seq = cls(lambda n: builder(n, params), max_depth, desc)
        seq.check_chain()
        return seq

    # -- access -----------------------------------------------------------

    def _check_level(self, n):
        if not 0 <= n < self.max_depth:
            raise DepthError(f"level {n} outside 0..{self.max_depth - 1}")

    def level(self, n):
        """σ_n : 𝒜_{n+1}* -> 𝒜_n*."""
        self._check_level(n)
        s = self._levels.get(n)
        if s is None:
            s = self._rule(n)
            if not isinstance(s, Morphism):
                raise TypeError(f"rule returned {type(s).__name__} at level {n}")
            with self._lock:
                self._levels.setdefault(n, s)
        return s

    def __getitem__(self, n):
        return self.level(n)

    def alphabet(self, n):
        """𝒜_n for 0 <= n <= max_depth."""
        if n == self.max_depth:
            return self.level(n - 1).source
        self._check_level(n)
        return self.level(n).target

    def check_chain(self, depth=None):
        depth = self.max_depth if depth is None else depth
        for n in range(depth - 1):
            if self.level(n + 1).target != self.level(n).source:
                raise AlphabetMismatch(
                    f"level {n + 1} target {self.level(n + 1).target.letters} "
                    f"does not match level {n} source {self.level(n).source.letters}")

    def telescope(self, n, m):
        """σ_[n,m) = σ_n ∘ ... ∘ σ_{m-1}."""
        if not 0 <= n < m <= self.max_depth:
            raise DepthError(f"telescope({n}, {m}) needs 0 <= n < m <= {self.max_depth}")
        if self._parent is not None:
            return self._parent.telescope(n + self._offset, m + self._offset)
        key = (n, m)
        s = self._tele.get(key)
        if s is not None:
            return s
        if m == n + 1:
            s = self.level(n)
        else:
            s = compose(self.telescope(n, m - 1), self.level(m - 1))
        with self._lock:
            return self._tele.setdefault(key, s)

    def matrix(self, n, m):
        """M(σ_[n,m)) computed as a matrix product, without expanding words."""
        if not 0 <= n < m <= self.max_depth:
            raise DepthError(f"matrix({n}, {m}) needs 0 <= n < m <= {self.max_depth}")
        if self._parent is not None:
            return self._parent.matrix(n + self._offset, m + self._offset)
        key = (n, m)
        a = self._mats.get(key)
        if a is not None:
            return a
        if m == n + 1:
            a = incidence_matrix(self.level(n))
        else:
            a = linalg.matmul(self.matrix(n, m - 1), incidence_matrix(self.level(m - 1)))
        with self._lock:
            return self._mats.setdefault(key, a)

    def image_lengths(self, n, m):
        """|σ_[n,m)(a)| for a in 𝒜_m, from the matrix column sums."""
        mat = self.matrix(n, m)
        return tuple(sum(col) for col in zip(*mat))

    # -- derived sequences ------------------------------------------------

    def truncate(self, n):
        """The sequence (σ_k)_{k >= n} reindexed from 0."""
        if n == 0:
            return self
        if not 0 <= n < self.max_depth:
            raise DepthError(f"cannot truncate at {n}; max depth {self.max_depth}")
        root, off = (self._parent, self._offset + n) if self._parent else (self, n)
        desc = {"kind": "truncated", "offset": off, "base": root.descriptor,
                "max_depth": root.max_depth - off}
        out = DirectiveSequence(lambda k: root.level(k + off), root.max_depth - off, desc)
        # telescopes of a truncation are served from the root's cache
        out._parent, out._offset = root, off
        return out

    def prepend(self, tau):
        """The sequence τ ∘ σ_0 ∘ σ_1 ∘ ..."""
        if tau.source != self.alphabet(0):
            raise AlphabetMismatch(
                f"prepended map has source {tau.source.letters}, "
                f"base alphabet is {self.alphabet(0).letters}")
        rule = self.level
        desc = {"kind": "prepended", "head": tau.to_dict(), "base": self.descriptor,
                "max_depth": self.max_depth + 1}
        return DirectiveSequence(lambda k: tau if k == 0 else rule(k - 1),
                                 self.max_depth + 1, desc)

    def __repr__(self):
        kind = (self.descriptor or {}).get("kind", "rule")
        return f"DirectiveSequence(kind={kind!r}, max_depth={self.max_depth})"


def telescope(seq, n, m):
    return seq.telescope(n, m)


def truncate(seq, n):
    return seq.truncate(n)


def beta_minus(seq, n):
    """β_-(n): shortest letter image of σ_[0,n)."""
    if n < 1:
        raise DepthError("β_- is defined for n >= 1")
    return min(seq.image_lengths(0, n))


@dataclass
class GrowthReport:
    depth: int
    probe: int
    beta: dict
    nondecreasing: dict
    positive_at: dict
    verdict: str

    def to_dict(self):
        return {
            "depth": self.depth,
            "probe": self.probe,
            "beta_minus": {str(k): v for k, v in self.beta.items()},
            "nondecreasing": {str(k): v for k, v in self.nondecreasing.items()},
            "positive_telescoping_at": {str(k): v for k, v in self.positive_at.items()},
            "verdict": self.verdict,
        }


def first_positive_level(seq, n, probe):
    """Least m in (n, n + probe] with M(σ_[n,m)) strictly positive, else None."""
    for m in range(n + 1, min(n + probe, seq.max_depth) + 1):
        if linalg.is_positive(seq.matrix(n, m)):
            return m
    return None


def growth_report(seq, depth, probe):
    """Finite-depth growth diagnostics up to level ``depth``.

    The verdict only compares β_- over the scanned range and proves nothing
    about the limit.
    """
    if depth > seq.max_depth:
        raise DepthError(f"depth {depth} exceeds {seq.max_depth}")
    beta = {n: beta_minus(seq, n) for n in range(1, depth + 1)}
    nondec = {n: beta[n + 1] >= beta[n] for n in range(1, depth)}
    positive = {n: first_positive_level(seq, n, probe) for n in range(0, depth)}
    half = beta[depth // 2] if depth >= 2 else 1
    grows = depth >= 1 and beta[depth] > max(1, half)
    verdict = "everywhere-growing-up-to-depth" if grows else "not-growing-at-depth"
    return GrowthReport(depth, probe, beta, nondec, positive, verdict)
