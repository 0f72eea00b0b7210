"""Vector towers, their evaluation, measure towers, prolongation and
letter-frequency cones.

Finite towers stand in for infinite ones. Values that are limits in the
infinite setting are returned together with an explicit error bound.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .directive import DepthError
from .measures import WeightTable, frac_str, letter_frequency, transfer_measure
from .symbols import (AlphabetMismatch, are_conjugate, count_occurrences, cyclic_count,
                      incidence_matrix, primitive_root)


def _vec(v):
    return tuple(Fraction(x) for x in v)


@dataclass(frozen=True)
class VectorTower:
    """Level vectors v_0, ..., v_N (``vectors[n]`` lives on 𝒜_n)."""

    vectors: tuple

    def __post_init__(self):
        vecs = tuple(_vec(v) for v in self.vectors)
        if not vecs:
            raise ValueError("a tower needs at least one level")
        for n, v in enumerate(vecs):
            if any(x < 0 for x in v):
                raise ValueError(f"negative entry at level {n}")
        object.__setattr__(self, "vectors", vecs)

    @property
    def depth(self):
        return len(self.vectors) - 1

    def __getitem__(self, n):
        return self.vectors[n]

    def mass(self, n):
        return sum(self.vectors[n], Fraction(0))

    def to_list(self):
        return [[frac_str(x) for x in v] for v in self.vectors]

    @classmethod
    def from_list(cls, data):
        return cls(tuple(tuple(Fraction(x) for x in v) for v in data))


def tower_from_top(seq, top, N):
    """Tower with v_N = ``top`` and v_n = M(σ_n) v_{n+1} below."""
    if N > seq.max_depth:
        raise DepthError(f"depth {N} exceeds {seq.max_depth}")
    top = _vec(top)
    if len(top) != len(seq.alphabet(N)):
        raise ValueError(f"top vector has {len(top)} entries, 𝒜_{N} has {len(seq.alphabet(N))}")
    vecs = [top]
    for n in range(N - 1, -1, -1):
        vecs.append(linalg.matvec(incidence_matrix(seq.level(n)), vecs[-1]))
    return VectorTower(tuple(reversed(vecs)))


def characteristic_tower(seq, letter, N, weight=1):
    """v_N = weight·e_letter; its measures are characteristic measures of the
    letter images σ_[n,N)(letter)."""
    alph = seq.alphabet(N)
    idx = alph.index(letter) if isinstance(letter, str) else int(letter)
    top = [Fraction(0)] * len(alph)
    top[idx] = Fraction(weight)
    return tower_from_top(seq, top, N)


def geometric_tower(seq, v0, ratio, N):
    """v_n = ratio^-n · v0 for a stationary sequence with M v0 = ratio · v0."""
    ratio = Fraction(ratio)
    v0 = _vec(v0)
    return VectorTower(tuple(tuple(x / ratio ** n for x in v0) for n in range(N + 1)))


@dataclass
class TowerReport:
    depth: int
    violations: list
    masses: list

    @property
    def valid(self):
        return not self.violations


def validate_tower(seq, tower):
    """Exact check of v_n = M(σ_n) v_{n+1}; also lists Σ_a v_n(a) per level."""
    if tower.depth > seq.max_depth:
        raise DepthError(f"tower depth {tower.depth} exceeds {seq.max_depth}")
    for n, v in enumerate(tower.vectors):
        if len(v) != len(seq.alphabet(n)):
            raise AlphabetMismatch(
                f"level {n} vector has {len(v)} entries, 𝒜_{n} has {len(seq.alphabet(n))}")
    violations = []
    for n in range(tower.depth):
        expected = linalg.matvec(incidence_matrix(seq.level(n)), tower[n + 1])
        if expected != tower[n]:
            violations.append((n, expected, tower[n]))
    masses = [tower.mass(n) for n in range(tower.depth + 1)]
    return TowerReport(tower.depth, violations, masses)


def evaluate_tower(seq, tower, w, n):
    """(S_n, bound): S_n = Σ_a v_n(a)·|σ_[0,n)(a)|_w and the limit exceeds S_n
    by at most bound = (|w|-1)·Σ_a v_n(a)."""
    w = bytes(w)
    if not w:
        raise ValueError("empty word")
    if n > tower.depth:
        raise DepthError(f"level {n} exceeds tower depth {tower.depth}")
    v = tower[n]
    if n == 0:
        s = v[w[0]] if len(w) == 1 else Fraction(0)
    else:
        images = seq.telescope(0, n).images
        s = sum((x * count_occurrences(img, w) for x, img in zip(v, images) if x),
                Fraction(0))
    return s, (len(w) - 1) * tower.mass(n)


@dataclass
class MeasureTower:
    """Weight tables μ_0, ..., μ_N with μ_k = transfer(σ_k, μ_{k+1}).

    ``junction[k]`` is Σ_a v_N(a): for a word of length ℓ the table value at
    any level lies within (ℓ-1)·junction[k] above the tower evaluation at the
    deepest level, and so does the limit of any infinite extension.
    """

    tables: list
    junction: list
    round_trip: bool

    def bound(self, level, length):
        return (length - 1) * self.junction[level]


def levelwise_measures(seq, tower, L):
    """Measure tower of a finite vector tower.

    The top vector is closed off by the characteristic measures of the top
    letters, Σ_a v_N(a)·μ_a, and transferred down level by level. Every table
    therefore satisfies the Kirchhoff equalities exactly, and its letter
    frequencies equal the tower vectors exactly.
    """
    N = tower.depth
    if N > seq.max_depth:
        raise DepthError(f"tower depth {N} exceeds {seq.max_depth}")
    top_alph = seq.alphabet(N)
    top = tower[N]
    weights = {}
    for a, x in enumerate(top):
        if x:
            for k in range(1, L + 1):
                weights[bytes([a]) * k] = x
    tables = [WeightTable(top_alph, L, weights, sum(top, Fraction(0)))]
    for n in range(N - 1, -1, -1):
        tables.append(transfer_measure(seq.level(n), tables[-1], L))
    tables.reverse()
    jd = tower.mass(N)
    round_trip = all(letter_frequency(t) == tower[k] for k, t in enumerate(tables))
    return MeasureTower(tables, [jd] * (N + 1), round_trip)


def cylinder_values(seq, tower, words):
    """Level-0 measure-tower weights of selected (possibly long) cylinders.

    Agrees with ``levelwise_measures(seq, tower, L).tables[0]`` on words of
    length <= L, without tabulating every cylinder.
    """
    N = tower.depth
    top = tower[N]
    if N == 0:
        return [top[w[0]] if w == w[:1] * len(w) else Fraction(0)
                for w in map(bytes, words)]
    images = seq.telescope(0, N).images
    out = []
    for w in map(bytes, words):
        out.append(sum((x * cyclic_count(img, w) for x, img in zip(top, images) if x),
                       Fraction(0)))
    return out


def prolong_tower(tau, seq, tower):
    """Prepend τ: the new sequence is τ ∘ σ_0 ∘ ... and the new tower is
    (M(τ) v_0, v_0, v_1, ...)."""
    if tau.source != seq.alphabet(0):
        raise AlphabetMismatch(
            f"τ has source {tau.source.letters}, base alphabet is {seq.alphabet(0).letters}")
    new_seq = seq.prepend(tau)
    v0 = linalg.matvec(incidence_matrix(tau), tower[0])
    return new_seq, VectorTower((v0,) + tower.vectors)


def tower_for_periodic_word(seq, u, N):
    """A tower at depth N whose level-0 measure is μ_u, if some top letter
    image σ_[0,N)(a) is a power of a rotation of u's primitive root."""
    root, e = primitive_root(u)
    images = seq.telescope(0, N).images
    for a, img in enumerate(images):
        r, k = primitive_root(img)
        if are_conjugate(r, root):
            top = [Fraction(0)] * len(images)
            top[a] = Fraction(e, k)
            return tower_from_top(seq, top, N)
    return None


# -- cones ----------------------------------------------------------------

def _angle(g, h):
    dot = sum(x * y for x, y in zip(g, h))
    n2 = sum(x * x for x in g) * sum(y * y for y in h)
    cross2 = n2 - dot * dot
    sin = math.sqrt(Fraction(cross2, n2))
    cos = math.copysign(math.sqrt(Fraction(dot * dot, n2)), dot)
    return math.atan2(sin, cos)


def angular_width(gens):
    """Largest angle (radians) between two generators; 0 for a single ray."""
    gens = [g for g in gens if any(g)]
    best = 0.0
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            best = max(best, _angle(gens[i], gens[j]))
    return best


@dataclass
class ConeReport:
    level: int
    probe: int
    generators: list
    rank: int
    extreme_rays: list
    width: float
    note: str = "outer approximation: the limit cone lies inside cone(generators)"

    def to_dict(self):
        return {
            "level": self.level,
            "probe": self.probe,
            "generators": [list(g) for g in self.generators],
            "rank": self.rank,
            "extreme_rays": None if self.extreme_rays is None
            else [list(g) for g in self.extreme_rays],
            "angular_width": self.width,
            "note": self.note,
        }


def cone_at_level(seq, n, m):
    """Generators (columns of M(σ_[n,m))), exact rank and, in rank <= 3,
    the exact extreme rays."""
    if not 0 <= n < m <= seq.max_depth:
        raise DepthError(f"need 0 <= {n} < {m} <= {seq.max_depth}")
    gens = [tuple(c) for c in linalg.columns(seq.matrix(n, m))]
    rk = linalg.rank(gens)
    rays = linalg.extreme_rays(gens) if rk <= 3 else None
    return ConeReport(n, m, gens, rk, rays, angular_width(gens))


@dataclass
class CriticalLevelReport:
    depth: int
    probe_extra: int
    ranks: dict
    apparent_critical_level: int
    thin: bool
    invertible: bool
    notes: list = field(default_factory=list)

    def to_dict(self):
        return {
            "depth": self.depth,
            "probe_extra": self.probe_extra,
            "ranks": {str(k): v for k, v in sorted(self.ranks.items())},
            "apparent_critical_level": self.apparent_critical_level,
            "thin": self.thin,
            "invertible_levels": self.invertible,
            "notes": self.notes,
        }


def critical_level_estimate(seq, N, m_extra):
    """c_n^(n+m_extra) for n <= N and the least level from which the scanned
    values stay constant."""
    if N + m_extra > seq.max_depth:
        raise DepthError(f"N + m_extra = {N + m_extra} exceeds {seq.max_depth}")
    if m_extra < 1:
        raise ValueError("m_extra must be at least 1")
    ranks = {n: linalg.rank(seq.matrix(n, n + m_extra)) for n in range(N + 1)}
    apparent = N
    while apparent > 0 and ranks[apparent - 1] == ranks[N]:
        apparent -= 1
    invertible = True
    for n in range(N + m_extra):
        mat = incidence_matrix(seq.level(n))
        if len(mat) != len(mat[0]) or linalg.rank(mat) < len(mat):
            invertible = False
            break
    notes = [f"finite probe depth {m_extra}; values are upper bounds for c_n"]
    if invertible:
        notes.append("all scanned level matrices are invertible")
    return CriticalLevelReport(N, m_extra, ranks, apparent, apparent == 0, invertible, notes)
