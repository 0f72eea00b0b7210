"""Built-in morphisms and sequences: τ_d, σ_{ℓ,d}, the alternating diagonal
family with its tower family, and the two-periodic-orbit example."""

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .directive import DirectiveSequence
from .symbols import Alphabet, Morphism, incidence_matrix
from .towers import (VectorTower, cylinder_values, levelwise_measures, tower_from_top,
                     validate_tower)


class InfeasibleSchedule(ValueError):
    def __init__(self, level, message):
        super().__init__(f"level {level}: {message}")
        self.level = level


def diagonal_alphabet(d):
    """𝒜_(d) = {a1, ..., ad}."""
    return Alphabet(tuple(f"a{i}" for i in range(1, d + 1)))


def build_tau_d(d):
    """τ_d : 𝒜_(d+1) -> 𝒜_(d), a_i -> a_i a_i (i <= d), a_{d+1} -> a_1 ... a_d."""
    if d < 2:
        raise ValueError("τ_d needs d >= 2")
    images = [bytes([i, i]) for i in range(d)] + [bytes(range(d))]
    return Morphism(diagonal_alphabet(d + 1), diagonal_alphabet(d), tuple(images))


def build_sigma_ld(ell, d):
    """σ(a_i) = a_1 ... a_{i-1} a_i^(ℓ+1) a_{i+1} ... a_d, so M = ℓ I + 1."""
    if ell < 2 or d < 2:
        raise ValueError("σ_{ℓ,d} needs ℓ >= 2 and d >= 2")
    images = [bytes(range(i)) + bytes([i]) * (ell + 1) + bytes(range(i + 1, d))
              for i in range(d)]
    alph = diagonal_alphabet(d)
    return Morphism(alph, alph, tuple(images))


@dataclass(frozen=True)
class DiagonalFamilySpec:
    """Alternating sequence σ_{ℓ_0,d0} ∘ τ_d0 ∘ σ_{ℓ_1,d0+1} ∘ τ_{d0+1} ∘ ...

    Block j occupies levels 2j (σ on 𝒜_(d0+j)) and 2j+1 (τ_{d0+j}).
    """

    ells: tuple
    blocks: int
    d0: int = 2

    def __post_init__(self):
        object.__setattr__(self, "ells", tuple(int(x) for x in self.ells))
        if self.blocks < 1:
            raise ValueError("the family needs at least one block")
        if len(self.ells) < self.blocks:
            raise ValueError(f"{len(self.ells)} ℓ values for {self.blocks} blocks")
        if any(x < 2 for x in self.ells):
            raise ValueError("every ℓ must be at least 2")
        if self.d0 < 2:
            raise ValueError("d0 must be at least 2")

    @property
    def depth(self):
        return 2 * self.blocks


def _diagonal_level(n, params):
    j, odd = divmod(n, 2)
    d = params["d0"] + j
    return build_tau_d(d) if odd else build_sigma_ld(params["ell"][j], d)


def build_diagonal_sequence(spec):
    params = {"ell": list(spec.ells[:spec.blocks]), "d0": spec.d0}
    return DirectiveSequence.parameterized(_diagonal_level, params, spec.depth, "diagonal")


@dataclass
class DiagonalTowers:
    d: int
    n0: int
    towers: list
    coefficients: list
    strictly_positive: bool
    rank_n0: int
    rank_base_frequencies: int


def _split(col, i):
    """Write ``col`` as alpha·e_i + beta·c, or return None."""
    others = [x for j, x in enumerate(col) if j != i]
    if not others or any(x != others[0] for x in others):
        return None
    beta = others[0]
    return col[i] - beta, beta


def build_diagonal_towers(spec, d, lam=(1, 1), n0=None):
    """d towers with v^i_n = λ1_n e_i + λ2_n c_n for n >= n0 (default 2d-2).

    (λ1, λ2) is prescribed at n0 and the compatibility equations are solved
    upward exactly; below n0 the vectors are pushed down by the level
    matrices. A negative coefficient anywhere raises InfeasibleSchedule.
    """
    seq = build_diagonal_sequence(spec)
    n0 = 2 * d - 2 if n0 is None else n0
    top = seq.max_depth
    if not 0 <= n0 <= top:
        raise ValueError(f"n0 = {n0} outside the sequence depth {top}")
    if d > len(seq.alphabet(n0)):
        raise ValueError(f"level {n0} has only {len(seq.alphabet(n0))} letters, d = {d}")
    l1, l2 = Fraction(lam[0]), Fraction(lam[1])
    if l1 < 0 or l2 < 0:
        raise InfeasibleSchedule(n0, "negative coefficient")
    coeffs = [(l1, l2)]
    for n in range(n0, top):
        mat = incidence_matrix(seq.level(n))
        # structure is identical for every i <= d; check it on all of them
        parts = {_split(linalg.columns(mat)[i], i) for i in range(d)}
        row_sums = {sum(row) for row in mat}
        if len(parts) != 1 or None in parts or len(row_sums) != 1:
            raise InfeasibleSchedule(n, "level matrix does not preserve span{e_i, c}")
        alpha, beta = parts.pop()
        gamma = row_sums.pop()
        x = l1 / alpha
        y = (l2 - x * beta) / gamma
        if x < 0 or y < 0:
            raise InfeasibleSchedule(n + 1, f"coefficients ({x}, {y}) leave the cone")
        l1, l2 = x, y
        coeffs.append((l1, l2))
    towers = []
    for i in range(d):
        top_l1, top_l2 = coeffs[-1]
        size = len(seq.alphabet(top))
        vtop = [top_l2] * size
        vtop[i] += top_l1
        tower = tower_from_top(seq, vtop, top)
        towers.append(tower)
    for tower in towers:
        rep = validate_tower(seq, tower)
        assert rep.valid, rep.violations
    rank_n0 = linalg.rank([t[n0] for t in towers])
    rank_base = linalg.rank([t[0] for t in towers])
    positive = all(a > 0 and b > 0 for a, b in coeffs)
    return DiagonalTowers(d, n0, towers, coeffs, positive, rank_n0, rank_base)


def measure_rank(tables):
    """Exact rank of weight tables viewed as vectors indexed by cylinders."""
    words = sorted({w for t in tables for w in t.weights} | {b""})
    return linalg.rank([[t[w] for w in words] for t in tables])


def base_measures(seq, towers, L):
    """Level-0 weight tables of the towers' measure towers."""
    return [levelwise_measures(seq, t, L).tables[0] for t in towers]


def pushforward_rank(seq, result):
    """Rank of the towers' base-level measures on the cylinders spelled by the
    base images σ_[0,n0)(b) of the level-n0 letters.

    Letter frequencies at the base live in a space of dimension card 𝒜_0, so
    independence of more measures can only show on long cylinders.
    """
    n0 = result.n0
    if n0 == 0:
        words = [bytes([b]) for b in range(len(seq.alphabet(0)))]
    else:
        words = list(seq.telescope(0, n0).images)
    rows = [cylinder_values(seq, t, words) for t in result.towers]
    return linalg.rank(rows)


def build_example_6_3(max_depth=12):
    """σ_0: a->cd, b->dc; σ_1: x->aab, y->bba; σ_n: x->xx, y->yy for n >= 2."""
    sigma0 = Morphism.from_strings("ab", "cd", {"a": "cd", "b": "dc"})
    sigma1 = Morphism.from_strings("xy", "ab", {"x": "aab", "y": "bba"})
    tail = Morphism.from_strings("xy", "xy", {"x": "xx", "y": "yy"})
    seq = DirectiveSequence.from_prefix([sigma0, sigma1], tail=tail, max_depth=max_depth)
    seq.annotations = {
        "c0": 1,
        "c1": 2,
        "critical_level": 1,
        "periodic_words": ["cdcddc", "dcdccd"],
        "level1_words": ["aab", "bba"],
        "frequencies": {"aab": [2, 1], "bba": [1, 2]},
        "cylinder_cd_dc": 2,
    }
    return seq


FIBONACCI = {"source": "ab", "target": "ab", "images": {"a": "ab", "b": "a"}}
THUE_MORSE = {"source": "ab", "target": "ab", "images": {"a": "ab", "b": "ba"}}


def fibonacci():
    return Morphism.from_dict(FIBONACCI)


def thue_morse():
    return Morphism.from_dict(THUE_MORSE)


def balanced_thue_morse_tower(seq, N):
    """v_n = (2^-(n+1), 2^-(n+1)) on the stationary a->ab, b->ba sequence."""
    return VectorTower(tuple((Fraction(1, 2 ** (n + 1)),) * 2 for n in range(N + 1)))

