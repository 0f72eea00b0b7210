"""Cylinder weight tables and the measure transfer map.

A :class:`WeightTable` stores the exact weights μ([w]) of all words of length
1..L (zero weights are simply absent) and the total mass μ([ε]). It stands
for every invariant measure that agrees with it up to length L.
"""

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels
from .symbols import Alphabet, apply_morphism, incidence_matrix


class CoverageError(ValueError):
    """The input table is too short for the requested output length."""

    def __init__(self, required, available):
        super().__init__(
            f"input table covers length {available}, transfer needs {required}")
        self.required = required
        self.available = available


def frac_str(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_frac(s):
    return Fraction(s)


class WeightTable:
    def __init__(self, alphabet, L, weights, mass=None, origin=None):
        self.alphabet = alphabet
        self.L = int(L)
        clean = {}
        for w, x in weights.items():
            w = bytes(w)
            x = Fraction(x)
            if not 1 <= len(w) <= self.L:
                raise ValueError(f"word of length {len(w)} in a table with L={self.L}")
            if x < 0:
                raise ValueError(f"negative weight {x} on {alphabet.format(w)}")
            if x:
                clean[w] = x
        self.weights = clean
        if mass is None:
            mass = sum((clean.get(bytes([a]), Fraction(0)) for a in range(alphabet.d)),
                       Fraction(0))
        self.mass = Fraction(mass)
        # word whose characteristic measure this table is, when known
        self.origin = origin

    def __getitem__(self, w):
        w = bytes(w)
        if not w:
            return self.mass
        if len(w) > self.L:
            raise KeyError(f"length {len(w)} beyond table length {self.L}")
        return self.weights.get(w, Fraction(0))

    def support(self, length=None):
        if length is None:
            return sorted(self.weights, key=lambda w: (len(w), w))
        return sorted(w for w in self.weights if len(w) == length)

    def scale(self, c):
        c = Fraction(c)
        return WeightTable(self.alphabet, self.L,
                           {w: c * x for w, x in self.weights.items()}, c * self.mass)

    def __add__(self, other):
        if self.alphabet != other.alphabet:
            raise ValueError("tables over different alphabets")
        L = min(self.L, other.L)
        out = {w: x for w, x in self.weights.items() if len(w) <= L}
        for w, x in other.weights.items():
            if len(w) <= L:
                out[w] = out.get(w, Fraction(0)) + x
        return WeightTable(self.alphabet, L, out, self.mass + other.mass)

    def restrict(self, L):
        if L > self.L:
            raise ValueError(f"cannot extend a table from {self.L} to {L}")
        return WeightTable(self.alphabet, L,
                           {w: x for w, x in self.weights.items() if len(w) <= L},
                           self.mass, self.origin)

    def normalized(self):
        """Probability view (divide by total mass); never applied implicitly."""
        if self.mass == 0:
            raise ZeroDivisionError("zero table has no normalization")
        return self.scale(1 / self.mass)

    def agrees_with(self, other, L=None):
        """Exact agreement on every cylinder up to length ``L``."""
        L = min(self.L, other.L) if L is None else L
        if self.alphabet != other.alphabet or self.mass != other.mass:
            return False
        mine = {w: x for w, x in self.weights.items() if len(w) <= L}
        theirs = {w: x for w, x in other.weights.items() if len(w) <= L}
        return mine == theirs

    def __eq__(self, other):
        if not isinstance(other, WeightTable):
            return NotImplemented
        return self.L == other.L and self.agrees_with(other)

    def __repr__(self):
        return (f"WeightTable(L={self.L}, mass={self.mass}, "
                f"support={len(self.weights)} words)")

    # -- serialization ----------------------------------------------------

    def to_dict(self):
        fmt = self.alphabet.format
        return {
            "alphabet": list(self.alphabet.letters),
            "L": self.L,
            "mass": frac_str(self.mass),
            "weights": {fmt(w): frac_str(x) for w, x in
                        sorted(self.weights.items(), key=lambda kv: (len(kv[0]), fmt(kv[0])))},
        }

    @classmethod
    def from_dict(cls, data):
        alphabet = Alphabet(tuple(data["alphabet"]))
        weights = {alphabet.parse(w): parse_frac(x) for w, x in data["weights"].items()}
        return cls(alphabet, data["L"], weights, parse_frac(data["mass"]))

    def to_csv(self):
        fmt = self.alphabet.format
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["word", "weight"])
        for word in sorted(fmt(w) for w in self.weights):
            writer.writerow([word, frac_str(self.weights[self.alphabet.parse(word)])])
        return buf.getvalue()


def characteristic_measure(w, L, alphabet):
    """μ_w up to length ``L``: μ_w([u]) counts the start positions i in
    [0, |w|) at which ``u`` occurs in w^∞."""
    w = bytes(w)
    if not w:
        raise ValueError("characteristic measure of the empty word")
    alphabet.check(w)
    counts = kernels.factor_counts(w, L, True)
    return WeightTable(alphabet, L, counts, len(w), origin=w)


def zero_table(alphabet, L):
    return WeightTable(alphabet, L, {}, 0)


@dataclass
class KirchhoffReport:
    checked: int
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations


def check_kirchhoff(table):
    """Exact check of μ(w) = Σ_a μ(aw) = Σ_a μ(wa) for all |w| <= L-1.

    Violations are returned as ``(word, value, left_sum, right_sum)``; the
    empty word stands for the total mass.
    """
    left, right = {}, {}
    zero = Fraction(0)
    for x, val in table.weights.items():
        if len(x) >= 1:
            left[x[1:]] = left.get(x[1:], zero) + val
            right[x[:-1]] = right.get(x[:-1], zero) + val
    candidates = {w for w in table.weights if len(w) <= table.L - 1}
    candidates |= set(left) | set(right)
    candidates.add(b"")
    violations = []
    for w in sorted(candidates, key=lambda u: (len(u), u)):
        value = table[w]
        ls = left.get(w, zero)
        rs = right.get(w, zero)
        if not (value == ls == rs):
            violations.append((w, value, ls, rs))
    return KirchhoffReport(len(candidates), violations)


def letter_frequency(table):
    """ζ(μ): the vector of single-letter weights."""
    return tuple(table[bytes([a])] for a in range(table.alphabet.d))


def required_length(sigma, L_out):
    """Input table length needed to transfer up to output length ``L_out``."""
    if L_out <= 1:
        return 1
    k = sigma.min_length
    return -(-(L_out - 2) // k) + 2


def transfer_measure(sigma, table, L_out):
    """μ^σ up to length ``L_out``.

    Each occurrence of an output word is charged to the unique shortest input
    word whose image covers it, i.e. counted as an essential occurrence.
    """
    if table.alphabet != sigma.source:
        raise ValueError("table alphabet differs from the morphism source")
    need = required_length(sigma, L_out)
    if table.L < need:
        raise CoverageError(need, table.L)
    images = sigma.images
    out = {}
    zero = Fraction(0)
    for w, weight in table.weights.items():
        if len(w) > need:
            continue
        image = apply_morphism(sigma, w)
        counts = kernels.essential_factor_counts(
            image, len(images[w[0]]), len(images[w[-1]]), L_out)
        for u, c in counts.items():
            out[u] = out.get(u, zero) + c * weight
    mass = sum((len(images[a]) * table[bytes([a])] for a in range(sigma.source.d)), zero)
    return WeightTable(sigma.target, L_out, out, mass)


@dataclass
class TransferReport:
    L_out: int
    checks: dict
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


def transfer_property_report(sigma, table, L_out):
    """Exact checks of mass, frequency commutation, cylinder inequality and
    characteristic coherence on one transfer."""
    out = transfer_measure(sigma, table, L_out)
    mat = incidence_matrix(sigma)
    src = sigma.source
    failures = []

    mass = sum(mat[j][k] * table[bytes([k])]
               for k in range(src.d) for j in range(sigma.target.d))
    checks = {"mass": out.mass == mass}
    if not checks["mass"]:
        failures.append(("mass", out.mass, mass))

    zeta_in = letter_frequency(table)
    zeta_out = letter_frequency(out)
    predicted = tuple(sum(row[k] * zeta_in[k] for k in range(src.d)) for row in mat)
    checks["frequency"] = zeta_out == predicted
    if not checks["frequency"]:
        failures.append(("frequency", zeta_out, predicted))

    ok_c = True
    for w in table.support():
        image = apply_morphism(sigma, w)
        if len(image) <= L_out and out[image] < table[w]:
            ok_c = False
            failures.append(("cylinder", w, out[image], table[w]))
    checks["cylinder"] = ok_c

    if table.origin is not None and table.L >= required_length(sigma, L_out):
        expected = characteristic_measure(apply_morphism(sigma, table.origin), L_out,
                                          sigma.target)
        checks["characteristic"] = out.agrees_with(expected)
        if not checks["characteristic"]:
            failures.append(("characteristic", table.origin))

    kirch = check_kirchhoff(out)
    checks["kirchhoff"] = kirch.ok
    if not kirch.ok:
        failures.append(("kirchhoff", kirch.violations[:5]))
    return TransferReport(L_out, checks, failures)
