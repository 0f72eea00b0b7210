from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sadic import (Alphabet, Morphism, WeightTable, characteristic_measure, check_kirchhoff,
                   compose, letter_frequency, transfer_measure, transfer_property_report)
from sadic.constructions import fibonacci
from sadic.measures import CoverageError, frac_str, required_length, zero_table
from sadic.symbols import cyclic_count, essential_occurrences

from conftest import morphisms, words

AB = Alphabet(("a", "b"))
CD = Alphabet(("c", "d"))
SIGMA0 = Morphism.from_strings("ab", "cd", {"a": "cd", "b": "dc"})


def mu(text, L, alph=AB):
    return characteristic_measure(alph.parse(text), L, alph)


def cyclic_oracle(w, L, alph):
    """μ_w by direct cyclic counting of every word up to length L."""
    table = {}
    for k in range(1, L + 1):
        for u in alph.words(k):
            c = cyclic_count(w, u)
            if c:
                table[u] = c
    return table


def transfer_oracle(sigma, table, L_out):
    """The defining sum, term by term, over every word of the source table."""
    need = required_length(sigma, L_out)
    out = {}
    for k in range(1, L_out + 1):
        for u in sigma.target.words(k):
            if k == 1:
                val = sum(sigma.images[a].count(u[0]) * table[bytes([a])]
                          for a in range(sigma.source.d))
            else:
                val = sum(essential_occurrences(sigma, w, u) * x
                          for w, x in table.weights.items() if len(w) <= need)
            if val:
                out[u] = val
    return out


class TestCharacteristic:
    def test_aab(self):
        t = mu("aab", 4)
        assert letter_frequency(t) == (2, 1)
        assert t.mass == 3

    def test_single_letter(self):
        t = mu("a", 3)
        assert (t[b"\x00"], t[b"\x01"], t[b"\x00\x00"]) == (1, 0, 1)

    def test_cdcddc(self):
        t = mu("cdcddc", 6, CD)
        assert t[CD.parse("cd")] == 2 and t[CD.parse("dc")] == 2

    def test_power(self):
        assert mu("abab", 5).weights == mu("ab", 5).scale(2).weights

    @given(words(AB, 1, 6), st.integers(1, 7))
    def test_oracle(self, w, L):
        t = characteristic_measure(w, L, AB)
        assert t.weights == cyclic_oracle(w, L, AB)
        assert check_kirchhoff(t).ok

    def test_empty_word(self):
        with pytest.raises(ValueError):
            characteristic_measure(b"", 3, AB)


class TestKirchhoff:
    def test_aab(self):
        t = mu("aab", 3)
        assert t[AB.parse("a")] == t[AB.parse("aa")] + t[AB.parse("ab")] == 2
        assert check_kirchhoff(t).ok

    def test_zero(self):
        assert check_kirchhoff(zero_table(AB, 4)).ok

    def test_corrupt(self):
        t = mu("aab", 3)
        w = dict(t.weights)
        w[AB.parse("aa")] += 1
        rep = check_kirchhoff(WeightTable(AB, 3, w, t.mass))
        assert not rep.ok
        flagged = {AB.format(v[0]) for v in rep.violations}
        assert "a" in flagged


class TestFrequency:
    def test_examples(self):
        assert letter_frequency(mu("aab", 2)) == (2, 1)
        assert letter_frequency(mu("bba", 2)) == (1, 2)
        assert letter_frequency(mu("aab", 2).scale(3)) == (6, 3)


class TestTransfer:
    def test_fibonacci(self):
        out = transfer_measure(fibonacci(), mu("ab", 3), 3)
        assert out[AB.parse("ab")] == 1
        assert out.agrees_with(mu("aba", 3))
        assert out.mass == 3

    def test_example(self):
        out = transfer_measure(SIGMA0, mu("aab", 6), 6)
        assert out.agrees_with(mu("cdcddc", 6, CD))
        assert out[CD.parse("cd")] == out[CD.parse("dc")] == 2

    def test_identity(self):
        t = mu("aabab", 5)
        assert transfer_measure(Morphism.identity(AB), t, 5) == t

    def test_coverage(self):
        with pytest.raises(CoverageError) as exc:
            transfer_measure(fibonacci(), mu("ab", 3), 8)
        assert exc.value.required == 8

    def test_required_length(self):
        assert required_length(fibonacci(), 1) == 1
        assert required_length(fibonacci(), 6) == 6
        assert required_length(SIGMA0, 6) == 4

    @given(st.data())
    def test_against_defining_sum(self, data):
        s = data.draw(morphisms(max_src=3, max_tgt=3, max_len=3))
        w = data.draw(words(s.source, 1, 4))
        L_out = data.draw(st.integers(1, 4))
        t = characteristic_measure(w, required_length(s, L_out), s.source)
        assert transfer_measure(s, t, L_out).weights == transfer_oracle(s, t, L_out)

    @given(st.data())
    def test_linearity(self, data):
        s = data.draw(morphisms())
        w1 = data.draw(words(s.source))
        w2 = data.draw(words(s.source))
        a = Fraction(data.draw(st.integers(0, 5)), data.draw(st.integers(1, 4)))
        b = Fraction(data.draw(st.integers(0, 5)), data.draw(st.integers(1, 4)))
        L_out = 5
        need = required_length(s, L_out)
        t1 = characteristic_measure(w1, need, s.source)
        t2 = characteristic_measure(w2, need, s.source)
        lhs = transfer_measure(s, t1.scale(a) + t2.scale(b), L_out)
        rhs = (transfer_measure(s, t1, L_out).scale(a)
               + transfer_measure(s, t2, L_out).scale(b))
        assert lhs == rhs

    @given(st.data())
    def test_functorial(self, data):
        s1 = data.draw(morphisms())
        s2 = data.draw(morphisms(source=s1.target, target=Alphabet(("p", "q", "r"))))
        w = data.draw(words(s1.source))
        L2 = data.draw(st.integers(1, 6))
        L1 = required_length(s2, L2)
        L0 = max(required_length(s1, L1), required_length(compose(s2, s1), L2))
        t = characteristic_measure(w, L0, s1.source)
        two_step = transfer_measure(s2, transfer_measure(s1, t, L1), L2)
        assert two_step == transfer_measure(compose(s2, s1), t, L2)

    @given(st.data())
    def test_property_report(self, data):
        s = data.draw(morphisms())
        w = data.draw(words(s.source))
        L_out = data.draw(st.integers(1, 7))
        t = characteristic_measure(w, required_length(s, L_out), s.source)
        rep = transfer_property_report(s, t, L_out)
        assert rep.ok, rep.failures
        assert set(rep.checks) == {"mass", "frequency", "cylinder", "characteristic",
                                   "kirchhoff"}


def test_property_report_example():
    rep = transfer_property_report(fibonacci(), mu("ab", 3), 3)
    assert rep.ok and rep.checks["characteristic"]
    out = transfer_measure(fibonacci(), mu("ab", 3), 3)
    assert out.mass == 3 and letter_frequency(out) == (2, 1)


def test_serialization():
    t = mu("aab", 3)
    data = t.to_dict()
    assert data["mass"] == "3/1"
    assert data["weights"]["ab"] == "1/1"
    assert WeightTable.from_dict(data) == t
    lines = t.to_csv().splitlines()
    assert lines[0] == "word,weight"
    assert [r.split(",")[0] for r in lines[1:]] == sorted(r.split(",")[0] for r in lines[1:])
    assert frac_str(Fraction(2, 4)) == "1/2"


def test_normalized():
    t = mu("aab", 2).normalized()
    assert t.mass == 1 and t[AB.parse("a")] == Fraction(2, 3)
    with pytest.raises(ZeroDivisionError):
        zero_table(AB, 2).normalized()
