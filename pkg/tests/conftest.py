import os
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from sadic import Alphabet, Morphism
from sadic.constructions import fibonacci, thue_morse
from sadic.directive import DirectiveSequence

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

LETTERS = "abcd"
TARGETS = "wxyz"


@st.composite
def morphisms(draw, max_src=4, max_tgt=4, max_len=5, source=None, target=None):
    if source is None:
        source = Alphabet(tuple(LETTERS[:draw(st.integers(1, max_src))]))
    if target is None:
        target = Alphabet(tuple(TARGETS[:draw(st.integers(1, max_tgt))]))
    images = tuple(
        bytes(draw(st.lists(st.integers(0, target.d - 1), min_size=1, max_size=max_len)))
        for _ in range(source.d))
    return Morphism(source, target, images)


def words(alphabet, min_size=1, max_size=6):
    return st.lists(st.integers(0, alphabet.d - 1), min_size=min_size,
                    max_size=max_size).map(bytes)


def fib_seq(depth=16):
    return DirectiveSequence.stationary(fibonacci(), depth)


def tm_seq(depth=14):
    return DirectiveSequence.stationary(thue_morse(), depth)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
