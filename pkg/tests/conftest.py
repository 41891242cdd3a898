import os
import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from valslice.functions import ValFun
from valslice.ideals import minimalize
from valslice.sampling import COEFFICIENTS

settings.register_profile("default", max_examples=60, deadline=None, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def ideals(draw, n=None, max_exp=5, max_gens=3):
    if n is None:
        n = draw(st.integers(1, 3))
    gens = draw(st.lists(st.tuples(*[st.integers(0, max_exp)] * n), min_size=1, max_size=max_gens))
    return minimalize(gens, n)


@st.composite
def ideal_functions(draw, n=None, max_ideals=3, max_exp=5):
    if n is None:
        n = draw(st.integers(1, 3))
    terms = draw(st.lists(st.tuples(st.sampled_from(COEFFICIENTS), ideals(n, max_exp)), min_size=1,
                          max_size=max_ideals))
    return ValFun.combination(terms)


@st.composite
def qpsh_functions(draw, n=None, max_atoms=2, max_exp=5):
    if n is None:
        n = draw(st.integers(1, 3))
    atoms = draw(st.lists(ideal_functions(n, 2, max_exp), min_size=1, max_size=max_atoms))
    return ValFun(n, tuple(a for f in atoms for a in f.atoms))


@st.composite
def valfuns(draw, n=None, max_atoms=2, max_exp=5):
    if n is None:
        n = draw(st.integers(1, 3))
    signed = st.sampled_from(COEFFICIENTS + tuple(-c for c in COEFFICIENTS))
    atom = st.lists(st.tuples(signed, ideals(n, max_exp)), min_size=1, max_size=2)
    atoms = draw(st.lists(atom, min_size=1, max_size=max_atoms))
    return ValFun(n, tuple(tuple(a) for a in atoms))


def weights(n, top=6):
    return st.tuples(*[st.integers(0, top)] * n).filter(any)


def rationals(lo=0, hi=3, den=6):
    return st.fractions(min_value=lo, max_value=hi, max_denominator=den)


@pytest.fixture
def rng():
    return random.Random(20240611)


ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
