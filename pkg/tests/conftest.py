import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from nafnet import LeviCivita, RationalFunction, build_network
from nafnet.fields import Poly

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def record_criterion():
    def record(label, ok, detail=""):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {label}" + (f" ({detail})" if detail else ""))
        return ok

    return record


small_ints = st.integers(min_value=-6, max_value=6)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)
nonzero_rationals = rationals.filter(bool)
positive_rationals = st.fractions(min_value=Fraction(1, 7), max_value=6, max_denominator=7)


@st.composite
def lc_exact(draw, max_terms=4):
    """Exact Levi-Civita elements: short Laurent polynomials with integer or half-integer exponents."""
    n = draw(st.integers(min_value=0, max_value=max_terms))
    exps = draw(st.lists(st.integers(min_value=-4, max_value=6), min_size=n, max_size=n, unique=True))
    half = draw(st.booleans())
    coefs = draw(st.lists(nonzero_rationals, min_size=n, max_size=n))
    return LeviCivita([(Fraction(e, 2 if half else 1), c) for e, c in zip(exps, coefs)])


lc_nonzero = lc_exact().filter(lambda x: bool(x.terms))


@st.composite
def polys(draw, max_degree=3, nonzero=False):
    coefs = draw(st.lists(rationals, min_size=1, max_size=max_degree + 1))
    p = Poly(coefs)
    if nonzero and not p:
        p = Poly([draw(nonzero_rationals)])
    return p


@st.composite
def ratfuncs(draw, nonzero=False):
    num = draw(polys(nonzero=nonzero))
    den = draw(polys(nonzero=True))
    return RationalFunction(num, den)


def random_network(rng, max_vertices=8, weight=None):
    """Connected graph on 2..max_vertices vertices: random tree plus random chords."""
    n = rng.randint(2, max_vertices)
    names = [f"v{i}" for i in range(n)]
    rng.shuffle(names)
    edges = {}
    for i in range(1, n):
        j = rng.randrange(i)
        edges[tuple(sorted((names[i], names[j])))] = None
    p_extra = rng.choice([0.0, 0.15, 0.35, 0.6])
    for i in range(n):
        for j in range(i + 1, n):
            key = tuple(sorted((names[i], names[j])))
            if key not in edges and rng.random() < p_extra:
                edges[key] = None
    weight = weight or (lambda: Fraction(rng.randint(1, 9), rng.randint(1, 9)))
    source = names[0]
    others = names[1:]
    k = rng.randint(1, max(1, len(others) // 2))
    boundary = rng.sample(others, k)
    return build_network([(u, v, weight()) for u, v in edges], source, boundary)


def random_networks(count, seed, max_vertices=8):
    rng = random.Random(seed)
    return [random_network(rng, max_vertices) for _ in range(count)]


@pytest.fixture
def path_network():
    return build_network([("a0", "x", 1), ("x", "a1", 1)], "a0", ["a1"])
