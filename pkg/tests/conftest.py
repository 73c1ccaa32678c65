"""Shared builders for the test suite."""

import random
from fractions import Fraction as F

import pytest

from klrwcyl.coeffs import CoeffPoly
from klrwcyl.engine import WordBuilder, normal_form
from klrwcyl.errors import KLRWError
from klrwcyl.quiver import make_quiver, validate_configuration
from klrwcyl.strands import crossings, q_grading, qi_winding

HBAR = CoeffPoly.monomial(1, 0)
ETA = CoeffPoly.monomial(0, 1)


def relation_quivers():
    """The quivers on which the diagram relations are exercised."""
    return {
        "A1 d=2": make_quiver(["1"], [], {"1": 2}),
        "A2 d=(1,1) 2->1": make_quiver(["1", "2"], [("2", "1")], {"1": 1, "2": 1}),
        "A2 d=(1,1) 1->2": make_quiver(["1", "2"], [("1", "2")], {"1": 1, "2": 1}),
        "A2 d=(2,1) 2->1": make_quiver(["1", "2"], [("2", "1")], {"1": 2, "2": 1}),
        "A2 d=(2,1) 1->2": make_quiver(["1", "2"], [("1", "2")], {"1": 2, "2": 1}),
        "A1xA1 d=(1,1) unrelated": make_quiver(["1", "2"], [], {"1": 1, "2": 1}),
        "framed A1 d=1 m=1": make_quiver(["1"], [], {"1": 1}, {"1": 1}),
        "framed A1 d=2 m=1": make_quiver(["1"], [], {"1": 2}, {"1": 1}),
    }


def oracle_quiver():
    """Two nodes, arrow 2 -> 1, dims (2, 1), one framing line on node 1."""
    return make_quiver(["1", "2"], [("2", "1")], {"1": 2, "2": 1}, {"1": 1})


def random_configuration(q, rng, red=None, denom=48):
    """Random configuration with distinct angles k/denom; ``red`` fixes the red points."""
    nb = sum(q.dims)
    nr = sum(q.framings)
    while True:
        if red is None:
            angs = rng.sample(range(denom), nb + nr)
            it = iter(angs)
            red_pts = {n: [F(next(it), denom) for _ in range(m)] for n, m in zip(q.nodes, q.framings)}
        else:
            taken = {a for pts in red.values() for a in pts}
            free = [k for k in range(denom) if F(k, denom) not in taken]
            it = iter(rng.sample(free, nb))
            red_pts = red
        black = {n: [F(next(it), denom) for _ in range(d)] for n, d in zip(q.nodes, q.dims)}
        try:
            return validate_configuration(q, red_pts, black)
        except KLRWError:
            continue


def configuration_family(q, rng, count, denom=48):
    """``count`` configurations sharing their red points."""
    first = random_configuration(q, rng, denom=denom)
    red = {n: list(g) for n, g in zip(q.nodes, first.red)}
    return [first] + [random_configuration(q, rng, red, denom) for _ in range(count - 1)]


# A reference line away from every angle the tests produce (k/48 and midpoints),
# so q_i windings add up under stacking.
THETA = F(1, 997)


def grading_of(d, theta=THETA):
    return q_grading(d), tuple(sorted(qi_winding(d, theta).items()))


def word_grading(w, theta=THETA):
    q = sum(q_grading(st.diagram) for st in w.steps)
    qi = {n: 0 for n in w.source.quiver.nodes}
    for st in w.steps:
        for n, v in qi_winding(st.diagram, theta).items():
            qi[n] += v
    return q, tuple(sorted(qi.items()))


def add_gradings(*gs):
    q = sum(g[0] for g in gs)
    qi = {}
    for g in gs:
        for n, v in g[1]:
            qi[n] = qi.get(n, 0) + v
    return q, tuple(sorted(qi.items()))


def homogeneity_violations(m, expected):
    """Terms of ``m`` whose (q, q_i) grading differs from ``expected``."""
    return [d for d in m.terms if grading_of(d) != expected]


def filtration_violations(out, d12, d23):
    q = d12.source.quiver
    a = crossings(d12).vector(q)
    b = crossings(d23).vector(q)
    bound = [x + y for x, y in zip(a, b)]
    bad = []
    for d in out.terms:
        v = crossings(d).vector(q)
        if any(x > y for x, y in zip(v, bound)):
            bad.append(d)
    return bad


def nf(builder):
    return normal_form(builder.word())


@pytest.fixture
def rng():
    return random.Random(20240611)


__all__ = [
    "THETA",
    "add_gradings",
    "ETA",
    "HBAR",
    "WordBuilder",
    "configuration_family",
    "filtration_violations",
    "grading_of",
    "homogeneity_violations",
    "nf",
    "oracle_quiver",
    "random_configuration",
    "relation_quivers",
    "word_grading",
]
