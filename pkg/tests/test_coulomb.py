import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from klrwcyl import golden
from klrwcyl.coulomb import (
    AbelianElement,
    abelian_image,
    abelian_multiply,
    abelianize_coweight,
    abelianize_minuscule_gl,
    abelianize_quiver_monopole,
    d_pair,
    f0,
    f0_identity_holds,
    monopole_coweight,
    remove_matter_pullback,
    superpotential,
    superpotential_identity_holds,
    swap_within_node,
    u_coordinates,
)
from klrwcyl.errors import IndexOutOfRange, InvalidInput, RankMismatch, UnknownNode
from klrwcyl.laurent import LaurentRational, rational, var
from klrwcyl.quiver import MatterWeight, make_quiver, matter_weights


def y(n, a=0, e=1):
    return var("y", n, a, e)


def x(n, a=0, e=1):
    return var("x", n, a, e)


@pytest.mark.parametrize(
    "k, l, d",
    [(0, 0, 0), (0, -3, 0), (2, 3, 0), (-2, -1, 0), (2, -1, 1), (-3, 2, 2), (1, -5, 1)],
)
def test_d_pair(k, l, d):
    assert d_pair(k, l) == d == d_pair(l, k)


@pytest.mark.parametrize("check", [
    golden.pure_torus_checks,
    golden.two_node_checks,
    golden.framed_rank_one_checks,
    golden.gl2_checks,
    golden.rank_two_one_checks,
])
def test_worked_examples(check):
    for name, ok in check():
        assert ok, name


def test_a3_identities_sample():
    for name, ok in golden.a3_checks(sample=24, seed=3):
        assert ok, name


def test_remove_matter_pullback():
    coords = (("1", 0),)
    w = MatterWeight((1,))
    e = AbelianElement.generator((-2,), coords) + AbelianElement.generator((1,), coords)
    got = remove_matter_pullback(e, [w])
    c = 1 - y("1", 0, -1)
    want = AbelianElement(coords, {(-2,): c * c, (1,): 1})
    assert got == want


def test_pullback_is_multiplicative():
    # dropping matter lines maps products to products
    coords = (("1", 0), ("2", 0))
    kept = [MatterWeight((1, -1))]
    dropped = [MatterWeight((1, 0))]
    rng = random.Random(4)
    for _ in range(50):
        lam, mu = (tuple(rng.randint(-2, 2) for _ in range(2)) for _ in range(2))
        g1, g2 = AbelianElement.generator(lam, coords), AbelianElement.generator(mu, coords)
        lhs = remove_matter_pullback(abelian_multiply(g1, g2, kept + dropped), dropped)
        rhs = abelian_multiply(remove_matter_pullback(g1, dropped), remove_matter_pullback(g2, dropped), kept)
        assert lhs == rhs


@settings(max_examples=150, deadline=None)
@given(
    st.lists(st.integers(-2, 2), min_size=2, max_size=2),
    st.lists(st.integers(-2, 2), min_size=2, max_size=2),
    st.lists(st.lists(st.integers(-1, 1), min_size=2, max_size=2), max_size=3),
)
def test_abelianization_is_multiplicative(lam, mu, xis):
    coords = (("1", 0), ("2", 0))
    ws = [MatterWeight(tuple(xi)) for xi in xis if any(xi)]
    g1, g2 = AbelianElement.generator(lam, coords), AbelianElement.generator(mu, coords)
    prod_img = abelian_image(abelian_multiply(g1, g2, ws), ws)
    assert prod_img == abelian_image(g1, ws) * abelian_image(g2, ws)


def test_rank_mismatch():
    a = AbelianElement.generator((1,))
    b = AbelianElement.generator((1, 0))
    with pytest.raises(RankMismatch):
        abelian_multiply(a, b, [])
    with pytest.raises(RankMismatch):
        abelian_multiply(a, a, [MatterWeight((1, 1))])
    with pytest.raises(RankMismatch):
        AbelianElement((("1", 0),), {(1, 2): 1})


def test_minuscule_gl_index_checks():
    with pytest.raises(IndexOutOfRange):
        abelianize_minuscule_gl(2, 3, 0)
    with pytest.raises(IndexOutOfRange):
        abelianize_minuscule_gl(2, 1, 2)


def test_minuscule_gl_dressed_class():
    # p = 1 inserts the elementary symmetric function of the moved y's
    got = abelianize_minuscule_gl(2, 1, 1)
    want = LaurentRational(x("1", 0) * y("1", 0), 1 - y("1", 1) * y("1", 0, -1)) + LaurentRational(
        x("1", 1) * y("1", 1), 1 - y("1", 0) * y("1", 1, -1)
    )
    assert got == want


def _weyl_quivers():
    return [
        make_quiver(["1"], [], {"1": 2}),
        make_quiver(["1"], [], {"1": 3}, {"1": 1}),
        make_quiver(["1", "2"], [("2", "1")], {"1": 2, "2": 1}, {"1": 1}),
        make_quiver(["1", "2"], [("1", "2")], {"1": 2, "2": 2}, {"2": 1}),
    ]


@pytest.mark.parametrize("q", _weyl_quivers(), ids=lambda q: str(q.dims))
def test_monopoles_are_weyl_invariant(q):
    for node, d in zip(q.nodes, q.dims):
        for kind in ("plus", "minus", "ones"):
            r = abelianize_quiver_monopole(q, node, kind)
            for a, b in product(range(d), repeat=2):
                if a < b:
                    for n2, d2 in zip(q.nodes, q.dims):
                        if b < d2:
                            assert swap_within_node(r, n2, a, b) == r


def test_u_coordinates_are_permuted_by_weyl_group():
    q = make_quiver(["1", "2"], [("2", "1")], {"1": 2, "2": 1}, {"1": 1})
    us = u_coordinates(q)
    assert swap_within_node(us[("1", 0)], "1", 0, 1) == us[("1", 1)]


def test_u_coordinate_framed_rank_one():
    q = make_quiver(["1"], [], {"1": 1}, {"1": 1})
    (u,) = u_coordinates(q).values()
    assert u == rational(x("1", 0, -1) * (1 - var("a", "1", 0) * y("1", 0, -1)))
    assert superpotential(q) == u


def test_f0_unframed_rank_one():
    q = make_quiver(["1"], [], {"1": 1})
    assert f0(q).text() == "u[1,1]^-1"
    assert f0_identity_holds(q)


@pytest.mark.parametrize("q", _weyl_quivers(), ids=lambda q: str(q.dims))
def test_identities_beyond_a3(q):
    assert superpotential_identity_holds(q)
    assert f0_identity_holds(q)


def test_monopole_coweights():
    q = make_quiver(["1", "2"], [("2", "1")], {"1": 2, "2": 1})
    assert monopole_coweight(q, "1", "plus") == {"1": (1, 0), "2": (0,)}
    assert monopole_coweight(q, "1", "minus") == {"1": (0, -1), "2": (0,)}
    assert monopole_coweight(q, "2", "ones") == monopole_coweight(q, "1", "ones")
    with pytest.raises(UnknownNode):
        monopole_coweight(q, "7", "plus")
    with pytest.raises(InvalidInput):
        monopole_coweight(q, "1", "sideways")


def test_non_minuscule_coweight_rejected():
    q = make_quiver(["1"], [], {"1": 2})
    with pytest.raises(InvalidInput):
        abelianize_coweight(q, (2, 0))
    with pytest.raises(RankMismatch):
        abelianize_coweight(q, (1,))


def test_undeformed_specialization():
    q = make_quiver(["1"], [], {"1": 1}, {"1": 1})
    r = abelianize_coweight(q, (-1,), deformed=False)
    assert r == rational(x("1", 0, -1) * (1 - y("1", 0, -1)))


def test_arrow_weights_feed_monopoles():
    # arrow 2 -> 1 between rank-one nodes: r[0,1] picks up 1 - y2/y1
    q = make_quiver(["1", "2"], [("2", "1")], {"1": 1, "2": 1})
    ws, _ = matter_weights(q)
    assert abelianize_coweight(q, (0, 1)) == rational(x("2") * (1 - y("2") * y("1", 0, -1)))
    assert abelian_image(AbelianElement.generator((0, 1), tuple(q.torus_coords())), ws) == x("2") * (
        1 - y("2") * y("1", 0, -1)
    )
