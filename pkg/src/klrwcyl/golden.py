"""Worked small-quiver examples as executable identity checks.

Each check is ``(name, passed)``; :func:`run_all` drives the CLI's
``coulomb verify-examples`` and the acceptance tests.
"""

from __future__ import annotations

import random
from itertools import product

from .coulomb import (
    AbelianElement,
    abelian_image,
    abelian_multiply,
    abelianize_coweight,
    abelianize_minuscule_gl,
    d_pair,
    f0_identity_holds,
    superpotential_identity_holds,
)
from .laurent import LaurentPoly, LaurentRational, rational, var
from .quiver import MatterWeight, make_quiver, matter_weights


def _y(n, a=0, e=1):
    return var("y", n, a, e)


def _x(n, a=0, e=1):
    return var("x", n, a, e)


def _gen(lam, coords):
    return AbelianElement.generator(lam, coords)


def _times(e, c):
    return e.scale(c)


def pure_torus_checks():
    coords = (("1", 0),)
    out = []
    ok = all(
        abelian_multiply(_gen((a,), coords), _gen((b,), coords), []) == _gen((a + b,), coords)
        for a, b in product(range(-3, 4), repeat=2)
    )
    out.append(("pure GL1: r_a r_b = r_(a+b)", ok))
    return out


def two_node_checks():
    """Two rank-one nodes joined by an arrow 2 -> 1."""
    q = make_quiver(["1", "2"], [("2", "1")], {"1": 1, "2": 1})
    coords = tuple(q.torus_coords())
    ws, _ = matter_weights(q)
    disc = 1 - _y("2") * _y("1", 0, -1)
    mul = lambda a, b: abelian_multiply(_gen(a, coords), _gen(b, coords), ws)
    out = [
        ("(1)<-(1): r[1,1] r[-1,-1] = 1", mul((1, 1), (-1, -1)) == _gen((0, 0), coords)),
        ("(1)<-(1): r[1,0] r[-1,0] = 1 - y2/y1", mul((1, 0), (-1, 0)) == _times(_gen((0, 0), coords), disc)),
        ("(1)<-(1): r[0,1] r[0,-1] = 1 - y2/y1", mul((0, 1), (0, -1)) == _times(_gen((0, 0), coords), disc)),
        ("(1)<-(1): r[1,0] r[0,1] = r[1,1] (1 - y2/y1)", mul((1, 0), (0, 1)) == _times(_gen((1, 1), coords), disc)),
    ]
    images = {
        (1, 0): _x("1"),
        (-1, 0): _x("1", 0, -1) * disc,
        (0, 1): _x("2") * disc,
        (0, -1): _x("2", 0, -1),
        (1, 1): _x("1") * _x("2"),
        (-1, -1): _x("1", 0, -1) * _x("2", 0, -1),
    }
    for lam, want in images.items():
        got = abelian_image(_gen(lam, coords), ws)
        other = abelianize_coweight(q, lam)
        out.append((f"(1)<-(1): ab r{list(lam)}", got == want and other == want))
    return out


def framed_rank_one_checks():
    """GL1 with one or two framing lines, undeformed and deformed."""
    out = []
    coords = (("1", 0),)
    w = MatterWeight((1,), None)
    c = 1 - _y("1", 0, -1)
    ok = True
    for a, b in product(range(-3, 4), repeat=2):
        k = 0 if a * b >= 0 else min(abs(a), abs(b))
        want = _times(_gen((a + b,), coords), c ** k)
        ok = ok and abelian_multiply(_gen((a,), coords), _gen((b,), coords), [w]) == want
    out.append(("[1]->(1): r_a r_b = r_(a+b) (1 - 1/y)^d(a,b)", ok))
    uv = abelian_multiply(_gen((1,), coords), _gen((-1,), coords), [w])
    out.append(("[1]->(1): uv = 1 - 1/y", uv == _times(_gen((0,), coords), c)))
    q2 = make_quiver(["1"], [], {"1": 1}, {"1": 2})
    _, fr = matter_weights(q2)
    uv2 = abelian_multiply(_gen((1,), coords), _gen((-1,), coords), [MatterWeight(f.xi) for f in fr])
    out.append(("[2]->(1): uv = (1 - 1/y)^2", uv2 == _times(_gen((0,), coords), c * c)))
    uv3 = abelian_multiply(_gen((1,), coords), _gen((-1,), coords), fr)
    want = (1 - var("a", "1", 0) * _y("1", 0, -1)) * (1 - var("a", "1", 1) * _y("1", 0, -1))
    out.append(("[2]->(1) deformed: uv = (1 - a1/y)(1 - a2/y)", uv3 == _times(_gen((0,), coords), want)))
    return out


def gl2_checks():
    n = "1"
    r11 = rational(_x(n, 0) * _x(n, 1))
    r10 = LaurentRational(_x(n, 0), 1 - _y(n, 1) * _y(n, 0, -1)) + LaurentRational(_x(n, 1), 1 - _y(n, 0) * _y(n, 1, -1))
    rm11 = rational(_x(n, 0, -1) * _x(n, 1, -1))
    rm10 = LaurentRational(_x(n, 0, -1), 1 - _y(n, 0) * _y(n, 1, -1)) + LaurentRational(
        _x(n, 1, -1), 1 - _y(n, 1) * _y(n, 0, -1)
    )
    q = make_quiver([n], [], {n: 2})
    out = []
    for name, want, gl, lam in [
        ("r[1,1]", r11, abelianize_minuscule_gl(2, 2, 0, +1), (1, 1)),
        ("r[1,0]", r10, abelianize_minuscule_gl(2, 1, 0, +1), (1, 0)),
        ("r[-1,-1]", rm11, abelianize_minuscule_gl(2, 2, 0, -1), (-1, -1)),
        ("r[-1,0]", rm10, abelianize_minuscule_gl(2, 1, 0, -1), (0, -1)),
    ]:
        out.append((f"GL2: ab {name}", want == gl == abelianize_coweight(q, lam)))
    out.append(("GL2: ab r[1,1] * ab r[-1,-1] = 1", r11 * rm11 == 1))
    return out


def rank_two_one_checks():
    """Node 1 of rank two, node 2 of rank one, arrow 2 -> 1."""
    q = make_quiver(["1", "2"], [("2", "1")], {"1": 2, "2": 1})
    y11, y12, y2 = _y("1", 0), _y("1", 1), _y("2")
    x11, x12, x2 = _x("1", 0), _x("1", 1), _x("2")
    m1 = 1 - y2 * y11 ** -1
    m2 = 1 - y2 * y12 ** -1
    inv = lambda p: p ** -1
    want = {
        (1, 0, 0): LaurentRational(x11, 1 - y12 * inv(y11)) + LaurentRational(x12, 1 - y11 * inv(y12)),
        (1, 1, 0): rational(x11 * x12),
        (-1, -1, 0): rational(inv(x11) * inv(x12) * m1 * m2),
        # The x exponents here are -1: the denominators are those of the
        # negative orbit, and the image must invert the (1, 0, 0) one's orbit.
        (0, -1, 0): LaurentRational(inv(x11) * m1, 1 - y11 * inv(y12)) + LaurentRational(inv(x12) * m2, 1 - y12 * inv(y11)),
        (0, 0, 1): rational(x2 * m1 * m2),
        (0, 0, -1): rational(inv(x2)),
    }
    return [(f"(2)<-(1): ab r{list(lam)}", abelianize_coweight(q, lam) == w) for lam, w in want.items()]


def a3_quivers(max_dim=2, max_framing=1):
    """All A3 quivers (both orientations of each edge) with small dims/framings."""
    for o1, o2 in product((("1", "2"), ("2", "1")), (("2", "3"), ("3", "2"))):
        for dims in product(range(1, max_dim + 1), repeat=3):
            for fr in product(range(max_framing + 1), repeat=3):
                yield make_quiver(
                    ["1", "2", "3"], [o1, o2], dict(zip("123", dims)), dict(zip("123", fr))
                )


def a3_checks(sample=None, seed=0):
    qs = list(a3_quivers())
    if sample is not None and sample < len(qs):
        qs = random.Random(seed).sample(qs, sample)
    sp = all(superpotential_identity_holds(q) for q in qs)
    f0 = all(f0_identity_holds(q) for q in qs)
    return [
        (f"A3 ({len(qs)} quivers): sum of u = sum of dual fundamental monopoles", sp),
        (f"A3 ({len(qs)} quivers): f0 = product of x after eliminating u", f0),
    ]


def cocycle_checks(samples=10000, seed=0):
    rng = random.Random(seed)
    ok = True
    for _ in range(samples):
        l, m, n = (rng.randint(-6, 6) for _ in range(3))
        if d_pair(l, m) + d_pair(l + m, n) != d_pair(m, n) + d_pair(l, m + n):
            ok = False
            break
    return [(f"d cocycle identity ({samples} samples)", ok)]


def run_all(seed=0, a3_sample=None):
    out = []
    out += pure_torus_checks()
    out += two_node_checks()
    out += framed_rank_one_checks()
    out += gl2_checks()
    out += rank_two_one_checks()
    out += a3_checks(a3_sample, seed)
    out += cocycle_checks(seed=seed)
    return out
