"""Weighted taut strand diagrams on the cylinder.

A strand is recorded by its endpoint lifts to the universal cover: it starts
at the source angle ``b`` in [0, 1) and ends at ``e = top angle + wind``.
The canonical representative draws every strand as a straight segment in the
cover, which realizes the minimal number of crossings with every translate of
every other strand.
"""

from __future__ import annotations

import math
from fractions import Fraction
from dataclasses import dataclass
from itertools import permutations, product

from .errors import MismatchedConfigurations, NotABijection
from .quiver import Configuration


@dataclass(frozen=True)
class StrandLift:
    label: str
    bottom: object  # Fraction in [0, 1)
    top_real: object  # Fraction: top angle + winding
    weight: int


@dataclass(frozen=True)
class TautDiagram:
    """Isotopy class of a weighted taut diagram from ``source`` to ``target``.

    ``strands[ni]`` lists ``(from, to, wind, weight)`` for the black points of
    node ``ni`` (declaration order), sorted by ``from``; indices are 0-based
    positions in the sorted angle tuples of the configurations.
    """

    source: Configuration
    target: Configuration
    strands: tuple

    def lifts(self):
        """``(node_index, from, b, e, weight)`` for every black strand."""
        out = []
        for ni, group in enumerate(self.strands):
            src = self.source.black[ni]
            tgt = self.target.black[ni]
            for a, b, w, k in group:
                out.append((ni, a, src[a], tgt[b] + w, k))
        return out

    def strand_lifts(self):
        q = self.source.quiver
        return [StrandLift(q.nodes[ni], b, e, k) for ni, _, b, e, k in self.lifts()]

    def is_identity(self):
        return self.source == self.target and all(
            a == b and w == 0 and k == 0 for g in self.strands for a, b, w, k in g
        )

    def total_weight(self):
        return sum(k for g in self.strands for *_, k in g)

    def to_json(self):
        q = self.source.quiver
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "strands": {
                q.nodes[ni]: [
                    {"from": a + 1, "to": b + 1, "wind": w, "weight": k} for a, b, w, k in g
                ]
                for ni, g in enumerate(self.strands)
            },
        }

    def text(self):
        """Compact one-line description used by the CLI."""
        if self.is_identity():
            return "identity"
        q = self.source.quiver
        parts = []
        for ni, g in enumerate(self.strands):
            if not g:
                continue
            inner = ",".join(
                f"{a + 1}->{b + 1}" + (f"w{w}" if w else "") + (f"*{k}" if k else "")
                for a, b, w, k in g
            )
            parts.append(f"{q.nodes[ni]}:{inner}")
        return "[" + " ".join(parts) + "]"

    def __repr__(self):
        return f"TautDiagram({self.text()})"


def _check_pair(source, target):
    if source.quiver != target.quiver:
        raise MismatchedConfigurations("configurations belong to different quivers")
    if source.red != target.red:
        raise MismatchedConfigurations("red points differ between source and target")


def make_taut(source: Configuration, target: Configuration, matching, weights=None) -> TautDiagram:
    """Canonical taut diagram with the given endpoint lifts and dots.

    ``matching`` maps a node to a list of ``(from, to, wind)`` triples with
    0-based indices; ``weights`` optionally maps a node to a list of dot counts
    indexed by ``from`` (or to a dict ``from -> count``).
    """
    _check_pair(source, target)
    q = source.quiver
    weights = weights or {}
    groups = []
    for ni, node in enumerate(q.nodes):
        d = q.dims[ni]
        entries = list(matching.get(node, ()))
        if len(entries) != d:
            raise NotABijection(f"node {node!r}: {len(entries)} strands for {d} points")
        srcs = sorted(e[0] for e in entries)
        tgts = sorted(e[1] for e in entries)
        if srcs != list(range(d)) or tgts != list(range(d)):
            raise NotABijection(f"node {node!r}: matching is not a bijection of 0..{d - 1}")
        wts = weights.get(node, {})
        if isinstance(wts, (list, tuple)):
            wts = dict(enumerate(wts))
        group = []
        for a, b, w in sorted(entries):
            k = int(wts.get(a, 0))
            if k < 0:
                raise ValueError("negative weight")
            group.append((a, b, int(w), k))
        groups.append(tuple(group))
    return TautDiagram(source, target, tuple(groups))


def identity(config: Configuration) -> TautDiagram:
    return TautDiagram(
        config, config, tuple(tuple((a, a, 0, 0) for a in range(len(g))) for g in config.black)
    )


def pair_crossings(b1, e1, b2, e2) -> int:
    """Crossings of two straight strands over all integer translates."""
    return abs(math.floor(e1 - e2) - math.floor(b1 - b2))


def red_crossings(b, e, rho) -> int:
    """Crossings of a straight strand with the vertical lines ``rho + Z``."""
    return abs(math.floor(e - rho) - math.floor(b - rho))


@dataclass(frozen=True)
class CrossingReport:
    same_label: dict  # node -> count
    adjacent: dict  # (src, tgt) arrow -> count
    red_black: dict  # node -> crossings of (i) strands with [i] strands
    unrelated: int

    @property
    def total_black_same(self):
        return sum(self.same_label.values())

    def vector(self, quiver):
        return tuple(self.same_label.get(n, 0) for n in quiver.nodes)


def crossings(d: TautDiagram) -> CrossingReport:
    q = d.source.quiver
    lifts = d.lifts()
    same = {n: 0 for n in q.nodes}
    adj = {a: 0 for a in q.arrows}
    rb = {n: 0 for n in q.nodes}
    unrelated = 0
    for x in range(len(lifts)):
        ni, _, b1, e1, _ = lifts[x]
        for y in range(x + 1, len(lifts)):
            nj, _, b2, e2, _ = lifts[y]
            c = pair_crossings(b1, e1, b2, e2)
            if not c:
                continue
            a, b = q.nodes[ni], q.nodes[nj]
            if ni == nj:
                same[a] += c
            elif q.has_arrow(a, b):
                adj[(a, b)] += c
            elif q.has_arrow(b, a):
                adj[(b, a)] += c
            else:
                unrelated += c
        for nr, reds in enumerate(d.source.red):
            for rho in reds:
                c = red_crossings(b1, e1, rho)
                if nr == ni:
                    rb[q.nodes[ni]] += c
                else:
                    unrelated += c
    return CrossingReport(same, adj, rb, unrelated)


def cross(d: TautDiagram) -> int:
    return crossings(d).total_black_same


def cross_vector(d: TautDiagram):
    return crossings(d).vector(d.source.quiver)


def q_grading(d: TautDiagram) -> int:
    """Twice the q-grading (half-integers are stored doubled)."""
    rep = crossings(d)
    return (
        2 * d.total_weight()
        - 2 * rep.total_black_same
        + sum(rep.red_black.values())
        + sum(rep.adjacent.values())
    )


def reference_angle(*configs):
    """Default reference angle: midway between the largest point angle and 1."""
    top = max((p[0] for c in configs for p in c.points()), default=Fraction(0))
    return (top + 1) / 2


def qi_winding(d: TautDiagram, theta=None):
    """Signed crossings of each label with the reference line ``theta + Z``.

    Moving towards increasing angle across the line counts +1.
    """
    if theta is None:
        theta = reference_angle(d.source, d.target)
    q = d.source.quiver
    out = {n: 0 for n in q.nodes}
    for ni, _, b, e, _ in d.lifts():
        out[q.nodes[ni]] += math.floor(e - theta) - math.floor(b - theta)
    return out


@dataclass(frozen=True)
class Bigon:
    kind: str  # same_label / adjacent / red_black / unrelated
    first: tuple  # ('b', node_index, from) of the lower-indexed strand
    second: tuple  # ('b', ...) or ('r', node_index, red index)
    translate: int


def concatenate(d12: TautDiagram, d23: TautDiagram):
    """Stack ``d23`` on top of ``d12``.

    Returns the straightened composite (windings and weights add) and the
    sorted list of bigons of the stacked picture.
    """
    if d12.target != d23.source:
        raise MismatchedConfigurations("top of the lower diagram differs from bottom of the upper")
    q = d12.source.quiver
    groups = []
    paths = []
    for ni, (g1, g2) in enumerate(zip(d12.strands, d23.strands)):
        up = {a: (b, w, k) for a, b, w, k in g2}
        group = []
        mid_angles = d12.target.black[ni]
        for a, b, w, k in g1:
            c, w2, k2 = up[b]
            group.append((a, c, w + w2, k + k2))
            paths.append(
                (
                    ni,
                    a,
                    d12.source.black[ni][a],
                    mid_angles[b] + w,
                    d23.target.black[ni][c] + w + w2,
                )
            )
        groups.append(tuple(group))
    stacked = TautDiagram(d12.source, d23.target, tuple(groups))
    bigons = []
    for x in range(len(paths)):
        ni, a, b1, m1, e1 = paths[x]
        for y in range(x + 1, len(paths)):
            nj, a2, b2, m2, e2 = paths[y]
            for k in _double_changes(b1 - b2, m1 - m2, e1 - e2):
                bigons.append(Bigon(_kind(q, ni, nj, False), ("b", ni, a), ("b", nj, a2), k))
        for nr, reds in enumerate(d12.source.red):
            for ri, rho in enumerate(reds):
                for k in _double_changes(b1 - rho, m1 - rho, e1 - rho):
                    bigons.append(
                        Bigon("red_black" if nr == ni else "unrelated", ("b", ni, a), ("r", nr, ri), k)
                    )
    bigons.sort(key=lambda g: (g.first, g.second, g.translate))
    return stacked, bigons


def _double_changes(db, dm, de):
    """Integers k where the sign of (x - k) flips between b and m and back by e."""
    lo = math.floor(min(db, dm, de))
    hi = math.ceil(max(db, dm, de))
    out = []
    for k in range(lo, hi + 1):
        sb, sm, se = db > k, dm > k, de > k
        if sb != sm and sm != se:
            out.append(k)
    return out


def _kind(q, ni, nj, red):
    if ni == nj:
        return "same_label"
    if q.adjacent(q.nodes[ni], q.nodes[nj]):
        return "adjacent"
    return "unrelated"


def enumerate_taut(source, target, max_wind=0, max_weight=0, max_cross=None):
    """All taut diagrams within the given winding, weight and crossing bounds."""
    _check_pair(source, target)
    q = source.quiver
    per_label = []
    for ni in range(len(q.nodes)):
        d = q.dims[ni]
        options = []
        for perm in permutations(range(d)):
            for winds in product(range(-max_wind, max_wind + 1), repeat=d):
                options.append(tuple((a, perm[a], winds[a]) for a in range(d)))
        per_label.append(options)
    weight_opts = [
        list(product(range(max_weight + 1), repeat=q.dims[ni])) for ni in range(len(q.nodes))
    ]
    out = []
    for choice in product(*per_label):
        base = TautDiagram(source, target, tuple(tuple((a, b, w, 0) for a, b, w in g) for g in choice))
        if max_cross is not None and cross(base) > max_cross:
            continue
        for wchoice in product(*weight_opts):
            strands = tuple(
                tuple((a, b, w, wt[a]) for a, b, w in g) for g, wt in zip(choice, wchoice)
            )
            out.append(TautDiagram(source, target, strands))
    return out


# -- slot model -------------------------------------------------------------
#
# All points of a configuration, sorted by angle, are numbered 0..n-1 (slots).
# A diagram becomes an affine permutation f with f(j + n) = f(j) + n, where
# f(j) = (target slot) + n * (winding); monotone relabelling keeps all crossing
# counts, so lengths of affine permutations are crossing numbers.


def to_slots(d: TautDiagram):
    """``(f, weights)`` with ``weights`` indexed by bottom slot."""
    src = d.source.slot_of()
    tgt = d.target.slot_of()
    n = d.source.n_points
    f = [0] * n
    wts = [0] * n
    for ni, g in enumerate(d.strands):
        for a, b, w, k in g:
            s = src[("b", ni, a)]
            f[s] = tgt[("b", ni, b)] + n * w
            wts[s] = k
    for ni, reds in enumerate(d.source.red):
        for ri in range(len(reds)):
            f[src[("r", ni, ri)]] = tgt[("r", ni, ri)]
    return tuple(f), tuple(wts)


def from_slots(source: Configuration, target: Configuration, f, wts) -> TautDiagram:
    """Inverse of :func:`to_slots`."""
    n = source.n_points
    spts = source.points()
    tpts = target.points()
    groups = [[] for _ in source.quiver.nodes]
    for s, (_, kind, ni, a) in enumerate(spts):
        w, t = divmod(f[s], n)
        _, tkind, tni, b = tpts[t]
        if (tkind, tni) != (kind, ni):
            raise MismatchedConfigurations("slot map does not respect labels")
        if kind == "r":
            if w or b != a:
                raise MismatchedConfigurations("red strands must stay in place")
            continue
        groups[ni].append((a, b, w, wts[s]))
    return TautDiagram(source, target, tuple(tuple(sorted(g)) for g in groups))
