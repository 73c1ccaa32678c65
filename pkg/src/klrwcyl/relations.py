"""Local diagram relations instantiated at every position of a configuration.

Each :class:`RelationInstance` pairs a left-hand side computed by the engine
from crossing words with a right-hand side built only from dots, identities
and isotopies, so a passing instance is a genuine check of the rewriting.

Relation tags:

- ``bigon_same``: two crossings of equal labels vanish
- ``bigon_adjacent``: two crossings of adjacent labels give eta (x_tgt - x_src)
- ``bigon_unrelated``: two crossings of unrelated labels give the identity
- ``bigon_red``: a black strand passing a red strand of its node and back
  gives eta times a dot; other red bigons give the isotopy
- ``braid_adjacent``: (i, j, i) triple, difference of the two braid words is
  +eta*hbar if the arrow points j -> i and -eta*hbar if i -> j
- ``braid_red``: black, red, black of one node: difference eta*hbar
- ``braid_plain``: every other triple: the braid words agree
- ``dot_slide_above`` / ``dot_slide_below``: moving a dot from below to
  above a same-label crossing changes the diagram by +hbar on the right
  strand and -hbar on the left strand; other crossings let dots pass freely
"""

from __future__ import annotations

from dataclasses import dataclass

from .coeffs import ETA, HBAR, CoeffPoly
from .engine import Morphism, Word, WordBuilder, engine_for
from .quiver import Configuration
from .strands import identity


@dataclass(frozen=True)
class RelationInstance:
    tag: str
    slot: int
    lhs: Morphism
    rhs: Morphism
    words: tuple

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def _nf(eng, w: Word) -> Morphism:
    return eng.normal_form(w)


def _track(step, pt):
    """Where the point ``pt`` of the step's source sits in its target."""
    kind, ni, i = pt
    if kind == "r":
        return pt
    for a, b, _, _ in step.diagram.strands[ni]:
        if a == i:
            return ("b", ni, b)
    raise AssertionError("strand not found")


class _Tracker:
    """Word builder that follows named points through crossings."""

    def __init__(self, cfg, names):
        self.b = WordBuilder(cfg)
        self.pos = dict(names)

    def cross(self, left, right):
        self.b.cross(self.pos[left], self.pos[right])
        st = self.b.steps[-1]
        self.pos = {k: _track(st, p) for k, p in self.pos.items()}
        return self

    def dot(self, name):
        _, ni, i = self.pos[name]
        self.b.dot(ni, i)
        return self

    def move_to(self, target):
        self.b.move_to(target)
        return self

    def word(self):
        return self.b.word()


def _names(cfg, s, k):
    pts = cfg.points()
    n = len(pts)
    out = {}
    for t in range(k):
        _, kind, ni, i = pts[(s + t) % n]
        out[t] = (kind, ni, i)
    return out


def relation_instances(cfg: Configuration):
    """All relation instances at all slots of ``cfg`` (pairs and triples)."""
    q = cfg.quiver
    eng = engine_for(q)
    n = cfg.n_points
    out = []
    if n < 2:
        return out
    ident = Morphism.of(identity(cfg))
    for s in range(n):
        names = _names(cfg, s, 2)
        (k1, a, _), (k2, b, _) = names[0], names[1]
        if k1 == "r" and k2 == "r":
            continue
        w2 = _Tracker(cfg, names).cross(0, 1).cross(1, 0).word()
        lhs = _nf(eng, w2)
        if k1 == "b" and k2 == "b":
            if a == b:
                out.append(RelationInstance("bigon_same", s, lhs, Morphism.zero(cfg, cfg), (w2,)))
            elif q.adjacent(q.nodes[a], q.nodes[b]):
                src, tgt = (0, 1) if q.has_arrow(q.nodes[a], q.nodes[b]) else (1, 0)
                wt = _Tracker(cfg, names).dot(tgt).word()
                ws = _Tracker(cfg, names).dot(src).word()
                rhs = (_nf(eng, wt) - _nf(eng, ws)).scale(ETA)
                out.append(RelationInstance("bigon_adjacent", s, lhs, rhs, (w2, wt, ws)))
            else:
                out.append(RelationInstance("bigon_unrelated", s, lhs, ident, (w2,)))
            out.extend(_dot_slides(eng, cfg, s, names, a == b))
        else:
            black = 0 if k1 == "b" else 1
            if a == b:
                wd = _Tracker(cfg, names).dot(black).move_to(w2.target).word()
                out.append(RelationInstance("bigon_red", s, lhs, _nf(eng, wd).scale(ETA), (w2, wd)))
            else:
                move = WordBuilder(cfg).move_to(w2.target).word()
                out.append(RelationInstance("bigon_red", s, lhs, _nf(eng, move), (w2, move)))
    if n >= 3:
        for s in range(n):
            out.extend(_braids(eng, cfg, s))
    return out


def _dot_slides(eng, cfg, s, names, same):
    # right strand: dot above the crossing minus dot below
    wa = _Tracker(cfg, names).cross(0, 1).dot(1).word()
    wb = _Tracker(cfg, names).dot(1).cross(0, 1).word()
    # left strand: dot below the crossing minus dot above
    wc = _Tracker(cfg, names).dot(0).cross(0, 1).word()
    wd = _Tracker(cfg, names).cross(0, 1).dot(0).word()
    if same:
        rhs = Morphism.of(identity(cfg)).scale(HBAR)
    else:
        rhs = Morphism.zero(cfg, wa.target)
    return [
        RelationInstance("dot_slide_above", s, _nf(eng, wa) - _nf(eng, wb), rhs, (wa, wb)),
        RelationInstance("dot_slide_below", s, _nf(eng, wc) - _nf(eng, wd), rhs, (wc, wd)),
    ]


def _braids(eng, cfg, s):
    q = cfg.quiver
    names = _names(cfg, s, 3)
    kinds = [names[t][:2] for t in range(3)]
    if sum(k == "r" for k, _ in kinds) > 1:
        return []
    w1 = _Tracker(cfg, names).cross(0, 1).cross(0, 2).cross(1, 2).word()
    w2 = _Tracker(cfg, names).cross(1, 2).cross(0, 2).cross(0, 1).move_to(w1.target).word()
    lhs = _nf(eng, w1) - _nf(eng, w2)
    (k0, a), (k1, m), (k2, c) = kinds
    if k1 == "r" and k0 == "b" and k2 == "b" and a == m == c:
        move = WordBuilder(cfg).move_to(w1.target).word()
        rhs = _nf(eng, move).scale(ETA * HBAR)
        return [RelationInstance("braid_red", s, lhs, rhs, (w1, w2, move))]
    if "r" not in (k0, k1, k2) and a == c and a != m and q.adjacent(q.nodes[a], q.nodes[m]):
        sign = 1 if q.has_arrow(q.nodes[m], q.nodes[a]) else -1
        move = WordBuilder(cfg).move_to(w1.target).word()
        rhs = _nf(eng, move).scale(ETA * HBAR * CoeffPoly(sign))
        return [RelationInstance("braid_adjacent", s, lhs, rhs, (w1, w2, move))]
    return [RelationInstance("braid_plain", s, lhs, Morphism.zero(cfg, w1.target), (w1, w2))]
