"""Framed quivers, point configurations on the circle, and matter weights."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import (
    BlackCollision,
    BlackOnRed,
    DuplicateEdge,
    IndexOutOfRange,
    InvalidAngle,
    InvalidInput,
    LoopEdge,
    NegativeDimension,
    RedCollision,
    UnknownNode,
)


@dataclass(frozen=True)
class Quiver:
    """A directed graph with a dimension vector and a framing vector.

    ``dims`` and ``framings`` are stored as tuples aligned with ``nodes``.
    Node identifiers are opaque strings; declaration order is the internal
    order used everywhere output must be deterministic.
    """

    nodes: tuple
    arrows: tuple
    dims: tuple
    framings: tuple

    def index(self, node) -> int:
        try:
            return self.nodes.index(node)
        except ValueError:
            raise UnknownNode(f"node {node!r}") from None

    def dim(self, node) -> int:
        return self.dims[self.index(node)]

    def framing(self, node) -> int:
        return self.framings[self.index(node)]

    def has_arrow(self, src, tgt) -> bool:
        return (src, tgt) in self._arrow_set

    @property
    def _arrow_set(self):
        s = self.__dict__.get("_arrows_cache")
        if s is None:
            s = frozenset(self.arrows)
            object.__setattr__(self, "_arrows_cache", s)
        return s

    def adjacent(self, a, b) -> bool:
        return self.has_arrow(a, b) or self.has_arrow(b, a)

    @property
    def rank(self) -> int:
        """Rank of the maximal torus, i.e. the total dimension."""
        return sum(self.dims)

    def torus_coords(self):
        """(node, alpha) pairs in declaration order, alpha 0-based."""
        return [(n, a) for n, d in zip(self.nodes, self.dims) for a in range(d)]

    def to_json(self) -> dict:
        return {
            "nodes": list(self.nodes),
            "arrows": [list(a) for a in self.arrows],
            "dims": {n: d for n, d in zip(self.nodes, self.dims)},
            "framings": {n: m for n, m in zip(self.nodes, self.framings)},
        }


def validate_quiver(raw) -> Quiver:
    """Build a :class:`Quiver` from a JSON-like mapping, checking all invariants.

    An arrow and its reverse count as a duplicate edge: the relations used by
    the diagram engine assume at most one edge between two nodes.
    """
    if not isinstance(raw, dict):
        raise InvalidInput("quiver description must be a mapping")
    nodes = [str(n) for n in raw.get("nodes", [])]
    if len(set(nodes)) != len(nodes):
        raise InvalidInput("repeated node identifier")
    known = set(nodes)
    arrows = []
    seen = set()
    for arr in raw.get("arrows", []):
        if len(arr) != 2:
            raise InvalidInput(f"arrow {arr!r} must have two endpoints")
        s, t = str(arr[0]), str(arr[1])
        for v in (s, t):
            if v not in known:
                raise UnknownNode(f"node {v!r} in arrow {s}->{t}")
        if s == t:
            raise LoopEdge(f"loop at node {s!r}")
        if frozenset((s, t)) in seen:
            raise DuplicateEdge(f"second edge between {s!r} and {t!r}")
        seen.add(frozenset((s, t)))
        arrows.append((s, t))

    def total(field):
        data = raw.get(field, {})
        if not isinstance(data, dict):
            raise InvalidInput(f"{field} must be a mapping node -> integer")
        for k in data:
            if str(k) not in known:
                raise UnknownNode(f"node {k!r} in {field}")
        out = []
        for n in nodes:
            v = data.get(n, 0)
            if isinstance(v, bool) or not isinstance(v, int):
                raise InvalidInput(f"{field}[{n}] must be an integer")
            if v < 0:
                raise NegativeDimension(f"{field}[{n}] = {v}")
            out.append(v)
        return tuple(out)

    return Quiver(tuple(nodes), tuple(arrows), total("dims"), total("framings"))


def make_quiver(nodes, arrows=(), dims=None, framings=None) -> Quiver:
    """Convenience constructor taking plain Python values."""
    nodes = [str(n) for n in nodes]
    return validate_quiver(
        {
            "nodes": nodes,
            "arrows": [[str(a), str(b)] for a, b in arrows],
            "dims": {str(k): v for k, v in (dims or {}).items()},
            "framings": {str(k): v for k, v in (framings or {}).items()},
        }
    )


def to_angle(value) -> Fraction:
    """Parse an angle given as a Fraction, an int, a ``[num, den]`` pair or a string."""
    try:
        if isinstance(value, Fraction):
            a = value
        elif isinstance(value, (list, tuple)):
            if len(value) != 2:
                raise InvalidAngle(f"angle {value!r} must be a [num, den] pair")
            num, den = int(value[0]), int(value[1])
            if den <= 0:
                raise InvalidAngle(f"angle {value!r} has non-positive denominator")
            a = Fraction(num, den)
        elif isinstance(value, (int, str)) and not isinstance(value, bool):
            a = Fraction(value)
        else:
            raise InvalidAngle(f"cannot read angle {value!r}")
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidAngle(f"cannot read angle {value!r}") from exc
    if not 0 <= a < 1:
        raise InvalidAngle(f"angle {a} not in [0, 1)")
    return a


@dataclass(frozen=True)
class Configuration:
    """Red and black points on the circle.

    Points of one label are unordered, so the angles of each node are kept
    sorted; the index of a point is its position in that sorted tuple.
    """

    quiver: Quiver
    red: tuple  # per node (declaration order): sorted tuple of Fractions
    black: tuple

    def red_of(self, node):
        return self.red[self.quiver.index(node)]

    def black_of(self, node):
        return self.black[self.quiver.index(node)]

    def points(self):
        """All points as ``(angle, kind, node_index, idx)`` sorted by angle."""
        cached = self.__dict__.get("_points")
        if cached is None:
            pts = []
            for ni in range(len(self.quiver.nodes)):
                pts += [(a, "r", ni, k) for k, a in enumerate(self.red[ni])]
                pts += [(a, "b", ni, k) for k, a in enumerate(self.black[ni])]
            pts.sort()
            cached = tuple(pts)
            object.__setattr__(self, "_points", cached)
        return cached

    def slot_labels(self):
        """Label of every slot: ``('b', node_index)`` or ``('r', node_index)``."""
        return tuple((k, ni) for _, k, ni, _ in self.points())

    def slot_of(self):
        """Map ``(kind, node_index, idx)`` to its slot number."""
        cached = self.__dict__.get("_slot_of")
        if cached is None:
            cached = {(k, ni, i): s for s, (_, k, ni, i) in enumerate(self.points())}
            object.__setattr__(self, "_slot_of", cached)
        return cached

    @property
    def n_points(self):
        return len(self.points())

    def same_red(self, other) -> bool:
        return self.quiver == other.quiver and self.red == other.red

    def to_json(self) -> dict:
        def enc(groups):
            return {
                n: [[a.numerator, a.denominator] for a in g]
                for n, g in zip(self.quiver.nodes, groups)
            }

        return {"red": enc(self.red), "black": enc(self.black)}

    def __repr__(self):
        def fmt(groups):
            return ", ".join(
                f"{n}:[{' '.join(str(a) for a in g)}]"
                for n, g in zip(self.quiver.nodes, groups)
                if g
            )

        return f"Configuration(red={{{fmt(self.red)}}}, black={{{fmt(self.black)}}})"


def validate_configuration(q: Quiver, red, black) -> Configuration:
    """Check and canonicalize point data for quiver ``q``.

    ``red`` and ``black`` map node -> list of angles, or ``(node, index)`` ->
    angle (indices 1-based, as in the text formats). All red points must be
    distinct, black points must be distinct from each other (whatever their
    labels) and from every red point.
    """
    red_g = _group(q, red or {}, "red", q.framings)
    black_g = _group(q, black or {}, "black", q.dims)
    owner = {}
    for ni, g in enumerate(red_g):
        for k, a in enumerate(g):
            if a in owner:
                raise RedCollision(f"red points {owner[a]} and [{q.nodes[ni]},{k + 1}] at angle {a}")
            owner[a] = f"[{q.nodes[ni]},{k + 1}]"
    reds = dict(owner)
    for ni, g in enumerate(black_g):
        for k, a in enumerate(g):
            name = f"({q.nodes[ni]},{k + 1})"
            if a in reds:
                raise BlackOnRed(f"black point {name} on red point {reds[a]} at angle {a}")
            if a in owner:
                raise BlackCollision(f"black points {owner[a]} and {name} at angle {a}")
            owner[a] = name
    return Configuration(
        q, tuple(tuple(sorted(g)) for g in red_g), tuple(tuple(sorted(g)) for g in black_g)
    )


def _group(q, data, what, sizes):
    groups = [[] for _ in q.nodes]
    if isinstance(data, dict) and data and all(isinstance(k, tuple) for k in data):
        slots = {}
        for (node, idx), ang in data.items():
            ni = q.index(str(node))
            if not 1 <= idx <= sizes[ni]:
                raise IndexOutOfRange(f"{what} index ({node},{idx}) outside 1..{sizes[ni]}")
            slots[(ni, idx)] = to_angle(ang)
        for (ni, idx), ang in sorted(slots.items()):
            groups[ni].append(ang)
    elif isinstance(data, dict):
        for node, angs in data.items():
            ni = q.index(str(node))
            groups[ni] = [to_angle(a) for a in angs]
    else:
        raise InvalidInput(f"{what} points must be a mapping")
    for ni, g in enumerate(groups):
        if len(g) != sizes[ni]:
            raise IndexOutOfRange(
                f"node {q.nodes[ni]!r} has {len(g)} {what} points, expected {sizes[ni]}"
            )
        if len(set(g)) != len(g):
            err = RedCollision if what == "red" else BlackCollision
            raise err(f"two {what} points of node {q.nodes[ni]!r} share an angle")
    return groups


def config_from_json(q: Quiver, raw) -> Configuration:
    if not isinstance(raw, dict):
        raise InvalidInput("configuration must be a mapping")
    return validate_configuration(q, raw.get("red", {}), raw.get("black", {}))


@dataclass(frozen=True)
class MatterWeight:
    """A torus weight of the matter representation.

    ``xi`` is a tuple over the torus coordinates (see ``Quiver.torus_coords``).
    ``framing`` is ``None`` for internal matter; for framing matter it is the
    ``(node, beta)`` pair of the flavour coordinate ``a``, entering the deformed
    factor ``1 - a / y``.
    """

    xi: tuple
    framing: tuple | None = None
    tag: tuple = ()


def matter_weights(q: Quiver):
    """Weights of N = internal (arrows) + framing matter.

    An arrow i -> j contributes, for every (alpha, beta), the weight
    ``e_(j,beta) - e_(i,alpha)``, i.e. the character ``y_(j,beta) / y_(i,alpha)``.
    Each framing edge contributes ``e_(i,alpha)`` with flavour ``a_(i,beta)``.
    """
    coords = q.torus_coords()
    pos = {c: k for k, c in enumerate(coords)}
    r = len(coords)
    internal = []
    for s, t in q.arrows:
        for a, b in product(range(q.dim(s)), range(q.dim(t))):
            xi = [0] * r
            xi[pos[(t, b)]] += 1
            xi[pos[(s, a)]] -= 1
            internal.append(MatterWeight(tuple(xi), None, ("arrow", s, t, a, b)))
    framing = []
    for n in q.nodes:
        for a, b in product(range(q.dim(n)), range(q.framing(n))):
            xi = [0] * r
            xi[pos[(n, a)]] = 1
            framing.append(MatterWeight(tuple(xi), (n, b), ("framing", n, a, b)))
    return internal, framing
