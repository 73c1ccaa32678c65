"""Marked-point conditions for lifting maps into symmetric products.

A cover is described only by its sheets (labelled by quiver nodes) and three
families of marked points: root witnesses, framing witnesses and arrow pairs.
A candidate divisor assigns integer orders to points; it encodes a lift when

0. its support lies on marked points,
1. every root witness has order exactly -1,
2. every framing witness has order exactly +1,
3. in every pair exactly one point has order +1 and the other order 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product

from .errors import InvalidInput, UnknownNode
from .quiver import Quiver


@dataclass(frozen=True)
class CoverData:
    sheets: dict = field(default_factory=dict)
    points: dict = field(default_factory=dict)
    root: tuple = ()
    framing: tuple = ()
    pairs: tuple = ()

    def marked(self):
        """Every marked point, in declaration order: roots, framings, pairs."""
        out = list(self.root) + list(self.framing)
        for p, q in self.pairs:
            out += [p, q]
        return out

    def to_json(self) -> dict:
        out = {
            "sheets": dict(self.sheets),
            "root": list(self.root),
            "framing": list(self.framing),
            "pairs": [list(p) for p in self.pairs],
        }
        if self.points:
            out["points"] = dict(self.points)
        return out


def validate_cover(raw, quiver: Quiver | None = None) -> CoverData:
    """Build :class:`CoverData` from JSON, checking distinctness and labels.

    ``points`` (point -> sheet) is optional; when present every marked point
    must sit on a declared sheet, and with a quiver each pair must run along an
    arrow from the first point's node to the second's.
    """
    if not isinstance(raw, dict):
        raise InvalidInput("cover data must be a mapping")
    sheets = raw.get("sheets", {})
    if not isinstance(sheets, dict):
        raise InvalidInput("sheets must map sheet -> node")
    sheets = {str(k): str(v) for k, v in sheets.items()}
    points = {str(k): str(v) for k, v in (raw.get("points") or {}).items()}
    root = tuple(str(p) for p in raw.get("root", []))
    framing = tuple(str(p) for p in raw.get("framing", []))
    pairs = []
    for pr in raw.get("pairs", []):
        if not isinstance(pr, (list, tuple)) or len(pr) != 2:
            raise InvalidInput(f"pair {pr!r} must have two points")
        pairs.append((str(pr[0]), str(pr[1])))
    c = CoverData(sheets, points, root, framing, tuple(pairs))
    seen = set()
    for p in c.marked():
        if p in seen:
            raise InvalidInput(f"marked point {p!r} appears twice")
        seen.add(p)
    if quiver is not None:
        for s, n in sheets.items():
            if n not in quiver.nodes:
                raise UnknownNode(f"sheet {s!r} on node {n!r}")
    if points:
        for p in c.marked():
            if p not in points:
                raise InvalidInput(f"marked point {p!r} is not placed on a sheet")
        for p, s in points.items():
            if s not in sheets:
                raise InvalidInput(f"point {p!r} on unknown sheet {s!r}")
        if quiver is not None:
            for p, q in c.pairs:
                a, b = sheets[points[p]], sheets[points[q]]
                if not quiver.has_arrow(a, b):
                    raise InvalidInput(f"pair ({p}, {q}) joins nodes {a} -> {b}, which is not an arrow")
    return c


@dataclass(frozen=True)
class DivisorData:
    orders: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "orders", {str(k): int(v) for k, v in self.orders.items() if v})

    def order(self, p) -> int:
        return self.orders.get(p, 0)

    def to_json(self) -> dict:
        return {"orders": dict(sorted(self.orders.items()))}

    def text(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def validate_divisor(raw) -> DivisorData:
    if not isinstance(raw, dict):
        raise InvalidInput("divisor must be a mapping")
    orders = raw.get("orders", {})
    if not isinstance(orders, dict):
        raise InvalidInput("orders must map point -> integer")
    for k, v in orders.items():
        if isinstance(v, bool) or not isinstance(v, int):
            raise InvalidInput(f"order at {k!r} must be an integer")
    return DivisorData(orders)


@dataclass(frozen=True)
class LiftReport:
    accepted: bool
    condition: int | None = None
    detail: str = ""

    def text(self) -> str:
        return "ACCEPT" if self.accepted else f"VIOLATION: condition {self.condition}"


def check_lift(c: CoverData, d: DivisorData) -> LiftReport:
    """Report acceptance or the first violated condition (checked 0 to 3)."""
    marked = set(c.marked())
    for p in sorted(d.orders):
        if p not in marked:
            return LiftReport(False, 0, f"order {d.orders[p]} at unmarked point {p!r}")
    for p in c.root:
        if d.order(p) != -1:
            return LiftReport(False, 1, f"root witness {p!r} has order {d.order(p)}")
    for p in c.framing:
        if d.order(p) != 1:
            return LiftReport(False, 2, f"framing witness {p!r} has order {d.order(p)}")
    for p, q in c.pairs:
        if sorted((d.order(p), d.order(q))) != [0, 1]:
            return LiftReport(False, 3, f"pair ({p}, {q}) has orders ({d.order(p)}, {d.order(q)})")
    return LiftReport(True)


def enumerate_lift_divisors(c: CoverData):
    """All admissible divisors; each pair independently puts its zero on one side."""
    base = {p: -1 for p in c.root}
    base.update({p: 1 for p in c.framing})
    out = []
    for choice in product((0, 1), repeat=len(c.pairs)):
        orders = dict(base)
        for (p, q), k in zip(c.pairs, choice):
            orders[q if k else p] = 1
        out.append(DivisorData(orders))
    return out
