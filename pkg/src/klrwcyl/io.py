"""JSON readers and writers for quivers, configurations, diagrams, words and morphisms.

Indices in files are 1-based; angles are ``[num, den]`` pairs (plain integers
and strings such as ``"1/3"`` are accepted on input).
"""

from __future__ import annotations

import json
from pathlib import Path

from .coeffs import CoeffPoly
from .engine import (
    Morphism,
    Word,
    crossing_step,
    dot_step,
    engine_for,
    isotopy_step,
)
from .errors import InvalidInput, InvalidWord
from .quiver import Configuration, Quiver, config_from_json, validate_quiver
from .strands import make_taut


def load_json(path):
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"{path}: malformed JSON ({exc.msg}, line {exc.lineno})") from None


def dump_json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def load_quiver(path) -> Quiver:
    return validate_quiver(load_json(path))


def load_configuration(q: Quiver, path) -> Configuration:
    return config_from_json(q, load_json(path))


def coeff_from_json(raw) -> CoeffPoly:
    """An integer, or a list of ``[a, b, c]`` triples meaning ``c hbar^a eta^b``."""
    if isinstance(raw, bool):
        raise InvalidInput("coefficient must be an integer or a triple list")
    if isinstance(raw, int):
        return CoeffPoly(raw)
    if isinstance(raw, list):
        try:
            return CoeffPoly.from_triples([tuple(int(v) for v in t) for t in raw])
        except (TypeError, ValueError):
            raise InvalidInput(f"bad coefficient {raw!r}") from None
    raise InvalidInput(f"bad coefficient {raw!r}")


def _endpoints(q, raw, source, target):
    src = config_from_json(q, raw["source"]) if "source" in raw else source
    tgt = config_from_json(q, raw["target"]) if "target" in raw else (target or src)
    if src is None:
        raise InvalidInput("no source configuration given")
    return src, tgt


def diagram_from_json(q: Quiver, raw, source=None, target=None):
    """Diagram JSON: ``{"source", "target", "strands": {node: [{from, to, wind, weight}]}}``."""
    src, tgt = _endpoints(q, raw, source, target)
    return _strands(q, raw.get("strands", {}), src, tgt)


def _strands(q, strands, src, tgt):
    if not isinstance(strands, dict):
        raise InvalidInput("strands must map node -> list of strands")
    matching, weights = {}, {}
    for node, items in strands.items():
        node = str(node)
        q.index(node)
        m, w = [], {}
        for it in items:
            try:
                a, b = int(it["from"]) - 1, int(it["to"]) - 1
                m.append((a, b, int(it.get("wind", 0))))
                w[a] = int(it.get("weight", 0))
            except (KeyError, TypeError, ValueError):
                raise InvalidInput(f"bad strand entry {it!r}") from None
            if w[a] < 0:
                raise InvalidInput(f"negative weight in {it!r}")
        matching[node], weights[node] = m, w
    for node, d in zip(q.nodes, q.dims):
        if d == 0:
            matching.setdefault(node, [])
    return make_taut(src, tgt, matching, weights)


def morphism_from_json(q: Quiver, raw, source=None, target=None) -> Morphism:
    src, tgt = _endpoints(q, raw, source, target)
    out = Morphism.zero(src, tgt)
    for t in raw.get("terms", []):
        d = _strands(q, t.get("diagram", {}), src, tgt)
        out = out + Morphism.of(d, coeff_from_json(t.get("coeff", 1)))
    return out


def _point(q, cfg, raw):
    try:
        kind, node, idx = raw
    except (TypeError, ValueError):
        raise InvalidWord(f"point {raw!r} must be [kind, node, index]") from None
    if kind not in ("b", "r"):
        raise InvalidWord(f"point kind {kind!r} must be 'b' or 'r'")
    ni = q.index(str(node))
    size = (cfg.black if kind == "b" else cfg.red)[ni]
    i = int(idx) - 1
    if not 0 <= i < len(size):
        raise InvalidWord(f"no point {raw!r} in the current configuration")
    return (kind, ni, i)


def word_from_json(q: Quiver, raw, source=None) -> Word:
    """Word JSON: ``{"source": cfg, "steps": [...]}``.

    A step is ``{"dot": [node, idx]}``, ``{"cross": [[kind, node, idx], [kind, node, idx]]}``
    (left point first) or ``{"move": cfg}``.  Indices refer to the current
    configuration, 1-based in angle order within each node.
    """
    cur, _ = _endpoints(q, raw, source, None)
    src = cur
    steps = []
    for st in raw.get("steps", []):
        if not isinstance(st, dict) or len(st) != 1:
            raise InvalidWord(f"bad step {st!r}")
        ((kind, arg),) = st.items()
        if kind == "dot":
            node, idx = arg
            ni = q.index(str(node))
            if not 1 <= int(idx) <= len(cur.black[ni]):
                raise InvalidWord(f"no black point {arg!r}")
            step = dot_step(cur, ni, int(idx) - 1)
        elif kind == "cross":
            left, right = arg
            step = crossing_step(cur, _point(q, cur, left), _point(q, cur, right))
        elif kind == "move":
            step = isotopy_step(cur, config_from_json(q, arg))
        else:
            raise InvalidWord(f"unknown step kind {kind!r}")
        steps.append(step)
        cur = step.target
    return Word(src, tuple(steps))


def element_from_json(q: Quiver, raw, source=None, target=None) -> Morphism:
    """Read any of: diagram, morphism, word, or ``{"combination": [...]}``.

    A combination lists ``{"coeff": ..., "word"|"diagram"|"morphism": ...}``
    entries with common endpoints; words are brought to normal form.
    """
    if not isinstance(raw, dict):
        raise InvalidInput("expected a JSON object")
    if "combination" in raw:
        total = None
        for item in raw["combination"]:
            c = coeff_from_json(item.get("coeff", 1))
            parts = [k for k in ("word", "diagram", "morphism") if k in item]
            if len(parts) != 1:
                raise InvalidInput("each combination entry needs exactly one of word/diagram/morphism")
            m = element_from_json(q, _tagged(parts[0], item[parts[0]]), source, target).scale(c)
            total = m if total is None else total + m
        if total is None:
            raise InvalidInput("empty combination")
        return total
    if "steps" in raw:
        w = word_from_json(q, raw, source)
        return engine_for(q).normal_form(w)
    if "terms" in raw:
        return morphism_from_json(q, raw, source, target)
    if "strands" in raw:
        return Morphism.of(diagram_from_json(q, raw, source, target))
    raise InvalidInput("unrecognized diagram/word/morphism JSON")


def _tagged(kind, raw):
    if not isinstance(raw, dict):
        raise InvalidInput(f"{kind} entry must be an object")
    raw = dict(raw)
    if kind == "word":
        raw.setdefault("steps", [])
    elif kind == "morphism":
        raw.setdefault("terms", [])
    else:
        raw.setdefault("strands", {})
    return raw


def load_element(q: Quiver, path, source=None, target=None) -> Morphism:
    return element_from_json(q, load_json(path), source, target)


def data_path(name: str) -> Path:
    """Path of a fixture shipped inside the package."""
    return Path(__file__).with_name("data") / name
