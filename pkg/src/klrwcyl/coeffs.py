"""Integer polynomials in hbar and eta."""

from __future__ import annotations


class CoeffPoly:
    """Sparse map ``(a, b) -> c`` standing for ``sum c * hbar^a * eta^b``.

    Instances are treated as immutable values.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif isinstance(terms, int):
            terms = {(0, 0): terms} if terms else {}
        else:
            terms = {k: v for k, v in dict(terms).items() if v}
        self.terms = terms
        self._hash = None

    @classmethod
    def monomial(cls, a=0, b=0, c=1):
        return cls({(a, b): c})

    @classmethod
    def from_triples(cls, triples):
        """Read the ``[[a, b, c], ...]`` interchange form."""
        out = {}
        for a, b, c in triples:
            if a < 0 or b < 0:
                raise ValueError("negative exponent in coefficient")
            out[(a, b)] = out.get((a, b), 0) + c
        return cls(out)

    def to_triples(self):
        return [[a, b, c] for (a, b), c in sorted(self.terms.items())]

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = CoeffPoly(other)
        return isinstance(other, CoeffPoly) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other):
        if isinstance(other, int):
            other = CoeffPoly(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return CoeffPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return CoeffPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, CoeffPoly) else CoeffPoly(-other))

    def __mul__(self, other):
        if isinstance(other, int):
            return CoeffPoly({k: v * other for k, v in self.terms.items()})
        out = {}
        for (a, b), c in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a + a2, b + b2)
                out[k] = out.get(k, 0) + c * c2
        return CoeffPoly(out)

    __rmul__ = __mul__

    def evaluate(self, hbar=None, eta=None):
        """Substitute integers for hbar and/or eta (``None`` keeps the symbol)."""
        out = {}
        for (a, b), c in self.terms.items():
            if hbar is not None:
                c *= hbar ** a
                a = 0
            if eta is not None:
                c *= eta ** b
                b = 0
            out[(a, b)] = out.get((a, b), 0) + c
        return CoeffPoly(out)

    def is_one(self):
        return self.terms == {(0, 0): 1}

    def __repr__(self):
        return f"CoeffPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self.terms.items(), key=lambda t: (-(t[0][0] + t[0][1]), t[0])):
            mono = "*".join(
                s for s in (_pw("hbar", a), _pw("eta", b)) if s
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def _pw(name, e):
    if e == 0:
        return ""
    return name if e == 1 else f"{name}^{e}"


ONE = CoeffPoly(1)
HBAR = CoeffPoly.monomial(1, 0)
ETA = CoeffPoly.monomial(0, 1)
