"""Exact Laurent polynomials and reduced rational functions.

Variables are triples ``(family, node, index)`` with ``family`` one of
``"u"``, ``"x"``, ``"y"``, ``"a"``; ``index`` is 0-based internally and printed
1-based.  Coefficients are :class:`fractions.Fraction`.

Reduction of fractions uses sympy's sparse polynomial rings for the
multivariate gcd; everything else is plain dictionaries.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from sympy import QQ
from sympy.polys.orderings import lex
from sympy.polys.rings import ring

FAMILIES = ("u", "x", "y", "a")
_FAMILY_RANK = {f: k for k, f in enumerate(FAMILIES)}
_PRINTED = {"u": "u", "x": "x", "y": "y", "a": "A"}
FIBER_FAMILIES = frozenset(("u", "x"))


def _node_key(node):
    s = str(node)
    return (0, int(s), s) if s.isdigit() else (1, 0, s)


@lru_cache(maxsize=None)
def var_key(v):
    """Total order on variables: family, then node, then index."""
    return (_FAMILY_RANK[v[0]], _node_key(v[1]), v[2])


@lru_cache(maxsize=None)
def var_name(v) -> str:
    fam, node, idx = v
    return f"{_PRINTED[fam]}[{node},{idx + 1}]"


def _mono(pairs):
    """Canonical monomial: tuple of (var, exp) sorted by ``var_key``, no zeros."""
    acc = {}
    for v, e in pairs:
        acc[v] = acc.get(v, 0) + e
    return tuple(sorted(((v, e) for v, e in acc.items() if e), key=lambda t: var_key(t[0])))


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    return _mono(m1 + m2)


def _mono_inv(m):
    return tuple((v, -e) for v, e in m)


def mono_text(m) -> str:
    parts = []
    for v, e in sorted(m, key=lambda t: var_name(t[0])):
        parts.append(var_name(v) if e == 1 else f"{var_name(v)}^{e}")
    return "*".join(parts)


def _coeff_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _term_sort_key(m):
    return (sum(abs(e) for _, e in m), mono_text(m))


class LaurentPoly:
    """Sparse Laurent polynomial with rational coefficients (immutable by convention)."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        t = {}
        if terms:
            for m, c in terms.items():
                if c:
                    t[m] = Fraction(c)
        self.terms = t
        self._hash = None

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({(): c})

    @classmethod
    def var(cls, family, node, idx, exp=1) -> "LaurentPoly":
        return cls({_mono([((family, str(node), idx), exp)]): 1})

    @classmethod
    def monomial(cls, pairs, coeff=1) -> "LaurentPoly":
        return cls({_mono(pairs): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def variables(self):
        return {v for m in self.terms for v, _ in m}

    def __add__(self, other):
        other = _lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        if isinstance(other, LaurentRational):
            return NotImplemented
        other = _lift(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have Laurent inverses")
            ((m, c),) = self.terms.items()
            return LaurentPoly({tuple((v, e * -k) for v, e in _mono_inv(m)): Fraction(1) / c ** -k})
        out = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, LaurentRational):
            return other == self
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def subs(self, mapping) -> "LaurentRational":
        """Substitute variables by LaurentPoly/LaurentRational values."""
        total = LaurentRational(LaurentPoly())
        for m, c in self.terms.items():
            term = LaurentRational(LaurentPoly.const(c))
            keep = []
            for v, e in m:
                if v in mapping:
                    val = _lift_rational(mapping[v])
                    term = term * (val ** e)
                else:
                    keep.append((v, e))
            if keep:
                term = term * LaurentPoly.monomial(keep)
            total = total + term
        return total

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _term_sort_key(t[0]))

    def text(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for k, (m, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            a = -c if neg else c
            if not m:
                body = _coeff_text(a)
            elif a == 1:
                body = mono_text(m)
            else:
                body = f"{_coeff_text(a)}*{mono_text(m)}"
            if k == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"LaurentPoly({self.text()})"


def _lift(v) -> LaurentPoly:
    if isinstance(v, LaurentPoly):
        return v
    if isinstance(v, (int, Fraction)):
        return LaurentPoly.const(v)
    raise TypeError(f"cannot use {type(v).__name__} as a Laurent polynomial")


def _lift_rational(v) -> "LaurentRational":
    return v if isinstance(v, LaurentRational) else LaurentRational(_lift(v))


# ---------------------------------------------------------------- reduction


def _to_ring(polys):
    """Shift exponents to be nonnegative and build sympy ring elements."""
    vs = sorted(set().union(*(p.variables() for p in polys)), key=var_key)
    pos = {v: k for k, v in enumerate(vs)}
    shifts = []
    for p in polys:
        low = [0] * len(vs)
        for m in p.terms:
            for v, e in m:
                k = pos[v]
                if e < low[k]:
                    low[k] = e
        shifts.append(low)
    if not vs:
        return vs, shifts, None, [p.terms.get((), Fraction(0)) for p in polys]
    R, *_ = ring(",".join(f"v{k}" for k in range(len(vs))), QQ, lex)
    elems = []
    for p, low in zip(polys, shifts):
        d = {}
        for m, c in p.terms.items():
            ex = [-s for s in low]
            for v, e in m:
                ex[pos[v]] += e
            d[tuple(ex)] = QQ(c.numerator, c.denominator)
        elems.append(R.from_dict(d))
    return vs, shifts, R, elems


def _from_ring(vs, elem, low) -> LaurentPoly:
    out = {}
    for ex, c in elem.terms():
        m = tuple((vs[k], e + low[k]) for k, e in enumerate(ex) if e + low[k])
        out[m] = Fraction(int(c.numerator), int(c.denominator))
    return LaurentPoly(out)


def _leading(p: LaurentPoly):
    """Leading term under graded lex order on (family, node, index) keys."""
    vs = sorted(p.variables(), key=var_key)

    def key(m):
        d = dict(m)
        return (sum(d.values()), tuple(d.get(v, 0) for v in vs))

    m = max(p.terms, key=key)
    return m, p.terms[m]


def _monomial_content(p: LaurentPoly):
    """Monomial gcd: per-variable minimum exponent over all terms."""
    vs = p.variables()
    low = {v: min(dict(m).get(v, 0) for m in p.terms) for v in vs}
    return _mono(low.items())


class LaurentRational:
    """Reduced fraction of Laurent polynomials.

    Canonical form: gcd removed, no monomial factor in the denominator, and the
    leading term of the denominator (graded lex on variable keys) equal to 1.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, *, reduced=False, coprime=False):
        num = _lift(num)
        den = LaurentPoly.const(1) if den is None else _lift(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not reduced:
            num, den = _reduce(num, den, coprime)
        self.num = num
        self.den = den
        self._hash = None

    def is_zero(self):
        return self.num.is_zero()

    def is_poly(self):
        return self.den.is_const()

    def __add__(self, other):
        other = _lift_rational(other) if not isinstance(other, LaurentRational) else other
        if self.den == other.den:
            return LaurentRational(self.num + other.num, self.den)
        return LaurentRational(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return LaurentRational(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        return self + (-_lift_rational(other))

    def __rsub__(self, other):
        return _lift_rational(other) - self

    def __mul__(self, other):
        other = _lift_rational(other)
        return LaurentRational(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return LaurentRational(self.den, self.num)

    def __truediv__(self, other):
        return self * _lift_rational(other).inverse()

    def __rtruediv__(self, other):
        return _lift_rational(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return LaurentRational(self.num ** k, self.den ** k, reduced=True)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = LaurentRational(_lift(other))
        if not isinstance(other, LaurentRational):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def subs(self, mapping) -> "LaurentRational":
        return self.num.subs(mapping) / self.den.subs(mapping)

    def variables(self):
        return self.num.variables() | self.den.variables()

    def text(self) -> str:
        num = grouped_text(self.num)
        if self.den.is_const():
            return num
        return f"({num}) / ({grouped_text(self.den)})"

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"LaurentRational({self.text()})"


def _reduce(num: LaurentPoly, den: LaurentPoly, coprime=False):
    if num.is_zero():
        return LaurentPoly(), LaurentPoly.const(1)
    if not coprime and not den.is_monomial():
        vs, shifts, R, (pn, pd) = _to_ring([num, den])
        if R is not None:
            _, pn, pd = pn.cofactors(pd)
            num = _from_ring(vs, pn, shifts[0])
            den = _from_ring(vs, pd, shifts[1])
    content = _monomial_content(den)
    if content:
        inv = LaurentPoly({_mono_inv(content): 1})
        num, den = num * inv, den * inv
    m, c = _leading(den)
    scale = LaurentPoly({_mono_inv(m): Fraction(1) / c})
    return num * scale, den * scale


def grouped_text(p: LaurentPoly) -> str:
    """Print ``p`` grouped by its fiber (u, x) monomial.

    Each group reads ``X``, ``-X``, ``C * X`` or ``(C) * X`` where ``C`` is the
    coefficient polynomial in the base variables (y, a).
    """
    if p.is_zero():
        return "0"
    groups = {}
    for m, c in p.terms.items():
        fib = tuple((v, e) for v, e in m if v[0] in FIBER_FAMILIES)
        base = tuple((v, e) for v, e in m if v[0] not in FIBER_FAMILIES)
        groups.setdefault(fib, {})[base] = c
    out = []
    for k, fib in enumerate(sorted(groups, key=_term_sort_key)):
        coeff = LaurentPoly(groups[fib])
        if not fib:
            body = coeff.text()
        else:
            x = mono_text(fib)
            if coeff == 1:
                body = x
            elif coeff == -1:
                body = f"-{x}"
            elif len(coeff.terms) == 1:
                body = f"{coeff.text()} * {x}"
            else:
                body = f"({coeff.text()}) * {x}"
        if k and body.startswith("-"):
            out.append(f" - {body[1:]}")
        elif k:
            out.append(f" + {body}")
        else:
            out.append(body)
    return "".join(out)


def var(family, node, idx, exp=1) -> LaurentPoly:
    """Shorthand for a single variable power; ``idx`` is 0-based."""
    return LaurentPoly.var(family, node, idx, exp)


def rational(v) -> LaurentRational:
    return _lift_rational(v)


def specialize_flavour(r, value=1):
    """Set every ``a`` variable to ``value`` (the undeformed algebra for 1)."""
    mapping = {v: LaurentPoly.const(value) for v in r.variables() if v[0] == "a"}
    return r.subs(mapping) if mapping else _lift_rational(r)


def _mono_is_canonical(m) -> bool:
    """A monomial is canonical when its first variable has a positive exponent."""
    return bool(m) and m[0][1] > 0


class Factored:
    """``c * monomial * prod (1 - m_k)^{e_k}`` with canonical binomials.

    Each binomial ``1 - m`` is stored with ``m`` canonical (first variable to a
    positive power), using ``1 - m = -m (1 - 1/m)``.  Distinct canonical
    binomials with primitive exponent vectors are non-associate irreducibles,
    so equal values give equal representations.
    """

    __slots__ = ("coeff", "mono", "binoms")

    def __init__(self, coeff=1, mono=(), binoms=None):
        self.coeff = Fraction(coeff)
        self.mono = _mono(mono)
        self.binoms = {m: e for m, e in (binoms or {}).items() if e}

    @classmethod
    def monomial(cls, pairs, coeff=1):
        return cls(coeff, pairs)

    @classmethod
    def one_minus(cls, pairs):
        m = _mono(pairs)
        if not m:
            raise ValueError("1 - 1 is zero")
        if _mono_is_canonical(m):
            return cls(1, (), {m: 1})
        return cls(-1, m, {_mono_inv(m): 1})

    def __mul__(self, other):
        b = dict(self.binoms)
        for m, e in other.binoms.items():
            b[m] = b.get(m, 0) + e
        return Factored(self.coeff * other.coeff, self.mono + other.mono, b)

    def __pow__(self, k: int):
        return Factored(self.coeff ** k, tuple((v, e * k) for v, e in self.mono), {m: e * k for m, e in self.binoms.items()})

    def inverse(self):
        return self ** -1

    def __eq__(self, other):
        if not isinstance(other, Factored):
            return NotImplemented
        return (self.coeff, self.mono, self.binoms) == (other.coeff, other.mono, other.binoms)

    def __hash__(self):
        return hash((self.coeff, self.mono, frozenset(self.binoms.items())))

    def to_rational(self) -> LaurentRational:
        num = LaurentPoly({self.mono: self.coeff})
        den = LaurentPoly.const(1)
        for m, e in sorted(self.binoms.items(), key=lambda t: _term_sort_key(t[0])):
            b = 1 - LaurentPoly({m: 1})
            if e > 0:
                num = num * b ** e
            else:
                den = den * b ** -e
        # distinct canonical binomials with primitive exponents are coprime,
        # so only the monomial content and leading coefficient need fixing
        return LaurentRational(num, den, coprime=True)
