"""Exact scalars.

A ``Scalar`` is an element of the fraction field of the Laurent polynomial
ring Z[q^+-1, L^+-1, s, s1, s2, s3], where ``L`` stands for q^lambda and the
``s*`` symbols are parameters.  Polynomial arithmetic is delegated to
python-flint; Laurent exponents and the canonical form live here.

Canonical form of a fraction ``num / den``:

* ``den`` is a genuine polynomial not divisible by any variable (monomial
  factors are moved into ``num`` as negative exponents),
* the leading coefficient of ``den`` in lex order on (q, L, s, ...) is
  positive,
* ``gcd(num, den) = 1``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

import flint

VARS = ("q", "L", "s", "s1", "s2", "s3")
NVARS = len(VARS)
SYMBOLS = VARS[2:]
_CTX = flint.fmpz_mpoly_ctx.get(VARS, "lex")
_ZERO = (0,) * NVARS
_P0 = _CTX.from_dict({})
_P1 = _CTX.from_dict({_ZERO: 1})


class DivisionByZero(ZeroDivisionError):
    pass


class SpecializationPole(ArithmeticError):
    pass


class UnboundSymbol(ValueError):
    pass


def _mono(exps):
    return _CTX.from_dict({tuple(exps): 1})


def _add_exps(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _split_content(p):
    """Return (p / m, exps of m) where m is the monomial content of p."""
    e = tuple(int(x) for x in p.term_content().monoms()[0])
    if any(e):
        return p / _mono(e), tuple(e)
    return p, _ZERO


class LaurentPoly:
    """A Laurent polynomial stored as ``poly * var^shift``.

    ``poly`` is never divisible by a variable, so the representation is
    unique and equality is structural.
    """

    __slots__ = ("poly", "shift")

    def __init__(self, poly=None, shift=_ZERO, _normal=False):
        if poly is None:
            poly = _P0
        if _normal:
            self.poly, self.shift = poly, shift
            return
        if poly.is_zero():
            self.poly, self.shift = _P0, _ZERO
            return
        p, e = _split_content(poly)
        self.poly = p
        self.shift = _add_exps(shift, e) if any(e) else tuple(shift)

    @classmethod
    def from_terms(cls, terms: Mapping[tuple, int]) -> "LaurentPoly":
        terms = {tuple(k): int(v) for k, v in terms.items() if v}
        if not terms:
            return cls()
        low = tuple(min(k[i] for k in terms) for i in range(NVARS))
        shifted = {tuple(x - y for x, y in zip(k, low)): v for k, v in terms.items()}
        return cls(_CTX.from_dict(shifted), low)

    @classmethod
    def monomial(cls, coeff: int = 1, exps=_ZERO) -> "LaurentPoly":
        if coeff == 0:
            return cls()
        return cls(_CTX.from_dict({_ZERO: coeff}), tuple(exps), _normal=True)

    def terms(self) -> dict:
        sh = self.shift
        return {tuple(int(x) + y for x, y in zip(k, sh)): int(v) for k, v in self.poly.to_dict().items()}

    def __len__(self):
        return len(self.poly)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def is_one(self) -> bool:
        return self.poly.is_one() and not any(self.shift)

    def is_monomial(self) -> bool:
        return len(self.poly) == 1

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.shift == other.shift and self.poly == other.poly

    def __hash__(self):
        return hash((self.shift, str(self.poly)))

    def __neg__(self):
        return LaurentPoly(-self.poly, self.shift, _normal=True)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.poly.is_zero():
            return other
        if other.poly.is_zero():
            return self
        s1, s2 = self.shift, other.shift
        if s1 == s2:
            return LaurentPoly(self.poly + other.poly, s1)
        low = tuple(min(x, y) for x, y in zip(s1, s2))
        p1 = self.poly if s1 == low else self.poly * _mono(x - y for x, y in zip(s1, low))
        p2 = other.poly if s2 == low else other.poly * _mono(x - y for x, y in zip(s2, low))
        return LaurentPoly(p1 + p2, low)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly()
            return LaurentPoly(self.poly * other, self.shift, _normal=True)
        if self.poly.is_zero() or other.poly.is_zero():
            return LaurentPoly()
        # a product of polynomials without monomial factors has none either
        return LaurentPoly(self.poly * other.poly, _add_exps(self.shift, other.shift), _normal=True)

    __rmul__ = __mul__

    def map_exponents(self, fn) -> "LaurentPoly":
        """Apply ``fn`` to every exponent vector (must be injective)."""
        out = {}
        for k, v in self.terms().items():
            k2 = tuple(fn(k))
            out[k2] = out.get(k2, 0) + v
        return LaurentPoly.from_terms(out)

    def __repr__(self):
        return f"LaurentPoly({_poly_text(self.terms())})"


def _term_text(exps, c, first):
    parts = []
    for name, e in zip(VARS, exps):
        if e:
            parts.append(f"{name}^{e}")
    mag = abs(c)
    body = "*".join([str(mag)] + parts)
    if first:
        return body if c > 0 else "-" + body
    return (" + " if c > 0 else " - ") + body


def _poly_text(terms: Mapping[tuple, int]) -> str:
    if not terms:
        return "0"
    keys = sorted(terms, reverse=True)
    return "".join(_term_text(k, terms[k], i == 0) for i, k in enumerate(keys))


class Scalar:
    """Element of Frac(Z[q^+-1, L^+-1, s, s1, s2, s3]) in canonical form."""

    __slots__ = ("num", "_den")

    def __init__(self, num: LaurentPoly, den=None):
        # den is a raw flint polynomial; callers outside this module use the
        # constructors below
        self.num = num
        self._den = _P1 if den is None else den

    # -- constructors -------------------------------------------------

    @classmethod
    def from_int(cls, n: int) -> "Scalar":
        return cls(LaurentPoly.monomial(int(n)))

    @classmethod
    def mono(cls, coeff: int = 1, q: int = 0, L: int = 0, **symbols) -> "Scalar":
        exps = [q, L] + [symbols.get(name, 0) for name in SYMBOLS]
        return cls(LaurentPoly.monomial(coeff, tuple(exps)))

    @classmethod
    def q_pow(cls, k: int) -> "Scalar":
        return cls(LaurentPoly.monomial(1, (k,) + _ZERO[1:]))

    @classmethod
    def symbol(cls, name: str) -> "Scalar":
        if name not in VARS:
            raise ValueError(f"unknown symbol {name!r}")
        exps = tuple(1 if v == name else 0 for v in VARS)
        return cls(LaurentPoly.monomial(1, exps))

    @classmethod
    def laurent(cls, p: LaurentPoly) -> "Scalar":
        return cls(p)

    @classmethod
    def fraction(cls, num: LaurentPoly, den: LaurentPoly) -> "Scalar":
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        n = LaurentPoly(num.poly, tuple(x - y for x, y in zip(num.shift, den.shift)), _normal=True)
        return _reduce(n, den.poly)

    @classmethod
    def from_fraction(cls, x) -> "Scalar":
        x = Fraction(x)
        return cls.fraction(LaurentPoly.monomial(x.numerator), LaurentPoly.monomial(x.denominator))

    # -- views ------------------------------------------------------

    @property
    def den(self) -> LaurentPoly:
        return LaurentPoly(self._den, _ZERO, _normal=True)

    def is_zero(self) -> bool:
        return self.num.poly.is_zero()

    def is_one(self) -> bool:
        return self._den.is_one() and self.num.is_one()

    def is_laurent(self) -> bool:
        return self._den.is_one()

    def __bool__(self):
        return not self.num.poly.is_zero()

    def free_symbols(self) -> set:
        used = set()
        for part in (self.num.terms(), self.den.terms()):
            for k in part:
                used.update(VARS[i] for i, e in enumerate(k) if e)
        return used

    # -- arithmetic ------------------------------------------------------

    def __neg__(self):
        return Scalar(-self.num, self._den)

    def __add__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, int):
                other = Scalar.from_int(other)
            else:
                return NotImplemented
        if self.num.poly.is_zero():
            return other
        if other.num.poly.is_zero():
            return self
        d1, d2 = self._den, other._den
        if d1 == d2:
            n = self.num + other.num
            if d1.is_one():
                return Scalar(n)
            return _reduce(n, d1)
        if d1.is_one():
            return Scalar(self.num * LaurentPoly(d2, _ZERO, True) + other.num, d2)
        if d2.is_one():
            return Scalar(self.num + other.num * LaurentPoly(d1, _ZERO, True), d1)
        g = d1.gcd(d2)
        if g.is_one():
            n = self.num * LaurentPoly(d2, _ZERO, True) + other.num * LaurentPoly(d1, _ZERO, True)
            return Scalar(n, d1 * d2)
        a1 = d1 / g
        a2 = d2 / g
        n = self.num * LaurentPoly(a2, _ZERO, True) + other.num * LaurentPoly(a1, _ZERO, True)
        return _reduce(n, a1 * d2)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = Scalar.from_int(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, int):
                if not other:
                    return ZERO
                if self._den.is_one():
                    return Scalar(self.num * other)
                other = Scalar.from_int(other)
            else:
                return NotImplemented
        d1, d2 = self._den, other._den
        if d1.is_one() and d2.is_one():
            return Scalar(self.num * other.num)
        if self.num.poly.is_zero() or other.num.poly.is_zero():
            return ZERO
        n1, n2 = self.num, other.num
        if not d2.is_one():
            g = n1.poly.gcd(d2)
            if not g.is_one():
                n1 = LaurentPoly(n1.poly / g, n1.shift, True)
                d2 = d2 / g
        if not d1.is_one():
            g = n2.poly.gcd(d1)
            if not g.is_one():
                n2 = LaurentPoly(n2.poly / g, n2.shift, True)
                d1 = d1 / g
        return _signed(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inv(self) -> "Scalar":
        if self.num.poly.is_zero():
            raise DivisionByZero("inverse of zero")
        p = self.num.poly
        neg_shift = tuple(-x for x in self.num.shift)
        return _signed(LaurentPoly(self._den, neg_shift, True), p)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = Scalar.from_int(other)
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = Scalar.from_int(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self._den == other._den and self.num == other.num

    def __hash__(self):
        return hash(self.to_text())

    # -- maps ---------------------------------------------------------

    def _map(self, fn) -> "Scalar":
        return Scalar.fraction(self.num.map_exponents(fn), self.den.map_exponents(fn))

    def bar(self, images: Mapping[str, "Scalar"] | None = None) -> "Scalar":
        """q -> q^-1, L -> L^-1; symbols fixed unless ``images`` says otherwise.

        Images must be Laurent monomials (e.g. ``q^2*s``).
        """
        moves = []
        for name, img in (images or {}).items():
            i = VARS.index(name)
            if not img.is_laurent() or not img.num.is_monomial():
                raise ValueError(f"bar image of {name} must be a monomial")
            (exps, coeff), = img.num.terms().items()
            moves.append((i, exps, coeff))

        if not moves:
            return self._map(lambda k: (-k[0], -k[1]) + k[2:])

        def image(p: LaurentPoly) -> LaurentPoly:
            out = {}
            for k, v in p.terms().items():
                new = [-k[0], -k[1]] + list(k[2:])
                c = v
                for i, exps, coeff in moves:
                    e = k[i]
                    new[i] -= e
                    for j in range(NVARS):
                        new[j] += e * exps[j]
                    c *= coeff ** e if e >= 0 else 1
                    if e < 0 and coeff not in (1, -1):
                        raise ValueError("negative power of a non-unit image")
                    if e < 0:
                        c *= coeff ** (-e)
                key = tuple(new)
                out[key] = out.get(key, 0) + c
            return LaurentPoly.from_terms(out)

        return Scalar.fraction(image(self.num), image(self.den))

    def subs_lambda(self, lam: int) -> "Scalar":
        """Substitute L = q^lam."""
        return self._map(lambda k: (k[0] + lam * k[1], 0) + k[2:])

    def scale_q(self, k: int) -> "Scalar":
        """Substitute q -> q^k (k nonzero)."""
        if k == 0:
            raise ValueError("q -> q^0 is not allowed")
        return self._map(lambda e: (k * e[0],) + e[1:])

    def subs(self, name: str, value: "Scalar") -> "Scalar":
        """Substitute a symbol by an arbitrary scalar."""
        i = VARS.index(name)

        def image(p: LaurentPoly) -> Scalar:
            groups: dict[int, dict] = {}
            for k, v in p.terms().items():
                g = groups.setdefault(k[i], {})
                rest = k[:i] + (0,) + k[i + 1:]
                g[rest] = g.get(rest, 0) + v
            out = ZERO
            for e, terms in groups.items():
                out = out + Scalar(LaurentPoly.from_terms(terms)) * value ** e
            return out

        return image(self.num) / image(self.den)

    def specialize_q1(self, values: Mapping[str, Fraction] | None = None) -> Fraction:
        """Evaluate at q = 1, L = 1.

        Symbols must be given a value in ``values``; a remaining symbol
        raises ``UnboundSymbol``.  A vanishing denominator raises
        ``SpecializationPole``.
        """
        values = {k: Fraction(v) for k, v in (values or {}).items()}

        def at_one(p: LaurentPoly) -> Fraction:
            total = Fraction(0)
            for k, v in p.terms().items():
                term = Fraction(v)
                for name, e in zip(SYMBOLS, k[2:]):
                    if e:
                        if name not in values:
                            raise UnboundSymbol(f"symbol {name} has no value at q = 1")
                        term *= values[name] ** e
                total += term
            return total

        d = at_one(self.den)
        n = at_one(self.num)
        if d == 0:
            raise SpecializationPole(f"denominator vanishes at q = 1: {self.to_text()}")
        return n / d

    # -- text -----------------------------------------------------------

    def to_text(self) -> str:
        n = _poly_text(self.num.terms())
        if self._den.is_one():
            return n
        d = _poly_text(self.den.terms())
        return f"({n}) / ({d})"

    __str__ = to_text

    def __repr__(self):
        return f"Scalar({self.to_text()})"

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        return parse_scalar(text)


def _signed(n: LaurentPoly, d) -> Scalar:
    """Fix sign and monomial content of an already coprime denominator."""
    if d.is_one():
        return Scalar(n)
    if d.is_zero():
        raise DivisionByZero("zero denominator")
    d, e = _split_content(d)
    if any(e):
        n = LaurentPoly(n.poly, tuple(x - y for x, y in zip(n.shift, e)), True)
    if d.leading_coefficient() < 0:
        d = -d
        n = -n
    if d.is_one():
        return Scalar(n)
    return Scalar(n, d)


def _reduce(n: LaurentPoly, d) -> Scalar:
    if d.is_zero():
        raise DivisionByZero("zero denominator")
    if n.poly.is_zero():
        return ZERO
    if d.is_one():
        return Scalar(n)
    g = n.poly.gcd(d)
    if not g.is_one():
        n = LaurentPoly(n.poly / g, n.shift, True)
        d = d / g
    return _signed(n, d)


ZERO = Scalar(LaurentPoly())
ONE = Scalar.from_int(1)


def q(k: int = 1) -> Scalar:
    return Scalar.q_pow(k)


def total(xs: Iterable[Scalar]) -> Scalar:
    out = ZERO
    for x in xs:
        out = out + x
    return out


_TERM_RE = re.compile(r"^(?:(\d+)|([A-Za-z]\w*)(?:\^(-?\d+))?)$")


def _parse_sum(text: str) -> LaurentPoly:
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty expression")
    if s[0] not in "+-":
        s = "+" + s
    # split on +/- that do not follow '^'
    chunks = []
    start = 0
    for i in range(1, len(s)):
        if s[i] in "+-" and s[i - 1] != "^":
            chunks.append(s[start:i])
            start = i
    chunks.append(s[start:])
    terms: dict[tuple, int] = {}
    for ch in chunks:
        sign = -1 if ch[0] == "-" else 1
        body = ch[1:]
        coeff = sign
        exps = [0] * NVARS
        for factor in body.split("*"):
            m = _TERM_RE.match(factor)
            if not m:
                raise ValueError(f"bad factor {factor!r} in {text!r}")
            if m.group(1):
                coeff *= int(m.group(1))
            else:
                name = m.group(2)
                if name not in VARS:
                    raise ValueError(f"unknown symbol {name!r}")
                exps[VARS.index(name)] += int(m.group(3) or 1)
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coeff
    return LaurentPoly.from_terms(terms)


def _strip_parens(s: str) -> str:
    s = s.strip()
    while s.startswith("(") and s.endswith(")"):
        depth = 0
        for i, ch in enumerate(s):
            depth += ch == "("
            depth -= ch == ")"
            if depth == 0 and i < len(s) - 1:
                return s
        s = s[1:-1].strip()
    return s


def parse_scalar(text: str) -> Scalar:
    """Parse the canonical text form (and reasonable variations of it)."""
    s = text.strip()
    depth = 0
    for i, ch in enumerate(s):
        depth += ch == "("
        depth -= ch == ")"
        if ch == "/" and depth == 0:
            num = _parse_sum(_strip_parens(s[:i]))
            den = _parse_sum(_strip_parens(s[i + 1:]))
            return Scalar.fraction(num, den)
    return Scalar(_parse_sum(_strip_parens(s)))
