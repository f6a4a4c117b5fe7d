"""Free algebras over the scalars, optionally decorated by commuting torus
generators that are always moved to the right of the word.

A torus generator t and a letter X satisfy t X = q^k X t, with the integer
k taken from the commutation table.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from ..scalar import ONE, ZERO, Scalar, q


class FreeAlgebra:
    def __init__(self, letters: Iterable[str], torus: Iterable[str] = (),
                 commute: Mapping[tuple[str, str], int] | None = None):
        self.letters = tuple(letters)
        self.torus = tuple(torus)
        if len(set(self.letters)) != len(self.letters):
            raise ValueError("repeated letter")
        self._comm = {}
        for (t, x), k in (commute or {}).items():
            if t not in self.torus or x not in self.letters:
                raise ValueError(f"commutation entry ({t}, {x}) names an unknown generator")
            self._comm[(self.torus.index(t), x)] = int(k)

    @property
    def zero_torus(self) -> tuple:
        return (0,) * len(self.torus)

    def exponent(self, torus: tuple, word: tuple) -> int:
        """k with t^torus * word = q^k word * t^torus."""
        k = 0
        for i, e in enumerate(torus):
            if e:
                for x in word:
                    k += e * self._comm.get((i, x), 0)
        return k

    def letter(self, name: str) -> "FreePoly":
        if name not in self.letters:
            raise ValueError(f"unknown letter {name!r}")
        return FreePoly(self, {((name,), self.zero_torus): ONE})

    def torus_elem(self, exps: Mapping[str, int] | tuple) -> "FreePoly":
        if isinstance(exps, Mapping):
            exps = tuple(exps.get(t, 0) for t in self.torus)
        return FreePoly(self, {((), tuple(exps)): ONE})

    def scalar(self, s: Scalar | int) -> "FreePoly":
        if isinstance(s, int):
            s = Scalar.from_int(s)
        return FreePoly(self, {((), self.zero_torus): s})

    def word(self, letters: Iterable[str], coeff: Scalar = ONE) -> "FreePoly":
        w = tuple(letters)
        for x in w:
            if x not in self.letters:
                raise ValueError(f"unknown letter {x!r}")
        return FreePoly(self, {(w, self.zero_torus): coeff})

    def zero(self) -> "FreePoly":
        return FreePoly(self, {})


class FreePoly:
    """Linear combination of (word, torus exponent) pairs."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: FreeAlgebra, terms: Mapping | None = None):
        self.alg = alg
        self.terms = {k: v for k, v in (terms or {}).items() if not v.is_zero()}

    def _same(self, other: "FreePoly"):
        if other.alg is not self.alg:
            raise ValueError("polynomials live in different algebras")

    def __add__(self, other: "FreePoly") -> "FreePoly":
        self._same(other)
        d = dict(self.terms)
        for k, v in other.terms.items():
            d[k] = d.get(k, ZERO) + v
        return FreePoly(self.alg, d)

    def __neg__(self):
        return FreePoly(self.alg, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s: Scalar) -> "FreePoly":
        return FreePoly(self.alg, {k: v * s for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self.scale(other if isinstance(other, Scalar) else Scalar.from_int(other))
        self._same(other)
        d: dict = {}
        for (w1, t1), c1 in self.terms.items():
            for (w2, t2), c2 in other.terms.items():
                k = self.alg.exponent(t1, w2)
                key = (w1 + w2, tuple(x + y for x, y in zip(t1, t2)))
                val = c1 * c2 if k == 0 else c1 * c2 * q(k)
                d[key] = d.get(key, ZERO) + val
        return FreePoly(self.alg, d)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int) -> "FreePoly":
        out = self.alg.scalar(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, FreePoly):
            return NotImplemented
        return self.alg is other.alg and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, word: Iterable[str], torus: tuple | None = None) -> Scalar:
        key = (tuple(word), self.alg.zero_torus if torus is None else tuple(torus))
        return self.terms.get(key, ZERO)

    def degree(self, letter: str) -> int:
        return max((w.count(letter) for w, _ in self.terms), default=0)

    def homogeneous_part(self, letter: str, d: int) -> "FreePoly":
        return FreePoly(self.alg, {k: v for k, v in self.terms.items() if k[0].count(letter) == d})

    def map_coefficients(self, fn) -> "FreePoly":
        return FreePoly(self.alg, {k: fn(v) for k, v in self.terms.items()})

    def bar(self, images=None, letter_map: Mapping[str, str] | None = None,
            target: FreeAlgebra | None = None) -> "FreePoly":
        """Bar coefficients, invert torus exponents and relabel letters."""
        lm = letter_map or {}
        d: dict = {}
        for (w, t), v in self.terms.items():
            key = (tuple(lm.get(x, x) for x in w), tuple(-e for e in t))
            d[key] = d.get(key, ZERO) + v.bar(images)
        return FreePoly(target or self.alg, d)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (-len(kv[0][0]), kv[0]))

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (w, t), v in self.sorted_terms():
            mono = "*".join(w) if w else "1"
            tor = "".join(f"*{n}^{e}" for n, e in zip(self.alg.torus, t) if e)
            parts.append(f"({v.to_text()})*{mono}{tor}")
        return " + ".join(parts)

    __str__ = to_text

    def to_json(self) -> list:
        out = []
        for (w, t), v in self.sorted_terms():
            row = {"word": list(w), "coeff": v.to_text()}
            if any(t):
                row["torus"] = {n: e for n, e in zip(self.alg.torus, t) if e}
            out.append(row)
        return out

    def __repr__(self):
        return f"FreePoly({self.to_text()})"
