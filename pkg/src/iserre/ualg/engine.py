"""Normal forms in the idempotented rank-2 quantum group, restricted to the
stratum spanned by

    E1^(a) F1^(b) [F2 F1^(c)] 1*_m

with a fixed right idempotent ``1*_m``.  The weight ``m`` is the pairing of
h1 with the weight, written ``2*lambda + shift``; lambda is either a symbol
(coefficients then involve L = q^lambda) or a fixed integer.

Left multiplications are implemented from the commutation rules; nothing
about the B-elements is built in here except through those rules.
"""

from __future__ import annotations

import random
from typing import Iterable, NamedTuple

from ..qcomb import QBase, UpperArg, qbinom, qfact, qint
from ..scalar import ONE, ZERO, Scalar, q
from .cartan import CartanData


class EngineError(ValueError):
    pass


class DegreeCapExceeded(EngineError):
    pass


class ParityMismatch(EngineError):
    pass


class StarWeight(NamedTuple):
    """The weight 2*lambda + shift."""

    shift: int = 0

    @classmethod
    def from_parity(cls, parity: int, offset: int = 0) -> "StarWeight":
        """2*lambda + offset (parity 0) or 2*lambda - 1 + offset (parity 1)."""
        return cls(offset - parity)

    @property
    def parity(self) -> int:
        return self.shift % 2

    def text(self) -> str:
        s = self.shift
        return "2l" if s == 0 else f"2l{s:+d}"


EVEN = StarWeight(0)
ODD = StarWeight(-1)


class NormalMonomial(NamedTuple):
    a: int
    b: int
    f2: bool
    c: int
    weight: StarWeight

    def text(self) -> str:
        parts = []
        if self.a:
            parts.append(f"E^({self.a})")
        if self.b:
            parts.append(f"F^({self.b})")
        if self.f2:
            parts.append("F2")
            if self.c:
                parts.append(f"F^({self.c})")
        parts.append(f"1[{self.weight.text()}]")
        return "*".join(parts)


def _acc(d: dict, key, coeff: Scalar):
    if coeff.is_zero():
        return
    old = d.get(key)
    if old is None:
        d[key] = coeff
    else:
        new = old + coeff
        if new.is_zero():
            del d[key]
        else:
            d[key] = new


class StratumElement:
    """Finite linear combination of normal monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if not v.is_zero()}

    def items(self):
        return self.terms.items()

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mon: NormalMonomial) -> Scalar:
        return self.terms.get(mon, ZERO)

    def __add__(self, other: "StratumElement") -> "StratumElement":
        d = dict(self.terms)
        for k, v in other.terms.items():
            _acc(d, k, v)
        return StratumElement(d)

    def __neg__(self):
        return StratumElement({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s: Scalar) -> "StratumElement":
        if s.is_zero():
            return StratumElement()
        return StratumElement({k: v * s for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, StratumElement):
            return NotImplemented
        return self.terms == other.terms

    def map_coefficients(self, fn) -> "StratumElement":
        return StratumElement({k: fn(v) for k, v in self.terms.items()})

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda m: (m.weight.shift, m.f2, m.a, m.b, m.c))
        return " + ".join(f"({self.terms[k].to_text()})*{k.text()}" for k in keys)

    __str__ = to_text

    def __repr__(self):
        return f"StratumElement({self.to_text()})"


def combine(parts: Iterable[tuple[Scalar, StratumElement]]) -> StratumElement:
    d: dict = {}
    for s, x in parts:
        if s.is_zero():
            continue
        for k, v in x.terms.items():
            _acc(d, k, v * s)
    return StratumElement(d)


# letters of words: ("E", k), ("F", k), ("F2", 1)
Letter = tuple


class Engine:
    def __init__(self, cartan: CartanData, lam: int | None = None, degree_cap: int = 64):
        self.cartan = cartan
        self.lam = lam
        self.degree_cap = degree_cap
        self.a12 = cartan.a12
        self.M = 1 - cartan.a12
        self.eps1 = cartan.eps1
        self.b1 = QBase(cartan.eps1, False)
        self.b1sq = QBase(cartan.eps1, True)

    # -- helpers ----------------------------------------------------------

    def arg(self, lc: int, const: int) -> UpperArg:
        """The upper argument lc*lambda + const."""
        if self.lam is None:
            return UpperArg(lc, const)
        return UpperArg(0, lc * self.lam + const)

    def q1_pow(self, lc: int, const: int) -> Scalar:
        """q1^(lc*lambda + const)."""
        if self.lam is None:
            return Scalar.mono(1, q=self.eps1 * const, L=self.eps1 * lc)
        return q(self.eps1 * (lc * self.lam + const))

    def weight_value(self, w: StarWeight) -> int:
        if self.lam is None:
            raise EngineError("weight value needs a concrete lambda")
        return 2 * self.lam + w.shift

    def left_shift(self, mon: NormalMonomial) -> int:
        return mon.weight.shift + 2 * mon.a - 2 * mon.b - 2 * mon.c - (self.a12 if mon.f2 else 0)

    def left_weight(self, mon: NormalMonomial) -> StarWeight:
        return StarWeight(self.left_shift(mon))

    def _cap(self, mon: NormalMonomial) -> NormalMonomial:
        if mon.a + mon.b + mon.c + int(mon.f2) > self.degree_cap:
            raise DegreeCapExceeded(f"{mon.text()} exceeds degree cap {self.degree_cap}")
        return mon

    def one(self, weight: StarWeight = EVEN) -> StratumElement:
        return StratumElement({NormalMonomial(0, 0, False, 0, StarWeight(*weight)): ONE})

    def monomial(self, a, b, f2, c, weight=EVEN, coeff: Scalar = ONE) -> StratumElement:
        return StratumElement({NormalMonomial(a, b, f2, c, StarWeight(*weight)): coeff})

    # -- left actions -------------------------------------------------------

    def act_E1(self, k: int, x: StratumElement) -> StratumElement:
        if k < 0:
            raise EngineError("negative divided power")
        if k == 0:
            return x
        d: dict = {}
        for mon, v in x.items():
            new = self._cap(mon._replace(a=mon.a + k))
            _acc(d, new, v * qbinom(mon.a + k, k, self.b1))
        return StratumElement(d)

    def act_F1(self, k: int, x: StratumElement) -> StratumElement:
        if k < 0:
            raise EngineError("negative divided power")
        if k == 0:
            return x
        d: dict = {}
        for mon, v in x.items():
            # idempotent immediately to the right of E^(a)
            s0 = mon.weight.shift - 2 * mon.c - (self.a12 if mon.f2 else 0) - 2 * mon.b
            for j in range(min(k, mon.a) + 1):
                cj = qbinom(self.arg(-2, k - mon.a - s0), j, self.b1)
                if cj.is_zero():
                    continue
                nb = mon.b + k - j
                coeff = v * cj * qbinom(nb, mon.b, self.b1)
                new = self._cap(NormalMonomial(mon.a - j, nb, mon.f2, mon.c, mon.weight))
                _acc(d, new, coeff)
        return StratumElement(d)

    def act_F2(self, x: StratumElement, reduce: bool = True) -> StratumElement:
        d: dict = {}
        for mon, v in x.items():
            if mon.f2:
                raise EngineError("a second F2 leaves the supported stratum")
            new = self._cap(NormalMonomial(mon.a, 0, True, mon.b, mon.weight))
            _acc(d, new, v)
        out = StratumElement(d)
        return self.reduce_qserre(out) if reduce else out

    def reduce_qserre(self, x: StratumElement) -> StratumElement:
        """Rewrite F2 F1^(c) with c >= 1 - a12 until no such factor is left."""
        M = self.M
        d = dict(x.terms)
        while True:
            todo = [m for m in d if m.f2 and m.c >= M]
            if not todo:
                return StratumElement(d)
            mon = max(todo, key=lambda m: m.c)
            v = d.pop(mon)
            c = mon.c
            inv = qbinom(c, M, self.b1).inv()
            for n in range(1, M + 1):
                coeff = qbinom(mon.b + n, n, self.b1) * qbinom(c - n, M - n, self.b1) * inv
                if n % 2 == 0:
                    coeff = -coeff
                _acc(d, NormalMonomial(mon.a, mon.b + n, True, c - n, mon.weight), v * coeff)

    def act_K1(self, k: int, x: StratumElement) -> StratumElement:
        """Left multiplication by Kt1^k."""
        d = {}
        for mon, v in x.items():
            d[mon] = v * self.q1_pow(2 * k, k * self.left_shift(mon))
        return StratumElement(d)

    def act_B1(self, x: StratumElement, parity: int | None = None) -> StratumElement:
        """Left multiplication by B1 = F1 + q1^-1 E1 Kt1^-1."""
        if parity is not None:
            self._check_parity(x, parity)
        f = self.act_F1(1, x)
        e = self.act_E1(1, self.act_K1(-1, x))
        return f + e.scale(q(-self.eps1))

    def _check_parity(self, x: StratumElement, p: int):
        for mon in x.terms:
            if self.left_shift(mon) % 2 != p % 2:
                raise ParityMismatch(f"{mon.text()} has left weight of the wrong parity for {p}")

    # -- idempotented B-polynomials ------------------------------------------------

    def idp_factors(self, m: int, p: int) -> list[Scalar]:
        """Constants c_j with B^(m)_p = B^(m mod 2) prod (B^2 - c_j) / [m]!."""
        k = m // 2
        b = self.b1
        if p % 2 == 1:
            return [qint(2 * j - 1, b) ** 2 for j in range(1, k + 1)]
        if m % 2:
            return [qint(2 * j, b) ** 2 for j in range(1, k + 1)]
        return [qint(2 * j - 2, b) ** 2 for j in range(1, k + 1)]

    def apply_idp(self, m: int, p: int, x: StratumElement) -> StratumElement:
        """Left multiplication by B^(m) of parity p, built from act_B1."""
        if m < 0:
            raise EngineError("negative divided power")
        self._check_parity(x, p)
        y = x
        for cst in self.idp_factors(m, p):
            y = self.act_B1(self.act_B1(y)) - y.scale(cst)
        if m % 2:
            y = self.act_B1(y)
        return y.scale(qfact(m, self.b1).inv())

    def idp_engine(self, m: int, p: int, weight: StarWeight) -> StratumElement:
        return self.apply_idp(m, p, self.one(weight))

    def expand_idp_closed(self, m: int, p: int, weight: StarWeight) -> StratumElement:
        """Closed-form expansion of B^(m)_p 1*_weight into E^(a) F^(b)."""
        weight = StarWeight(*weight)
        if weight.parity != p % 2:
            raise ParityMismatch(f"B^({m}) of parity {p} on weight {weight.text()}")
        if m < 0:
            raise EngineError("negative divided power")
        # weight = 2 lam' (p = 0) or 2 lam' - 1 (p = 1) with lam' = lambda + s
        s = (weight.shift + p) // 2
        d: dict = {}

        def put(a, b, lcoef, const, bin_const, c):
            coeff = self.q1_pow(lcoef, const) * qbinom(self.arg(-1, bin_const), c, self.b1sq)
            _acc(d, NormalMonomial(a, b, False, 0, weight), coeff)

        if p % 2 == 0:
            if m % 2 == 0:
                M = m // 2
                for c in range(M + 1):
                    for a in range(2 * M - 2 * c + 1):
                        const = 2 * (a + c) * (M - a - s) - 2 * a * c - c * (2 * c + 1)
                        put(a, 2 * M - 2 * c - a, -2 * (a + c), const, M - c - a - s, c)
            else:
                M = (m + 1) // 2
                for c in range(M):
                    for a in range(2 * M - 1 - 2 * c + 1):
                        const = 2 * (a + c) * (M - a - s) - 2 * a * c - a - c * (2 * c + 1)
                        put(a, 2 * M - 1 - 2 * c - a, -2 * (a + c), const, M - c - a - s - 1, c)
        else:
            if m % 2 == 0:
                M = m // 2
                for c in range(M + 1):
                    for a in range(2 * M - 2 * c + 1):
                        const = 2 * (a + c) * (M - a - s) - 2 * a * c + a - c * (2 * c - 1)
                        put(a, 2 * M - 2 * c - a, -2 * (a + c), const, M - c - a - s, c)
            else:
                M = (m - 1) // 2
                for c in range(M + 1):
                    for a in range(2 * M + 1 - 2 * c + 1):
                        const = 2 * (a + c) * (M - a - s) - 2 * a * c + 2 * a - c * (2 * c - 1)
                        put(a, 2 * M + 1 - 2 * c - a, -2 * (a + c), const, M - c - a - s + 1, c)
        return StratumElement(d)

    def apply_closed_idp(self, m: int, p: int, x: StratumElement) -> StratumElement:
        """Left multiplication by B^(m)_p using the closed form at each left weight."""
        parts = []
        for mon, v in x.items():
            single = StratumElement({mon: v})
            expansion = self.expand_idp_closed(m, p, self.left_weight(mon))
            for emon, ev in expansion.items():
                parts.append((ev, self.act_E1(emon.a, self.act_F1(emon.b, single))))
        return combine(parts)

    # -- words ------------------------------------------------------------

    def letter_shift(self, letter: Letter) -> int:
        kind, k = letter
        if kind == "E":
            return 2 * k
        if kind == "F":
            return -2 * k
        return -self.a12

    def apply_word(self, word, weight: StarWeight = EVEN, reduce: bool = True) -> StratumElement:
        """Apply the letters of ``word`` (left to right as written) to 1*_weight."""
        x = self.one(weight)
        for kind, k in reversed(list(word)):
            if kind == "E":
                x = self.act_E1(k, x)
            elif kind == "F":
                x = self.act_F1(k, x)
            elif kind == "F2":
                x = self.act_F2(x, reduce=False)
            else:
                raise EngineError(f"unknown letter {kind!r}")
        return self.reduce_qserre(x) if reduce else x

    def _redexes(self, word: tuple, shift: int):
        out = []
        n = len(word)
        # suffix shifts: weight to the right of position i
        right = [0] * (n + 1)
        right[n] = shift
        for i in range(n - 1, -1, -1):
            right[i] = right[i + 1] + self.letter_shift(word[i])
        for i in range(n - 1):
            (k1, _), (k2, y) = word[i], word[i + 1]
            if k1 == k2 and k1 in ("E", "F"):
                out.append((i, "merge"))
            elif k1 == "F" and k2 == "E":
                out.append((i, "FE"))
            elif k1 == "F2" and k2 == "E":
                out.append((i, "F2E"))
            elif k1 == "F2" and k2 == "F" and y >= self.M:
                out.append((i, "serre"))
            elif k1 == "F2" and k2 == "F2":
                raise EngineError("a second F2 leaves the supported stratum")
        return out, right

    def _rewrite(self, word: tuple, i: int, kind: str, right: list) -> list:
        pre, post = word[:i], word[i + 2:]
        (l1, x), (_, y) = word[i], word[i + 1]
        b = self.b1

        def w(*mid):
            return pre + tuple(t for t in mid if t[1] > 0) + post

        if kind == "merge":
            return [(qbinom(x + y, x, b), w((l1, x + y)))]
        if kind == "FE":
            s0 = right[i + 2]
            out = []
            for j in range(min(x, y) + 1):
                cj = qbinom(self.arg(-2, x - y - s0), j, b)
                if not cj.is_zero():
                    out.append((cj, w(("E", y - j), ("F", x - j))))
            return out
        if kind == "F2E":
            return [(ONE, w(word[i + 1], word[i]))]
        if kind == "serre":
            M, c = self.M, y
            inv = qbinom(c, M, b).inv()
            out = []
            for n in range(1, M + 1):
                coeff = qbinom(c - n, M - n, b) * inv
                if n % 2 == 0:
                    coeff = -coeff
                out.append((coeff, w(("F", n), ("F2", 1), ("F", c - n))))
            return out
        raise EngineError(kind)

    def _word_to_monomial(self, word: tuple, weight: StarWeight) -> NormalMonomial:
        a = b = c = 0
        f2 = False
        rest = list(word)
        if rest and rest[0][0] == "E":
            a = rest.pop(0)[1]
        if rest and rest[0][0] == "F":
            b = rest.pop(0)[1]
        if rest and rest[0][0] == "F2":
            rest.pop(0)
            f2 = True
            if rest and rest[0][0] == "F":
                c = rest.pop(0)[1]
        if rest or (f2 and c >= self.M):
            raise EngineError(f"word {word} is not in normal form")
        return self._cap(NormalMonomial(a, b, f2, c, weight))

    def normalize_word(self, word, weight: StarWeight = EVEN, strategy: str = "leftmost",
                       rng: random.Random | None = None) -> StratumElement:
        """Normalize a word by local rewriting with the chosen redex order."""
        weight = StarWeight(*weight)
        word = tuple(t for t in (tuple(x) for x in word) if t[1] > 0)
        if sum(1 for t in word if t[0] == "F2") > 1:
            raise EngineError("a second F2 leaves the supported stratum")
        if strategy == "random" and rng is None:
            rng = random.Random(0)
        state: dict = {word: ONE}
        while True:
            found = []
            for wd in sorted(state):
                reds, right = self._redexes(wd, weight.shift)
                for i, kind in reds:
                    found.append((wd, i, kind, right))
            if not found:
                break
            if strategy == "leftmost":
                pick = found[0]
            elif strategy == "rightmost":
                first = found[0][0]
                pick = [f for f in found if f[0] == first][-1]
            elif strategy == "random":
                pick = rng.choice(found)
            else:
                raise EngineError(f"unknown strategy {strategy!r}")
            wd, i, kind, right = pick
            v = state.pop(wd)
            for coeff, new in self._rewrite(wd, i, kind, right):
                _acc(state, new, v * coeff)
        d: dict = {}
        for wd, v in state.items():
            _acc(d, self._word_to_monomial(wd, weight), v)
        return StratumElement(d)

    # -- varpi ------------------------------------------------------------

    def varpi(self, x: StratumElement) -> StratumElement:
        """The involution E1 -> q1^-1 F1 Kt1, F1 -> q1^-1 E1 Kt1^-1, q -> q^-1.

        Defined on the F2-free part at a concrete lambda; it sends the
        idempotent at weight m to the one at weight -m.
        """
        if self.lam is None:
            raise EngineError("varpi needs a concrete lambda")
        parts = []
        for mon, v in x.items():
            if mon.f2:
                raise EngineError("varpi is only implemented on the F2-free part")
            m = self.weight_value(mon.weight)
            y = self.one(StarWeight(-m - 2 * self.lam))
            a, b = mon.a, mon.b
            y = self.act_K1(-b, y)
            y = self.act_E1(b, y)
            y = self.act_K1(a, y)
            y = self.act_F1(a, y)
            parts.append((v.bar() * q(-self.eps1 * (a * a + b * b)), y))
        return combine(parts)
