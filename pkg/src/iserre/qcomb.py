"""q-integers, q-factorials and q-binomials.

The base is ``Q = q^(eps)`` or ``Q = q^(2 eps)`` (``squared``).  An upper
argument may be symbolic: ``UpperArg(k, c)`` stands for ``k*lambda + c`` and
``Q^lambda`` is expressed through ``L = q^lambda``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .scalar import ONE, ZERO, LaurentPoly, Scalar


@dataclass(frozen=True)
class QBase:
    eps: int = 1
    squared: bool = False

    @property
    def step(self) -> int:
        """Exponent of q in Q."""
        return self.eps * (2 if self.squared else 1)


@dataclass(frozen=True)
class UpperArg:
    lambda_coeff: int = 0
    offset: int = 0

    def is_concrete(self) -> bool:
        return self.lambda_coeff == 0

    def __add__(self, k: int) -> "UpperArg":
        return UpperArg(self.lambda_coeff, self.offset + k)


BASE = QBase()
BASE2 = QBase(1, True)


def _as_arg(n) -> UpperArg:
    return n if isinstance(n, UpperArg) else UpperArg(0, int(n))


def _qpow_lp(step: int, lc: int, off: int, sign: int) -> LaurentPoly:
    # Q^(sign * (lc*lambda + off)) as a monomial
    return LaurentPoly.monomial(1, (sign * step * off, sign * step * lc, 0, 0, 0, 0))


@lru_cache(maxsize=None)
def _qint_concrete(n: int, step: int) -> Scalar:
    if n == 0:
        return ZERO
    sign = 1 if n > 0 else -1
    m = abs(n)
    terms = {(step * (m - 1 - 2 * k), 0, 0, 0, 0, 0): sign for k in range(m)}
    return Scalar(LaurentPoly.from_terms(terms))


@lru_cache(maxsize=None)
def _qint_symbolic(lc: int, off: int, step: int) -> Scalar:
    num = _qpow_lp(step, lc, off, 1) - _qpow_lp(step, lc, off, -1)
    den = _qpow_lp(step, 0, 1, 1) - _qpow_lp(step, 0, 1, -1)
    return Scalar.fraction(num, den)


def qint(n, base: QBase = BASE) -> Scalar:
    """The quantum integer [n] = (Q^n - Q^-n) / (Q - Q^-1)."""
    a = _as_arg(n)
    if a.lambda_coeff == 0:
        return _qint_concrete(a.offset, base.step)
    return _qint_symbolic(a.lambda_coeff, a.offset, base.step)


@lru_cache(maxsize=None)
def _qfact(m: int, step: int) -> Scalar:
    out = ONE
    for k in range(1, m + 1):
        out = out * _qint_concrete(k, step)
    return out


def qfact(m: int, base: QBase = BASE) -> Scalar:
    if m < 0:
        raise ValueError("q-factorial of a negative integer")
    return _qfact(m, base.step)


@lru_cache(maxsize=None)
def _qbinom_concrete(n: int, d: int, step: int) -> Scalar:
    if d < 0:
        return ZERO
    if d == 0:
        return ONE
    if 0 <= n < d:
        return ZERO
    num = ONE
    for j in range(d):
        num = num * _qint_concrete(n - j, step)
    out = num / _qfact(d, step)
    assert out.is_laurent(), f"q-binomial [{n}, {d}] is not a Laurent polynomial"
    return out


@lru_cache(maxsize=None)
def _qbinom_symbolic(lc: int, off: int, d: int, step: int) -> Scalar:
    if d < 0:
        return ZERO
    if d == 0:
        return ONE
    num = LaurentPoly.monomial(1)
    den = LaurentPoly.monomial(1)
    for j in range(d):
        num = num * (_qpow_lp(step, lc, off - j, 1) - _qpow_lp(step, lc, off - j, -1))
        den = den * (_qpow_lp(step, 0, j + 1, 1) - _qpow_lp(step, 0, j + 1, -1))
    return Scalar.fraction(num, den)


def qbinom(n, d: int, base: QBase = BASE) -> Scalar:
    """The q-binomial [n, d] = [n][n-1]...[n-d+1] / [d]!; zero for d < 0."""
    a = _as_arg(n)
    if a.lambda_coeff == 0:
        return _qbinom_concrete(a.offset, d, base.step)
    return _qbinom_symbolic(a.lambda_coeff, a.offset, d, base.step)


def qbinom2(n, d: int, eps: int = 1) -> Scalar:
    """q-binomial in the squared base q^(2 eps)."""
    return qbinom(n, d, QBase(eps, True))


def pascal_lower(m: int, t: int, base: QBase = BASE) -> Scalar:
    """Q^t [m-1, t] + Q^(t-m) [m-1, t-1], which equals [m, t]."""
    s = base.step
    return Scalar.q_pow(s * t) * qbinom(m - 1, t, base) + Scalar.q_pow(s * (t - m)) * qbinom(m - 1, t - 1, base)


def pascal_upper(m: int, t: int, base: QBase = BASE) -> Scalar:
    """Q^-t [m-1, t] + Q^(m-t) [m-1, t-1], which equals [m, t]."""
    s = base.step
    return Scalar.q_pow(-s * t) * qbinom(m - 1, t, base) + Scalar.q_pow(s * (m - t)) * qbinom(m - 1, t - 1, base)
