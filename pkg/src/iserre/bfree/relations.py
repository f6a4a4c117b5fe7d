"""Idempotented B-polynomials and the iSerre polynomial in the free algebra
on B1, B2, together with the checks that live at this level."""

from __future__ import annotations

import time

from ..qcomb import QBase, qbinom, qfact, qint
from ..report import Report
from ..scalar import ONE, ZERO, Scalar, q
from ..ualg.cartan import CartanData
from .algebra import FreeAlgebra, FreePoly

B_ALG = FreeAlgebra(("B1", "B2"))


def _upoly_mul(a: list, b: list) -> list:
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def idp_coefficients(m: int, p: int, sigma: Scalar, base: QBase = QBase()) -> list[Scalar]:
    """Coefficients (by degree) of B^(m)_p as a polynomial in B."""
    if m < 0:
        raise ValueError("negative divided power")
    qs = Scalar.q_pow(base.step) * sigma
    k = m // 2
    if p % 2 == 1:
        consts = [qint(2 * j - 1, base) ** 2 for j in range(1, k + 1)]
    elif m % 2:
        consts = [qint(2 * j, base) ** 2 for j in range(1, k + 1)]
    else:
        consts = [qint(2 * j - 2, base) ** 2 for j in range(1, k + 1)]
    poly = [ONE] if m % 2 == 0 else [ZERO, ONE]
    for c in consts:
        poly = _upoly_mul(poly, [-(qs * c), ZERO, ONE])
    inv = qfact(m, base).inv()
    return [c * inv for c in poly]


def idp_poly(m: int, p: int, sigma: Scalar, base: QBase = QBase(),
             alg: FreeAlgebra = B_ALG, letter: str = "B1") -> FreePoly:
    d = {}
    for deg, c in enumerate(idp_coefficients(m, p, sigma, base)):
        d[((letter,) * deg, alg.zero_torus)] = c
    return FreePoly(alg, d)


def iserre_poly(a12: int, p: int, sigma: Scalar, base: QBase = QBase(),
                alg: FreeAlgebra = B_ALG, i: str = "B1", j: str = "B2") -> FreePoly:
    """sum_n (-1)^n B_i^(n)_(a12+p) B_j B_i^(1-a12-n)_p."""
    if a12 > 0:
        raise ValueError("a12 must be <= 0")
    N = 1 - a12
    bj = alg.letter(j)
    out = alg.zero()
    for n in range(N + 1):
        term = idp_poly(n, a12 + p, sigma, base, alg, i) * bj * idp_poly(N - n, p, sigma, base, alg, i)
        out = out + term if n % 2 == 0 else out - term
    return out


def serre_poly(a12: int, x: FreePoly, y: FreePoly, base: QBase = QBase()) -> FreePoly:
    """S(x, y) = sum_n (-1)^n [N, n] x^n y x^(N-n) with N = 1 - a12."""
    N = 1 - a12
    out = x.alg.zero()
    for n in range(N + 1):
        c = qbinom(N, n, base)
        term = (x ** n * y * x ** (N - n)).scale(c)
        out = out + term if n % 2 == 0 else out - term
    return out


def convert_to_monomial_form(a12: int, sigma: Scalar, base: QBase = QBase()) -> list[tuple[tuple, Scalar]]:
    """The lower-order side C in S(B1, B2) = C obtained from [N]! * iserre_poly."""
    N = 1 - a12
    scaled = iserre_poly(a12, 0, sigma, base).scale(qfact(N, base))
    S = serre_poly(a12, B_ALG.letter("B1"), B_ALG.letter("B2"), base)
    lower = S - scaled
    if lower.degree("B1") >= N:
        raise AssertionError("top-degree part of the iSerre polynomial is not S / [N]!")
    return [(w, c) for (w, _), c in lower.sorted_terms()]


def known_lower_terms(a12: int, sigma: Scalar, base: QBase = QBase()) -> FreePoly:
    """The tabulated lower-order sides for 0 >= a12 >= -4."""
    x = Scalar.q_pow(base.step) * sigma
    b = lambda n: qint(n, base)
    b_sq = lambda n: qint(n, QBase(base.eps, True))
    qi = lambda k: Scalar.q_pow(base.step * k)
    W = lambda *ls, c=ONE: B_ALG.word(ls, c)
    if a12 == 0:
        return B_ALG.zero()
    if a12 == -1:
        return W("B2", c=x)
    if a12 == -2:
        return (W("B1", "B2") - W("B2", "B1")).scale(-(b(2) ** 2) * x)
    if a12 == -3:
        return (W("B1", "B2", "B1").scale(-b(2) * (b(2) * b(4) + qi(2) + qi(-2)) * x)
                + (W("B1", "B1", "B2") + W("B2", "B1", "B1")).scale((b(3) ** 2 + 1) * x)
                - W("B2").scale(b(3) ** 2 * x * x))
    if a12 == -4:
        return ((W("B1", "B1", "B1", "B2") - W("B2", "B1", "B1", "B1")).scale(-(b(2) ** 2) * (1 + b_sq(2) ** 2) * x)
                + (W("B1", "B1", "B2", "B1") - W("B1", "B2", "B1", "B1")).scale(b(2) ** 2 * b(5) * b(3) * x)
                + (W("B1", "B2") - W("B2", "B1")).scale(b(2) ** 2 * b(4) ** 2 * x * x))
    raise ValueError("no tabulated form below a12 = -4")


def convert_check(a12: int, sigma: Scalar | None = None, base: QBase = QBase()) -> Report:
    t0 = time.perf_counter()
    sigma = Scalar.symbol("s") if sigma is None else sigma
    got = B_ALG.zero()
    for w, c in convert_to_monomial_form(a12, sigma, base):
        got = got + B_ALG.word(w, c)
    want = known_lower_terms(a12, sigma, base)
    diff = got - want
    return Report(claim="convert", args={"a12": a12, "eps": base.eps}, passed=diff.is_zero(),
                  witness=None if diff.is_zero() else diff.to_text(),
                  millis=(time.perf_counter() - t0) * 1000)


def parity_independence_check(a12: int, sigma: Scalar | None = None, base: QBase = QBase()) -> Report:
    t0 = time.perf_counter()
    sigma = Scalar.symbol("s") if sigma is None else sigma
    diff = iserre_poly(a12, 0, sigma, base) - iserre_poly(a12, 1, sigma, base)
    return Report(claim="parity", args={"a12": a12, "eps": base.eps}, passed=diff.is_zero(),
                  witness=None if diff.is_zero() else diff.to_text(),
                  millis=(time.perf_counter() - t0) * 1000)


def rescale_check(a12: int, p: int = 0, base: QBase = QBase()) -> Report:
    """Rescaling B1 turns the distinguished relation into the generic one.

    Each term of B1-degree d in the relation with sigma = q_i^-1 is
    multiplied by (q_i s)^((D - d) / 2), D the top B1-degree; this uses only
    a^2 = q_i s for the rescaling B1 -> a^-1 B1.
    """
    t0 = time.perf_counter()
    s = Scalar.symbol("s")
    qs = Scalar.q_pow(base.step) * s
    dist = iserre_poly(a12, p, Scalar.q_pow(-base.step), base)
    gen = iserre_poly(a12, p, s, base)
    D = dist.degree("B1")
    d = {}
    for (w, t), c in dist.terms.items():
        k = D - w.count("B1")
        if k % 2:
            raise AssertionError("B1-degrees of one parity expected")
        d[(w, t)] = c * qs ** (k // 2)
    resc = FreePoly(B_ALG, d)
    top = ("B1",) * D + ("B2",)
    factor = gen.coefficient(top) / resc.coefficient(top)
    diff = resc.scale(factor) - gen
    return Report(claim="rescale", args={"a12": a12, "parity": p, "eps": base.eps,
                                         "factor": factor.to_text()},
                  passed=diff.is_zero(), witness=None if diff.is_zero() else diff.to_text(),
                  millis=(time.perf_counter() - t0) * 1000)


def varpi_serre_check(cartan: CartanData) -> Report:
    """S(q1^-1 F1 Kt1, q2^-1 F2 Kt2) = q1^(a12-1) q2^-1 S(F1, F2) Kt1^(1-a12) Kt2.

    Kt_i F_j = q_i^(-a_ij) F_j Kt_i is the torus normalization.
    """
    t0 = time.perf_counter()
    e1, e2, a12, a21 = cartan.eps1, cartan.eps2, cartan.a12, cartan.a21
    alg = FreeAlgebra(("F1", "F2"), ("K1", "K2"), {
        ("K1", "F1"): -2 * e1, ("K1", "F2"): -e1 * a12,
        ("K2", "F1"): -e2 * a21, ("K2", "F2"): -2 * e2,
    })
    x1 = (alg.letter("F1") * alg.torus_elem({"K1": 1})).scale(q(-e1))
    x2 = (alg.letter("F2") * alg.torus_elem({"K2": 1})).scale(q(-e2))
    base = QBase(e1)
    lhs = serre_poly(a12, x1, x2, base)
    rhs = (serre_poly(a12, alg.letter("F1"), alg.letter("F2"), base)
           * alg.torus_elem({"K1": 1 - a12, "K2": 1})).scale(q(e1 * (a12 - 1) - e2))
    diff = lhs - rhs
    return Report(claim="varpi-serre", args={"a12": a12, "eps1": e1, "eps2": e2},
                  passed=diff.is_zero(), witness=None if diff.is_zero() else diff.to_text(),
                  millis=(time.perf_counter() - t0) * 1000)
