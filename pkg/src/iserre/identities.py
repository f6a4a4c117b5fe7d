"""The T / G / H family of q-binomial sums, their recursions, and a replay of
the argument showing G(w, u, l; p) = 0 for l >= 1.

All arguments are concrete integers.  G and H with a negative ``u`` are empty
sums, hence zero; the recursions below use this at their boundaries.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import NamedTuple

from .qcomb import qbinom, qbinom2
from .report import Report
from .scalar import ONE, ZERO, Scalar, q


class DomainError(ValueError):
    pass


class GArgs(NamedTuple):
    w: int
    u: int
    l: int
    p0: int
    p1: int
    p2: int


class HArgs(NamedTuple):
    u: int
    p1: int
    p2: int


def _compositions3(u: int):
    for c in range(u + 1):
        for e in range(u - c + 1):
            yield c, e, u - c - e


def _prod(*xs: Scalar) -> Scalar:
    out = ONE
    for x in xs:
        if x.is_zero():
            return ZERO
        out = out * x
    return out


# -- T ------------------------------------------------------------------


def eval_T_parts(w: int, u: int, l: int) -> tuple[Scalar, Scalar]:
    """The two double sums of T, returned separately: T = first - second.

    ``first`` runs over t + w - r even, ``second`` over t + w - r odd.
    """
    if u < 0 or l < 0:
        raise DomainError("T needs u, l >= 0")
    first = ZERO
    second = ZERO
    for c, e, r in _compositions3(u):
        for t in range(l + 1):
            x = w + t - r
            if x % 2 == 0:
                h = x // 2
                term = _prod(qbinom(l, t), qbinom(w + t - l, r),
                             qbinom2(u - 1 + h, c), qbinom2(h - l, e))
                if term:
                    first = first + q(-t * (l + u - 1) + (l + u) * (c - e)) * term
            else:
                h = (x - 1) // 2
                term = _prod(qbinom(l, t), qbinom(w + t - l, r),
                             qbinom2(u + h, c), qbinom2(h - l, e))
                if term:
                    second = second + q(-t * (l + u - 1) + (l + u - 1) * (c - e)) * term
    return first, second


def eval_T(w: int, u: int, l: int, _sign_second: int = -1) -> Scalar:
    """T(w, u, l).  ``_sign_second`` exists only so tests can plant a bug."""
    if u + l < 1:
        raise DomainError("T needs u + l >= 1")
    first, second = eval_T_parts(w, u, l)
    return first + second if _sign_second > 0 else first - second


# -- G, H ---------------------------------------------------------------


def _g_core(w, u, l, p0, p1, p2) -> Scalar:
    if u < 0:
        return ZERO
    even = ZERO
    odd = ZERO
    for c, e, r in _compositions3(u):
        for t in range(l + 1):
            x = w + t - r
            base = qbinom(l, t)
            rb = qbinom(w + t + p0, r)
            if base.is_zero() or rb.is_zero():
                continue
            if x % 2 == 0:
                h = x // 2
                term = _prod(qbinom2(h + p1, c), qbinom2(h + p2, e))
                if term:
                    k = -t * (l + u - 1) - u * (c + e) + 2 * c + r * p0 + 2 * c * p1 + 2 * e * p2
                    even = even + q(k) * base * rb * term
            else:
                h = (x - 1) // 2
                term = _prod(qbinom2(1 + h + p1, c), qbinom2(h + p2, e))
                if term:
                    k = -t * (l + u - 1) - (u - 1) * (c + e) + r * p0 + 2 * c * p1 + 2 * e * p2
                    odd = odd + q(k) * base * rb * term
    sign = -1 if w % 2 else 1
    return q(u * u - w * u + l * u) * (even - odd) * sign


def eval_G(w: int, u: int, l: int, p0: int, p1: int, p2: int) -> Scalar:
    if l < 0:
        raise DomainError("G needs l >= 0")
    return _g_core(w, u, l, p0, p1, p2)


def eval_G0(w: int, u: int, p0: int, p1: int, p2: int) -> Scalar:
    return eval_G(w, u, 0, p0, p1, p2)


def eval_G00(w: int, u: int, p1: int, p2: int) -> Scalar:
    return eval_G(w, u, 0, 0, p1, p2)


def eval_H(u: int, p1: int, p2: int) -> Scalar:
    if u < 0:
        return ZERO
    out = ZERO
    for c in range(u + 1):
        e = u - c
        term = _prod(qbinom2(p1, c), qbinom2(p2, e))
        if term:
            out = out + q(2 * c + 2 * c * p1 + 2 * e * p2) * term
    return out


def h_closed_p2_zero(u: int, p1: int) -> Scalar:
    """Closed form of G00(w, u; p1, 0)."""
    return q(2 * u + 2 * u * p1) * qbinom2(p1, u)


# -- recursions ---------------------------------------------------------

G_RULES = ("Gw+1", "G1+1", "G2+1", "Gx+1", "Gk", "Godd")
H_RULES = ("Hswap", "Hp1", "Hp2")
RULES = G_RULES + H_RULES + ("G00constw",)


def recursion_sides(rule: str, args: tuple, k: int | None = None) -> tuple[Scalar, Scalar]:
    """Evaluate both sides of one recursion rule directly."""
    G = eval_G
    H = eval_H
    if rule in G_RULES:
        w, u, l, p0, p1, p2 = args
        if u < 0 or l < 0:
            raise DomainError(f"{rule} needs u, l >= 0")
        if rule == "Gw+1":
            return (G(w + 1, u, l, p0, p1, p2),
                    q(-2 * u) * G(w, u, l, p0, p2, p1 + 1) - q(2 * p0 + l) * G(w, u - 1, l, p0, p1, p2))
        if rule == "G1+1":
            return (G(w, u, l, p0, p1 + 1, p2),
                    G(w, u, l, p0, p1, p2) + q(4 * p1 + l + 4) * G(w, u - 1, l, p0, p1, p2))
        if rule == "G2+1":
            return (G(w, u, l, p0, p1, p2 + 1),
                    G(w, u, l, p0, p1, p2) + q(4 * p2 + l + 2) * G(w, u - 1, l, p0, p1, p2))
        if rule == "Gx+1":
            return (G(w, u, l + 1, p0, p1, p2),
                    q(u) * G(w, u, l, p0, p1, p2) - q(u - 2 * l) * G(w + 1, u, l, p0, p1, p2))
        if rule == "Gk":
            if k is None:
                raise DomainError("Gk needs k")
            return (G(w, u, l, p0, p1, p2),
                    q(4 * k * u) * G(w + 2 * k, u, l, p0 - 2 * k, p1 - k, p2 - k))
        if rule == "Godd":
            return (G(w + 1, u, l, p0, p1, p2),
                    q(-2 * u) * G(w, u, l, p0 + 1, p2, p1 + 1))
    if rule in H_RULES:
        u, p1, p2 = args
        if u <= 0:
            raise DomainError(f"{rule} needs u > 0")
        if rule == "Hswap":
            return H(u, p2, p1 + 1), q(2 * u) * (H(u, p1, p2) + H(u - 1, p1, p2))
        if rule == "Hp1":
            return H(u, p1 + 1, p2), H(u, p1, p2) + q(4 * (p1 + 1)) * H(u - 1, p1, p2)
        if rule == "Hp2":
            return H(u, p1, p2 + 1), H(u, p1, p2) + q(4 * p2 + 2) * H(u - 1, p1, p2)
    if rule == "G00constw":
        w, u, p1, p2 = args
        if u < 0:
            raise DomainError("G00constw needs u >= 0")
        return eval_G00(w, u, p1, p2), H(u, p1, p2)
    raise DomainError(f"unknown rule {rule!r}")


def check_recursion(rule: str, args: tuple, k: int | None = None) -> Report:
    t0 = time.perf_counter()
    lhs, rhs = recursion_sides(rule, tuple(args), k)
    diff = lhs - rhs
    rep_args = {"args": list(args)}
    if k is not None:
        rep_args["k"] = k
    return Report(claim=rule, args=rep_args, passed=diff.is_zero(),
                  witness=None if diff.is_zero() else diff.to_text(),
                  millis=(time.perf_counter() - t0) * 1000)


def sample_recursion_args(rule: str, n: int, seed: int, wp=(-5, 5), ul=(0, 4)):
    """Seeded samples: list of (args, k) inside the rule's domain."""
    rng = random.Random(f"{rule}:{seed}")
    out = []
    for _ in range(n):
        if rule in G_RULES:
            w, p0, p1, p2 = (rng.randint(*wp) for _ in range(4))
            u, l = rng.randint(*ul), rng.randint(*ul)
            k = rng.randint(-2, 2) if rule == "Gk" else None
            out.append(((w, u, l, p0, p1, p2), k))
        elif rule in H_RULES:
            u = rng.randint(max(1, ul[0]), max(1, ul[1]))
            out.append(((u, rng.randint(*wp), rng.randint(*wp)), None))
        elif rule == "G00constw":
            out.append(((rng.randint(*wp), rng.randint(*ul), rng.randint(*wp), rng.randint(*wp)), None))
        else:
            raise DomainError(f"unknown rule {rule!r}")
    return out


# -- proof replay -------------------------------------------------------


@dataclass
class TraceStep:
    rule: str
    target: tuple
    expression: list  # list of (Scalar, key)
    value: Scalar
    ok: bool

    def expression_text(self) -> str:
        if not self.expression:
            return "0"
        return " + ".join(f"({c.to_text()})*{_key_text(k)}" for c, k in self.expression)


@dataclass
class DerivationTrace:
    start: GArgs
    expected: Scalar
    steps: list = field(default_factory=list)

    @property
    def sound(self) -> bool:
        return all(s.ok for s in self.steps)

    @property
    def final_zero(self) -> bool:
        return bool(self.steps) and not self.steps[-1].expression

    @property
    def passed(self) -> bool:
        return self.sound and self.final_zero and self.expected.is_zero()


def _key_text(key) -> str:
    kind, *args = key
    return f"{kind}({', '.join(map(str, args))})"


def _eval_key(key) -> Scalar:
    if key[0] == "G":
        return eval_G(*key[1:])
    return eval_H(*key[1:])


def _value(expr) -> Scalar:
    out = ZERO
    for c, key in expr:
        out = out + c * _eval_key(key)
    return out


def _rewrite(key) -> tuple[str, list] | None:
    """One rewriting step for a single G/H key, or None if it is final."""
    if key[0] != "G":
        return None
    _, w, u, l, p0, p1, p2 = key
    if l >= 1:
        # lower l via Gx+1 read right to left at l - 1
        m = l - 1
        return "Gx+1", [(q(u), ("G", w, u, m, p0, p1, p2)),
                        (-q(u - 2 * m), ("G", w + 1, u, m, p0, p1, p2))]
    if p0 % 2 == 0 and p0 != 0:
        k = p0 // 2
        return "Gk", [(q(4 * k * u), ("G", w + 2 * k, u, 0, 0, p1 - k, p2 - k))]
    if p0 % 2 == 1 and p0 != 1:
        k = (p0 - 1) // 2
        return "Gk", [(q(4 * k * u), ("G", w + 2 * k, u, 0, 1, p1 - k, p2 - k))]
    if p0 == 1:
        # G(W, u, 0; 1, A, B) = q^(2u) G(W + 1, u, 0; 0, B - 1, A)
        return "Godd", [(q(2 * u), ("G", w + 1, u, 0, 0, p2 - 1, p1))]
    return "G00constw", [(ONE, ("H", u, p1, p2))]


def replay_theorem_G(args) -> DerivationTrace:
    """Rewrite G(args) into H-terms that cancel, checking every step."""
    a = GArgs(*args)
    if a.l < 1 or a.u < 0:
        raise DomainError("replay needs l >= 1 and u >= 0")
    expected = eval_G(*a)
    trace = DerivationTrace(start=a, expected=expected)
    expr = [(ONE, ("G",) + tuple(a))]
    while True:
        for i, (c, key) in enumerate(expr):
            step = _rewrite(key)
            if step is not None:
                break
        else:
            break
        rule, repl = step
        expr = expr[:i] + [(c * c2, k2) for c2, k2 in repl] + expr[i + 1:]
        val = _value(expr)
        trace.steps.append(TraceStep(rule, key, list(expr), val, val == expected))
    merged: dict = {}
    order = []
    for c, key in expr:
        if key not in merged:
            merged[key] = ZERO
            order.append(key)
        merged[key] = merged[key] + c
    expr = [(merged[k], k) for k in order if not merged[k].is_zero()]
    val = _value(expr)
    trace.steps.append(TraceStep("cancel", (), expr, val, val == expected))
    return trace


def replay_report(args) -> Report:
    t0 = time.perf_counter()
    tr = replay_theorem_G(args)
    witness = None
    if not tr.passed:
        bad = next((s for s in tr.steps if not s.ok), tr.steps[-1])
        witness = f"{bad.rule}: {bad.expression_text()}"
    return Report(claim="replay", args={"args": list(args), "steps": len(tr.steps)},
                  passed=tr.passed, witness=witness, millis=(time.perf_counter() - t0) * 1000)


def sample_replay_args(n: int, seed: int, wp=(-5, 5), u_range=(0, 4), l_range=(1, 3)):
    rng = random.Random(f"replay:{seed}")
    return [GArgs(rng.randint(*wp), rng.randint(*u_range), rng.randint(*l_range),
                  rng.randint(*wp), rng.randint(*wp), rng.randint(*wp)) for _ in range(n)]
