"""Structural checks on the engine: varpi in rank one, confluence of the
local rewriting, weight audit and integrality at concrete lambda."""

from __future__ import annotations

import random
import time

from ..report import Report
from .cartan import CartanData
from .engine import Engine, StarWeight, StratumElement


def varpi_check_rank1(max_power: int = 6, lambdas=range(-3, 4), eps1: int = 1) -> Report:
    """varpi(B^(n)_p 1*_m) = B^(n)_p 1*_-m and varpi(varpi(x)) = x.

    Runs at every lambda in ``lambdas`` for n <= max_power and both parities
    (m = 2 lambda for parity 0, m = 2 lambda - 1 for parity 1).
    """
    t0 = time.perf_counter()
    cartan = CartanData(eps1, eps1, -1, -1)
    witness = None
    for lam in lambdas:
        eng = Engine(cartan, lam=lam)
        for p in (0, 1):
            w = StarWeight(-p)
            m = eng.weight_value(w)
            for n in range(max_power + 1):
                x = eng.idp_engine(n, p, w)
                y = eng.varpi(x)
                want = eng.idp_engine(n, p, StarWeight(-m - 2 * lam))
                if y != want:
                    witness = f"lambda={lam} p={p} n={n}: varpi gives {y.to_text()}"
                elif eng.varpi(y) != x:
                    witness = f"lambda={lam} p={p} n={n}: varpi is not an involution"
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    return Report(claim="varpi-rank1", args={"max_power": max_power, "lambdas": list(lambdas), "eps1": eps1},
                  passed=witness is None, witness=witness, millis=(time.perf_counter() - t0) * 1000)


def random_word(rng: random.Random, max_letters: int = 5, max_power: int = 3, allow_f2: bool = True):
    n = rng.randint(1, max_letters)
    word = [(rng.choice("EF"), rng.randint(1, max_power)) for _ in range(n)]
    if allow_f2 and rng.random() < 0.7:
        word.insert(rng.randint(0, n), ("F2", 1))
    return tuple(word)


def weight_audit(engine: Engine, x: StratumElement, word, weight: StarWeight) -> bool:
    """Every term of the normal form has the left weight predicted by the word."""
    expected = weight.shift + sum(engine.letter_shift(t) for t in word)
    return all(engine.left_shift(m) == expected and m.weight == weight for m in x.terms)


def confluence_check(a12: int, samples: int = 1000, seed: int = 0, eps1: int = 1) -> Report:
    """Random-order rewriting of random words agrees exactly with the
    left-action normal form, and passes the weight audit."""
    t0 = time.perf_counter()
    cartan = CartanData(eps1, eps1, a12, a12)
    eng = Engine(cartan)
    rng = random.Random(f"confluence:{a12}:{seed}")
    witness = None
    for i in range(samples):
        word = random_word(rng)
        weight = StarWeight(rng.randint(-3, 3))
        ref = eng.apply_word(word, weight)
        got = eng.normalize_word(word, weight, "random", random.Random(rng.random()))
        if got.to_text() != ref.to_text():
            witness = f"sample {i}: word {word} at {weight.text()} disagrees"
            break
        if not weight_audit(eng, ref, word, weight):
            witness = f"sample {i}: word {word} fails the weight audit"
            break
    return Report(claim="confluence", args={"a12": a12, "samples": samples, "seed": seed},
                  passed=witness is None, witness=witness, millis=(time.perf_counter() - t0) * 1000)


def integrality_check(a12: int, samples: int = 200, seed: int = 0, lambdas=range(-3, 4)) -> Report:
    """At concrete lambda every normalized coefficient is a Laurent polynomial."""
    t0 = time.perf_counter()
    rng = random.Random(f"integrality:{a12}:{seed}")
    witness = None
    for i in range(samples):
        lam = rng.choice(list(lambdas))
        eng = Engine(CartanData.symmetric(a12), lam=lam)
        word = random_word(rng)
        weight = StarWeight(rng.randint(-3, 3))
        x = eng.apply_word(word, weight)
        bad = [v for v in x.terms.values() if not v.is_laurent()]
        if bad:
            witness = f"word {word} at lambda={lam}: {bad[0].to_text()}"
            break
    return Report(claim="integrality", args={"a12": a12, "samples": samples, "seed": seed},
                  passed=witness is None, witness=witness, millis=(time.perf_counter() - t0) * 1000)
