import random

import pytest
from hypothesis import given, settings, strategies as st

from iserre.qcomb import UpperArg, qbinom, qint
from iserre.scalar import ONE, ZERO, q
from iserre.ualg import checks
from iserre.ualg.cartan import CartanData, InvalidCartan
from iserre.ualg.engine import (EVEN, ODD, DegreeCapExceeded, Engine, EngineError, NormalMonomial,
                                ParityMismatch, StarWeight)

A1 = CartanData.symmetric(-1)


def test_cartan_data():
    c = CartanData(2, 1, -1, -2)
    assert c.serre_degree == 2
    assert CartanData.symmetric(-3).a21 == -3
    with pytest.raises(InvalidCartan):
        CartanData(1, 1, 1, 1)
    with pytest.raises(InvalidCartan):
        CartanData(1, 2, -1, -1)


def test_star_weight():
    assert EVEN.parity == 0 and ODD.parity == 1
    assert StarWeight.from_parity(1) == ODD
    assert NormalMonomial(1, 2, True, 1, EVEN).text() != NormalMonomial(1, 2, False, 1, EVEN).text()


@pytest.mark.parametrize("lam", [None, -2, 0, 3])
@pytest.mark.parametrize("shift", [-1, 0, 2])
def test_EF_commutator(lam, shift):
    # F E 1_m = E F 1_m - [m] 1_m with m = 2 lambda + shift
    eng = Engine(A1, lam=lam)
    w = StarWeight(shift)
    m = qint(UpperArg(2, shift)) if lam is None else qint(2 * lam + shift)
    got = eng.apply_word([("F", 1), ("E", 1)], w)
    want = eng.monomial(1, 1, False, 0, w) - eng.one(w).scale(m)
    assert got == want


def test_divided_powers_merge():
    eng = Engine(A1)
    assert eng.apply_word([("E", 2), ("E", 1)]) == eng.monomial(3, 0, False, 0).scale(qbinom(3, 1))
    assert eng.apply_word([("F", 1), ("F", 3)]) == eng.monomial(0, 4, False, 0).scale(qbinom(4, 1))


@pytest.mark.parametrize("a12", [0, -1, -2, -3])
@pytest.mark.parametrize("lam", [None, 1])
def test_q_serre_relation_holds(a12, lam):
    # sum_n (-1)^n F1^(n) F2 F1^(N-n) = 0
    eng = Engine(CartanData.symmetric(a12), lam=lam)
    N = 1 - a12
    for shift in (0, -1, 3):
        total = None
        for n in range(N + 1):
            x = eng.apply_word([("F", n), ("F2", 1), ("F", N - n)], StarWeight(shift))
            x = x if n % 2 == 0 else -x
            total = x if total is None else total + x
        assert total.is_zero()


def test_F2_past_E1_commutes():
    eng = Engine(A1)
    assert eng.apply_word([("F2", 1), ("E", 2)]) == eng.apply_word([("E", 2), ("F2", 1)])


def test_act_F2_reduces_serre_factor():
    eng = Engine(A1)
    raw = eng.act_F2(eng.monomial(0, 2, False, 0), reduce=False)
    assert list(raw.terms) == [NormalMonomial(0, 0, True, 2, EVEN)]
    red = eng.act_F2(eng.monomial(0, 2, False, 0))
    assert all(m.c < 2 for m in red.terms)
    # F2 F^(2) = F F2 F - F^(2) F2 for a12 = -1
    want = eng.monomial(0, 1, True, 1) - eng.monomial(0, 2, True, 0)
    assert red == want


def test_second_F2_is_rejected():
    eng = Engine(A1)
    with pytest.raises(EngineError):
        eng.apply_word([("F2", 1), ("F", 1), ("F2", 1)])


def test_degree_cap():
    eng = Engine(A1, degree_cap=4)
    with pytest.raises(DegreeCapExceeded):
        eng.apply_word([("F", 3), ("F", 2)])


def test_parity_mismatch():
    eng = Engine(A1)
    with pytest.raises(ParityMismatch):
        eng.idp_engine(2, 1, EVEN)
    with pytest.raises(ParityMismatch):
        eng.expand_idp_closed(2, 0, ODD)
    with pytest.raises(EngineError):
        eng.idp_engine(-1, 0, EVEN)


def test_B1_on_idempotent():
    # B1 1_m = F1 1_m + q^-1 E1 Kt1^-1 1_m = F 1_m + q^(-1-m) E 1_m
    eng = Engine(A1, lam=2)
    got = eng.act_B1(eng.one(EVEN))
    want = eng.monomial(0, 1, False, 0) + eng.monomial(1, 0, False, 0).scale(q(-1 - 4))
    assert got == want


@pytest.mark.parametrize("p", [0, 1])
def test_idp_engine_equals_closed_form_symbolic(p):
    eng = Engine(A1)
    w = StarWeight(-p)
    for m in range(6):
        assert eng.idp_engine(m, p, w) == eng.expand_idp_closed(m, p, w)


@pytest.mark.parametrize("lam", [-2, 0, 1])
def test_symbolic_engine_specializes(lam):
    sym = Engine(A1)
    conc = Engine(A1, lam=lam)
    for p in (0, 1):
        x = sym.idp_engine(4, p, StarWeight(-p)).map_coefficients(lambda v: v.subs_lambda(lam))
        assert x == conc.idp_engine(4, p, StarWeight(-p))


def test_idp_small_values():
    eng = Engine(A1)
    assert eng.idp_engine(0, 0, EVEN) == eng.one(EVEN)
    assert eng.idp_engine(1, 0, EVEN) == eng.act_B1(eng.one(EVEN))


def test_apply_closed_idp_matches_engine_on_monomials():
    eng = Engine(A1, lam=1)
    x = eng.apply_word([("F", 1), ("F2", 1)], StarWeight(0))
    p = eng.left_shift(next(iter(x.terms))) % 2
    for m in range(4):
        assert eng.apply_closed_idp(m, p, x) == eng.apply_idp(m, p, x)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 32), st.sampled_from([-1, -2, -3]))
def test_rewriting_strategies_agree(seed, a12):
    rng = random.Random(seed)
    eng = Engine(CartanData.symmetric(a12))
    word = checks.random_word(rng, max_letters=4, max_power=2)
    w = StarWeight(rng.randint(-2, 2))
    ref = eng.apply_word(word, w)
    for strategy in ("leftmost", "rightmost", "random"):
        got = eng.normalize_word(word, w, strategy, random.Random(seed))
        assert got == ref
    assert checks.weight_audit(eng, ref, word, w)


def test_unknown_strategy():
    with pytest.raises(EngineError):
        Engine(A1).normalize_word([("F", 1), ("E", 1)], EVEN, "sideways")


def test_confluence_report_small():
    rep = checks.confluence_check(-2, samples=20, seed=1)
    assert rep.passed and rep.witness is None


def test_integrality_at_concrete_lambda():
    for a12 in (-1, -2, -3):
        assert checks.integrality_check(a12, samples=40, seed=2).passed


def test_symbolic_coefficients_are_not_all_laurent():
    # symbolic lambda: [m] has a genuine denominator
    eng = Engine(A1)
    x = eng.apply_word([("F", 1), ("E", 1)])
    assert any(not v.is_laurent() for v in x.terms.values())


def test_varpi_rank1_small():
    rep = checks.varpi_check_rank1(max_power=3, lambdas=range(-1, 2))
    assert rep.passed


def test_varpi_needs_concrete_lambda():
    with pytest.raises(EngineError):
        Engine(A1).varpi(Engine(A1).one())


def test_varpi_on_generators():
    # varpi(E 1_m) = q^-1 F Kt 1_-m, so the coefficient picks up q^(-1) q^(-m + ...)
    eng = Engine(A1, lam=1)
    x = eng.monomial(1, 0, False, 0)
    y = eng.varpi(x)
    assert len(y) == 1
    mon, = y.terms
    assert (mon.a, mon.b) == (0, 1)
    assert eng.varpi(y) == x


def test_weight_audit_rejects_wrong_weight():
    eng = Engine(A1)
    x = eng.apply_word([("F", 1)], EVEN)
    assert checks.weight_audit(eng, x, [("F", 1)], EVEN)
    assert not checks.weight_audit(eng, x, [("E", 1)], EVEN)


def test_zero_and_scale():
    eng = Engine(A1)
    x = eng.one()
    assert (x - x).is_zero()
    assert x.scale(ZERO).is_zero()
    assert x.scale(ONE) == x
