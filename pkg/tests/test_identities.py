import pytest
from hypothesis import given, settings, strategies as st

import oracle
from iserre import identities as ids
from iserre.scalar import ONE, ZERO, parse_scalar, q

W = st.integers(-5, 5)
UL = st.integers(0, 3)


def same(x, expr) -> bool:
    return oracle.to_sympy(x.to_text()) == expr


@settings(max_examples=40, deadline=None)
@given(W, UL, UL)
def test_T_parts_against_oracle(w, u, l):
    first, second = ids.eval_T_parts(w, u, l)
    want_first, want_second = oracle.T_parts(w, u, l)
    assert same(first, want_first)
    assert same(second, want_second)


@settings(max_examples=40, deadline=None)
@given(W, UL, st.integers(0, 2), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_G_against_oracle(w, u, l, p0, p1, p2):
    assert same(ids.eval_G(w, u, l, p0, p1, p2), oracle.G(w, u, l, p0, p1, p2))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 4), st.integers(-4, 4), st.integers(-4, 4))
def test_H_against_oracle(u, p1, p2):
    assert same(ids.eval_H(u, p1, p2), oracle.H(u, p1, p2))


# values computed with the sympy oracle and frozen
GOLDEN_T_FIRST = {
    (0, 1, 1): "-1*q^-2",
    (1, 1, 1): "1*q^1",
    (2, 1, 2): "1*q^3 + 1*q^1 + 1*q^-1 + 1*q^-3",
    (-1, 2, 1): "1 + 1*q^-2 + 1*q^-4 + 1*q^-6 + 1*q^-8",
}
GOLDEN_G = {
    (2, 1, 0, 1, 1, -1): "1*q^4 - 1*q^2 - 1*q^-2",
    (-3, 3, 0, 3, 0, 0): "-1*q^18 - 1*q^16 - 2*q^14 - 2*q^12 - 2*q^10 - 1*q^8 - 1*q^6",
}


@pytest.mark.parametrize("args", sorted(GOLDEN_T_FIRST))
def test_T_golden(args):
    first, second = ids.eval_T_parts(*args)
    assert first.to_text() == GOLDEN_T_FIRST[args]
    assert second == first
    assert ids.eval_T(*args) == ZERO


@pytest.mark.parametrize("args", sorted(GOLDEN_G))
def test_G_golden(args):
    assert ids.eval_G(*args) == parse_scalar(GOLDEN_G[args])


def test_H_values():
    assert ids.eval_H(1, 1, 0) == q(4)
    assert ids.eval_H(2, 2, 0) == q(12)
    assert ids.eval_H(1, -1, 2) == q(6) + q(2) - ONE
    assert ids.eval_H(-1, 0, 0) == ZERO


@settings(max_examples=30, deadline=None)
@given(st.integers(-4, 4), st.integers(0, 3), st.integers(0, 3))
def test_T_is_a_specialization_of_G(w, u, l):
    if u + l < 1:
        return
    first, second = ids.eval_T_parts(w, u, l)
    sign = -1 if w % 2 else 1
    assert first - second == q(w * u - u * u) * ids.eval_G(w, u, l, -l, u - 1, -l) * sign


def test_T_small_grid():
    for w in range(-3, 4):
        for u in range(3):
            for l in range(3):
                if u + l >= 1:
                    assert ids.eval_T(w, u, l) == ZERO


def test_mutated_T_is_nonzero():
    assert ids.eval_T(0, 1, 1, _sign_second=1) == -2 * q(-2)


def test_T_domain():
    with pytest.raises(ids.DomainError):
        ids.eval_T(0, 0, 0)
    with pytest.raises(ids.DomainError):
        ids.eval_T_parts(0, -1, 2)
    with pytest.raises(ids.DomainError):
        ids.eval_G(0, 1, -1, 0, 0, 0)


def test_G_negative_u_is_zero():
    assert ids.eval_G(3, -1, 2, 0, 1, 1) == ZERO
    assert ids.eval_H(-2, 1, 1) == ZERO


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(ids.G_RULES), W, UL, UL, W, W, W, st.integers(-2, 2))
def test_G_recursions(rule, w, u, l, p0, p1, p2, k):
    lhs, rhs = ids.recursion_sides(rule, (w, u, l, p0, p1, p2), k if rule == "Gk" else None)
    assert lhs == rhs


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(ids.H_RULES), st.integers(1, 4), W, W)
def test_H_recursions(rule, u, p1, p2):
    lhs, rhs = ids.recursion_sides(rule, (u, p1, p2))
    assert lhs == rhs


@settings(max_examples=30, deadline=None)
@given(W, st.integers(0, 4), W, W)
def test_G00_is_independent_of_w(w, u, p1, p2):
    assert ids.eval_G00(w, u, p1, p2) == ids.eval_H(u, p1, p2)


def test_H_closed_form_slice():
    for u in range(5):
        for p1 in range(-3, 4):
            assert ids.eval_H(u, p1, 0) == ids.h_closed_p2_zero(u, p1)


def test_recursion_domain_errors():
    with pytest.raises(ids.DomainError):
        ids.recursion_sides("Gk", (0, 1, 1, 0, 0, 0))
    with pytest.raises(ids.DomainError):
        ids.recursion_sides("Hp1", (0, 1, 1))
    with pytest.raises(ids.DomainError):
        ids.recursion_sides("nope", (0, 1, 1))


def test_sampling_is_seeded():
    a = ids.sample_recursion_args("Gk", 20, 3)
    assert a == ids.sample_recursion_args("Gk", 20, 3)
    assert a != ids.sample_recursion_args("Gk", 20, 4)
    for args, k in a:
        assert -5 <= args[0] <= 5 and 0 <= args[1] <= 4 and k is not None


def test_check_recursion_report():
    rep = ids.check_recursion("G1+1", (1, 2, 1, 0, -1, 3))
    assert rep.passed and rep.witness is None
    assert rep.args == {"args": [1, 2, 1, 0, -1, 3]}


def test_replay_trace_shape():
    tr = ids.replay_theorem_G((0, 1, 1, 0, 0, 0))
    assert [s.rule for s in tr.steps] == ["Gx+1", "G00constw", "G00constw", "cancel"]
    assert tr.sound and tr.final_zero and tr.passed
    assert tr.steps[-1].expression == []


def test_replay_every_step_matches_direct_evaluation():
    for args in ids.sample_replay_args(10, 7):
        tr = ids.replay_theorem_G(args)
        assert tr.passed
        for step in tr.steps:
            assert step.value == tr.expected == ZERO


def test_replay_detects_a_bad_step(monkeypatch):
    good = ids._rewrite

    def bad(key):
        step = good(key)
        if step and step[0] == "Gx+1":
            rule, repl = step
            return rule, repl[:1]
        return step

    monkeypatch.setattr(ids, "_rewrite", bad)
    tr = ids.replay_theorem_G((1, 2, 1, 1, 0, -1))
    assert not tr.sound
    rep = ids.replay_report((1, 2, 1, 1, 0, -1))
    assert not rep.passed and rep.witness


def test_replay_domain():
    with pytest.raises(ids.DomainError):
        ids.replay_theorem_G((0, 1, 0, 0, 0, 0))
