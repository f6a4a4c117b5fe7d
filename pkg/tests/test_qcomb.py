from hypothesis import given, settings, strategies as st

import oracle
from iserre.qcomb import QBase, UpperArg, pascal_lower, pascal_upper, qbinom, qbinom2, qfact, qint
from iserre.scalar import ONE, ZERO, Scalar, q

B2 = QBase(2)


def test_small_values():
    assert qint(0) == ZERO
    assert qint(1) == ONE
    assert qint(3) == q(2) + ONE + q(-2)
    assert qint(-2) == -qint(2)
    assert qfact(3) == qint(2) * qint(3)
    assert qfact(0) == ONE
    assert qint(2, B2) == q(2) + q(-2)
    assert qint(2, QBase(1, True)) == q(2) + q(-2)


def test_qbinom_values():
    assert qbinom(4, 2).to_text() == "1*q^4 + 1*q^2 + 2 + 1*q^-2 + 1*q^-4"
    assert qbinom(3, 4) == ZERO
    assert qbinom(5, 0) == ONE
    assert qbinom(2, -1) == ZERO
    for d in range(6):
        assert qbinom(-1, d) == Scalar.from_int((-1) ** d)


@settings(max_examples=80, deadline=None)
@given(st.integers(-8, 8), st.integers(0, 6))
def test_qbinom_against_oracle(n, d):
    assert oracle.to_sympy(qbinom(n, d).to_text()) == oracle.qbinom(n, d)
    assert oracle.to_sympy(qbinom2(n, d).to_text()) == oracle.qbinom2(n, d)


@settings(max_examples=80, deadline=None)
@given(st.integers(-8, 8), st.integers(1, 6))
def test_pascal_identities(m, t):
    assert pascal_lower(m, t) == qbinom(m, t)
    assert pascal_upper(m, t) == qbinom(m, t)
    assert qbinom(m + 1, t) == q(-t) * qbinom(m, t) + q(m + 1 - t) * qbinom(m, t - 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 7), st.integers(0, 7))
def test_concrete_qbinom_is_laurent_and_symmetric(n, d):
    x = qbinom(n, d)
    assert x.is_laurent()
    assert x.bar() == x
    if d <= n:
        assert x == qbinom(n, n - d)


def test_symbolic_upper_argument():
    L = Scalar.mono(1, L=1)
    # [lambda] = (L - L^-1) / (q - q^-1)
    assert qint(UpperArg(1, 0)) == (L - L.inv()) / (q(1) - q(-1))
    x = qbinom(UpperArg(1, 2), 2)
    for lam in range(-3, 4):
        assert x.subs_lambda(lam) == qbinom(lam + 2, 2)
    assert qbinom(UpperArg(0, 5), 2) == qbinom(5, 2)
