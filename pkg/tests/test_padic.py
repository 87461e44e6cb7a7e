from fractions import Fraction as F
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from ffhyper.errors import PreconditionError
from ffhyper.padic import (
    PadicInt,
    R,
    RationalInZp,
    digit_sum_and_rotations,
    gamma_reflection,
    gamma_shift,
    gauss_multiplication,
    padic_gamma,
    teichmuller,
    teichmuller_newton,
)

PRIMES = (5, 7, 11, 13)


def test_padic_int_arithmetic():
    a = PadicInt(5, 3, 7)
    b = PadicInt(5, 2, 3)
    c = a * b
    assert c.k == 2 and c.residue == 21
    assert (a + 1).residue == 8
    assert (a / 2) * 2 == a
    assert (a**-1) * a == 1
    with pytest.raises(PreconditionError):
        a / 5
    assert PadicInt.of(5, 3, F(1, 2)).residue == 63
    with pytest.raises(PreconditionError):
        RationalInZp(5, F(1, 10))


def test_teichmuller_examples():
    assert teichmuller(5, 2, 2).residue == 7
    assert teichmuller(7, 3, 1).residue == 1
    assert teichmuller(7, 3, 6).residue == 342
    with pytest.raises(PreconditionError):
        teichmuller(7, 2, 14)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_teichmuller_exhaustive(p):
    for k in range(1, 5):
        for x in range(1, p):
            w = teichmuller(p, k, x)
            assert w ** (p - 1) == 1
            assert w.residue % p == x
            assert w == teichmuller_newton(p, k, x)


def test_gamma_examples():
    for p in PRIMES:
        assert padic_gamma(p, 4, 0) == 1
        assert padic_gamma(p, 4, 1) == -1
        assert padic_gamma(p, 4, 2) == 1
    assert padic_gamma(7, 3, 4).residue == 6
    v = padic_gamma(5, 3, F(1, 2))
    prod, r = gamma_reflection(5, 3, F(1, 2))
    assert v * v == prod == (-1) ** r


def test_gamma_on_small_integers_matches_factorials():
    # Gamma_p(n + 1) = (-1)^{n+1} n! for n < p
    for p in PRIMES:
        for n in range(p):
            assert padic_gamma(p, 5, n + 1) == (-1) ** (n + 1) * factorial(n)


def test_gamma_shift_examples():
    assert gamma_shift(5, 3, 2) == -2
    assert gamma_shift(5, 3, 5) == -padic_gamma(5, 3, 5)
    assert gamma_shift(7, 3, 0) == -1


def test_reflection_examples():
    prod, r = gamma_reflection(5, 3, 2)
    assert r == 2 and prod == 1
    prod, r = gamma_reflection(5, 3, 0)
    assert r == 5 and prod == -1
    gamma_reflection(7, 3, F(1, 2))
    assert R(5, 10) == 5 and R(5, 11) == 1 and R(7, F(1, 2)) == 4


def test_multiplication_examples():
    lhs, rhs = gauss_multiplication(7, 3, 2, 1)
    assert lhs == rhs
    lhs, rhs = gauss_multiplication(5, 3, 3, F(1, 2))
    assert lhs == rhs
    lhs, rhs = gauss_multiplication(7, 3, 1, F(2, 3))
    assert lhs == rhs == padic_gamma(7, 3, F(2, 3))
    with pytest.raises(PreconditionError):
        gauss_multiplication(7, 3, 14, 1)


def _arguments(p):
    yield from range(p * p)
    for b in (2, 3, 4, 6, p - 1):
        for a in range(-b, 2 * b + 1):
            yield F(a, b)


@pytest.mark.parametrize("p", PRIMES)
def test_identity_suite(p):
    for k in range(1, 6):
        for x in _arguments(p):
            gamma_shift(p, k, x)
            gamma_reflection(p, k, x)
            for m in (2, 3, 4, 6):
                if m % p:
                    gauss_multiplication(p, k, m, x)


@pytest.mark.parametrize("p", PRIMES)
def test_precision_compatibility_and_continuity(p):
    for k in range(2, 5):
        for x in list(range(40)) + [F(1, 2), F(2, 3), F(-5, 4)]:
            hi = padic_gamma(p, k, x)
            assert hi.reduce(k - 1) == padic_gamma(p, k - 1, x)
            assert padic_gamma(p, k, F(x) + p**k) == hi


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(PRIMES), st.integers(1, 4), st.integers(-10**6, 10**6), st.integers(1, 50))
def test_gamma_is_a_unit_and_reflects(p, k, num, den):
    if den % p == 0:
        return
    x = F(num, den)
    assert padic_gamma(p, k, x).is_unit()
    gamma_reflection(p, k, x)


def test_digit_sums():
    assert digit_sum_and_rotations(5, 1, 3) == (3, [3])
    s, rots = digit_sum_and_rotations(3, 2, 5)
    assert s == 3 and set(rots) == {5, 7}
    assert digit_sum_and_rotations(7, 3, 0) == (0, [0, 0, 0])
    with pytest.raises(PreconditionError):
        digit_sum_and_rotations(3, 2, 8)
    # rotation j is multiplication by p^j modulo p^f - 1
    for a in range(1, 24):
        _, rots = digit_sum_and_rotations(5, 2, a)
        assert rots == [a, a * 5 % 24]
