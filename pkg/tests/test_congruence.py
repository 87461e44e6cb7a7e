from fractions import Fraction as F
from math import factorial

import pytest

from ffhyper.congruence import (
    TruncationWindow,
    binom_half,
    dwork3_congruence,
    dwork4_congruence,
    eta,
    legendre_binomial,
    legendre_congruence,
    legendre_count,
    legendre_sum,
    legendre_terms_agree,
    gamma_point_count,
    shifted_sum_rhs,
    shifted_windows,
    truncated_hyp_mod_p,
    verify,
    windows_cover_eta_zero,
)
from ffhyper.counting import DeformationFamily, brute_count
from ffhyper.errors import PreconditionError
from ffhyper.ffield import is_prime, make_field
from ffhyper.weights import WeightSystem, landau


def zero_dim_count(p, lam, d=3):
    return brute_count(DeformationFamily.zero_dim(d, lam), make_field(p))


def test_eta_examples():
    assert eta(7, 3, 0) == 0
    assert eta(7, 3, 4) == 1
    assert eta(7, 3, 3) == 0
    with pytest.raises(PreconditionError):
        eta(7, 3, 6)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_eta_is_landau(d):
    gamma = WeightSystem.binomial(d)
    for p in (p for p in range(3, 32) if is_prime(p)):
        for a in range(p - 1):
            assert eta(p, d, a) == landau(gamma, F(a, p - 1))


def test_truncated_examples():
    assert truncated_hyp_mod_p(7, (F(1, 3),), (F(1, 2),), 3, TruncationWindow(0, 0)) == 1
    assert truncated_hyp_mod_p(5, (F(1, 2), F(1, 2)), (1,), 2, TruncationWindow(0, 2)) == 3


@pytest.mark.parametrize("p", [7, 13, 19, 31])
def test_truncated_matches_factorial_form(p):
    # (1/3)_k (2/3)_k / k!^2 = (3k)! / (k!^3 27^k)
    for lam in range(1, p):
        z = pow(lam, -3, p)
        top = (p - 1) // 3 - 1
        expected = sum(F(factorial(3 * k), factorial(k) ** 3 * 27**k) * z**k for k in range(top + 1))
        expected = expected.numerator * pow(expected.denominator, -1, p) % p
        got = truncated_hyp_mod_p(p, (F(1, 3), F(2, 3)), (1,), z, TruncationWindow(0, top))
        assert got == expected


def test_truncated_errors():
    with pytest.raises(PreconditionError):
        truncated_hyp_mod_p(7, (F(1, 2),), (F(-1),), 2, TruncationWindow(0, 3))
    with pytest.raises(PreconditionError):
        truncated_hyp_mod_p(7, (F(1, 7),), (), 2, TruncationWindow(0, 3))
    with pytest.raises(PreconditionError):
        truncated_hyp_mod_p(7, (1,), (), 2, TruncationWindow(0, 6))
    # (1)_3 / ((1/2)_3 3!) = 8/15 is not 5-integral
    with pytest.raises(PreconditionError):
        truncated_hyp_mod_p(5, (1,), (F(1, 2),), 1, TruncationWindow(0, 3))
    assert truncated_hyp_mod_p(5, (1,), (F(1, 2),), 1, TruncationWindow(0, 2)) == (1 + 2 + 4 * pow(3, -1, 5)) % 5


def test_truncated_drops_p_divisible_terms():
    # (1/2)_k at p = 5 picks up 5/2 at k = 3: terms from k = 3 on vanish mod 5 when alpha carries it
    full = truncated_hyp_mod_p(5, (F(1, 2), F(1, 2)), (1,), 2, TruncationWindow(0, 3))
    assert full == truncated_hyp_mod_p(5, (F(1, 2), F(1, 2)), (1,), 2, TruncationWindow(0, 2))


@pytest.mark.parametrize("p,k,lam", [(7, 2, 2), (13, 3, 5), (19, 1, 3), (7, 3, 6)])
def test_gamma_count_examples(p, k, lam):
    assert gamma_point_count(p, k, 3, lam) == zero_dim_count(p, lam)


def test_gamma_count_small_degree():
    for lam in range(1, 5):
        assert gamma_point_count(5, 2, 2, lam) == zero_dim_count(5, lam, d=2)
    with pytest.raises(PreconditionError):
        gamma_point_count(7, 2, 4, 1)


@pytest.mark.parametrize("p", [7, 13, 19])
def test_gamma_count_reduces_to_shifted_sum(p):
    n0 = zero_dim_count(p, 0)
    for lam in range(1, p):
        assert gamma_point_count(p, 2, 3, lam).residue % p == (shifted_sum_rhs(p, 3, lam) + n0) % p


def test_shifted_windows_for_cubics():
    (a0, b0, w0), (a1, b1, w1) = shifted_windows(13, 3)
    assert (a0, b0) == ((F(1, 3), F(2, 3)), (F(1, 2),))
    assert (a1, b1) == ((F(4, 3), F(2, 3)), (F(3, 2),))
    assert (w0.lower, w0.upper, w1.lower, w1.upper) == (0, 3, 6, 7)
    with pytest.raises(PreconditionError):
        shifted_windows(11, 3)


@pytest.mark.parametrize("p,d", [(7, 3), (13, 3), (19, 3), (31, 3), (13, 4), (37, 4), (41, 5), (5, 2), (11, 2)])
def test_windows_are_the_eta_zero_range(p, d):
    assert windows_cover_eta_zero(p, d)


@pytest.mark.parametrize("p,d", [(7, 3), (13, 3), (13, 4), (37, 4), (11, 2)])
def test_shifted_sum_sweep(p, d):
    n0 = zero_dim_count(p, 0, d)
    for lam in range(1, p):
        assert shifted_sum_rhs(p, d, lam) == (zero_dim_count(p, lam, d) - n0) % p


def test_dwork_examples():
    assert verify("dwork3", 7, 2).match
    assert verify("dwork3", 13, 3).match
    assert verify("dwork4", 13, 2).match
    assert verify("dwork4", 17, 3).match
    with pytest.raises(PreconditionError):
        dwork3_congruence(11, 2)
    with pytest.raises(PreconditionError):
        dwork4_congruence(7, 2)


def test_dwork_singular_fibers_are_reported_not_asserted():
    rep = verify("dwork3", 7, 1)
    assert not rep.smooth and not rep.asserted and rep.ok


def test_legendre_examples():
    assert legendre_count(5, 2) == 8
    assert legendre_sum(5, 2) == 3
    assert legendre_congruence(5, 2) == 3
    with pytest.raises(PreconditionError):
        legendre_congruence(7, 1)


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 23])
def test_legendre_binomial_form_counts_affine_points(p):
    assert legendre_terms_agree(p)
    for lam in range(2, p):
        assert legendre_binomial(p, lam) == legendre_count(p, lam, projective=False) % p
        # the two forms differ only in the overall sign
        assert legendre_binomial(p, lam) == (-legendre_congruence(p, lam)) % p


def test_binom_half():
    assert [binom_half(7, r) for r in range(4)] == [1, 3, 3, 1]  # 1, -1/2, 3/8, -5/16 mod 7
