"""Point counts modulo p (and p^k) as truncated hypergeometric sums.

All arithmetic is exact: residues mod p or mod p^k.  Brute-force counts
come from :mod:`ffhyper.counting`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

from .counting import DeformationFamily, brute_count
from .errors import PreconditionError
from .ffield import is_prime, make_field
from .padic import PadicInt, padic_gamma, teichmuller
from .weights import frac


@dataclass(frozen=True)
class TruncationWindow:
    lower: int
    upper: int

    def __post_init__(self):
        if not 0 <= self.lower <= self.upper:
            raise PreconditionError(f"bad window [{self.lower}, {self.upper}]")

    def check(self, p: int):
        if self.upper >= p - 1:
            raise PreconditionError(f"window upper {self.upper} must be < p-1 = {p - 1}")


@dataclass
class CongruenceReport:
    p: int
    family: str
    lam: int
    lhs: int
    rhs: int
    smooth: bool

    @property
    def match(self) -> bool:
        return self.lhs == self.rhs

    @property
    def asserted(self) -> bool:
        return self.smooth

    @property
    def ok(self) -> bool:
        return self.match or not self.asserted

    def row(self) -> dict:
        return {
            "p": self.p,
            "family": self.family,
            "lambda": self.lam,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "smooth": self.smooth,
            "match": self.match,
        }


def _check_prime(p: int):
    if p < 3 or not is_prime(p):
        raise PreconditionError(f"p={p} must be an odd prime")


def eta(p: int, d: int, a: int) -> int:
    """a/(p-1) + {(d-1)a/(p-1)} - {da/(p-1)}, an integer in {0, 1}."""
    if not 0 <= a <= p - 2:
        raise PreconditionError(f"a={a} must lie in [0, p-2]")
    x = Fraction(a, p - 1)
    val = x + frac((d - 1) * x) - frac(d * x)
    assert val.denominator == 1 and val in (0, 1)
    return int(val)


@lru_cache(maxsize=None)
def _brute(family: DeformationFamily, p: int) -> int:
    return brute_count(family, make_field(p))


def gamma_point_count(p: int, k: int, d: int, lam: int) -> PadicInt:
    """N(lambda) for x^d + y^d - d lambda x y^{d-1} over F_p, evaluated in Z/p^k.

    N(0) - 1/(p-1) sum_a (-p)^eta(a) Gamma_p(a/(p-1)) Gamma_p({(d-1)a/(p-1)})
    / Gamma_p({da/(p-1)}) omega(d lambda)^{-da}.
    """
    _check_prime(p)
    if (p - 1) % d:
        raise PreconditionError(f"d={d} must divide p-1={p - 1}")
    if (d * lam) % p == 0:
        raise PreconditionError("p must not divide d*lambda")
    n0 = _brute(DeformationFamily.zero_dim(d, 0), p)
    omega_inv = teichmuller(p, k, d * lam).inverse()
    total = PadicInt(p, k, 0)
    for a in range(p - 1):
        x = Fraction(a, p - 1)
        term = padic_gamma(p, k, x) * padic_gamma(p, k, frac((d - 1) * x)) / padic_gamma(p, k, frac(d * x))
        term = term * PadicInt(p, k, -p) ** eta(p, d, a) * omega_inv ** (d * a)
        total = total + term
    return PadicInt(p, k, n0) - total / (p - 1)


def _split(p: int, x: Fraction) -> tuple[int, int]:
    """(v_p(x), unit part of x mod p); v is None for x = 0."""
    if x == 0:
        return None, 0
    num, den = x.numerator, x.denominator
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v, num * pow(den, -1, p) % p


def truncated_hyp_mod_p(
    p: int,
    alpha: Sequence,
    beta: Sequence,
    z,
    window: TruncationWindow,
) -> int:
    """sum_{k=i}^{j} prod (alpha)_k z^k / (prod (beta)_k k!) reduced mod p.

    Each coefficient is tracked as p^v times a unit; a term with v > 0 is
    0 mod p, and v < 0 means the term is not p-integral, which is an error.
    """
    _check_prime(p)
    window.check(p)
    alpha = [Fraction(a) for a in alpha]
    beta = [Fraction(b) for b in beta]
    for x in alpha + beta:
        if x.denominator % p == 0:
            raise PreconditionError(f"parameter {x} has denominator divisible by p")
    zf = Fraction(z)
    val, unit = 0, 1
    dead = False  # some numerator Pochhammer hit exactly zero
    total = 0
    for k in range(window.upper + 1):
        if k >= window.lower and not dead:
            if val < 0:
                raise PreconditionError(f"term k={k} is not p-integral (valuation {val})")
            if val == 0:
                total += unit
        # coefficient of k+1 from coefficient of k
        for a in alpha:
            v, u = _split(p, a + k)
            if v is None:
                dead = True
            else:
                val, unit = val + v, unit * u % p
        for b in beta + [Fraction(1)]:
            v, u = _split(p, b + k)
            if v is None:
                raise PreconditionError(f"denominator Pochhammer vanishes at k={k + 1}")
            val, unit = val - v, unit * pow(u, -1, p) % p
        v, u = _split(p, zf)
        if v is None:
            dead = True
        else:
            val, unit = val + v, unit * u % p
    return total % p


def shifted_windows(p: int, d: int) -> list[tuple[tuple[Fraction, ...], tuple[Fraction, ...], TruncationWindow]]:
    """Shifted parameter sets and windows, i = 0..d-2."""
    _check_prime(p)
    if (p - 1) % (d * (d - 1)):
        raise PreconditionError(f"d(d-1)={d * (d - 1)} must divide p-1={p - 1}")
    base_a = [Fraction(j, d) for j in range(1, d)]
    base_b = [Fraction(j, d - 1) for j in range(1, d - 1)]
    out = []
    for i in range(d - 1):
        a = tuple(x + 1 if t < i else x for t, x in enumerate(base_a))
        b = tuple(x + 1 if t < i else x for t, x in enumerate(base_b))
        lo = i * (p - 1) // (d - 1)
        hi = (i + 1) * (p - 1) // d - 1
        if lo <= hi:
            out.append((a, b, TruncationWindow(lo, hi)))
    return out


def shifted_sum_rhs(p: int, d: int, lam: int) -> int:
    """Sum of the shifted truncated sums at z = (d-1)^{-(d-1)} lambda^{-d}, mod p."""
    if lam % p == 0:
        raise PreconditionError("p must not divide lambda")
    z = pow((d - 1) ** (d - 1) * pow(lam, d, p), -1, p)
    return sum(truncated_hyp_mod_p(p, a, b, z, w) for a, b, w in shifted_windows(p, d)) % p


def dwork3_congruence(p: int, lam: int) -> int:
    _check_prime(p)
    if (p - 1) % 3 or lam % p == 0:
        raise PreconditionError("need 3 | p-1 and p not dividing lambda")
    z = pow(lam, -3, p)
    w = TruncationWindow(0, (p - 1) // 3 - 1)
    return -truncated_hyp_mod_p(p, (Fraction(1, 3), Fraction(2, 3)), (1,), z, w) % p


def dwork4_congruence(p: int, lam: int) -> int:
    _check_prime(p)
    if (p - 1) % 4 or lam % p == 0:
        raise PreconditionError("need 4 | p-1 and p not dividing lambda")
    z = pow(lam, -4, p)
    w = TruncationWindow(0, (p - 1) // 4 - 1)
    return truncated_hyp_mod_p(p, (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)), (1, 1), z, w)


def _legendre_pre(p: int, lam: int):
    _check_prime(p)
    if lam % p in (0, 1):
        raise PreconditionError("lambda must not be 0 or 1 mod p")


def legendre_sum(p: int, lam: int) -> int:
    """2F1(1/2, 1/2; 1 | lambda) truncated at (p-1)/2, mod p."""
    return truncated_hyp_mod_p(p, (Fraction(1, 2), Fraction(1, 2)), (1,), lam % p, TruncationWindow(0, (p - 1) // 2))


def legendre_congruence(p: int, lam: int) -> int:
    """(-1)^{(p-1)/2} times the truncated 2F1, mod p."""
    _legendre_pre(p, lam)
    return (-1) ** ((p - 1) // 2) * legendre_sum(p, lam) % p


def legendre_binomial(p: int, lam: int) -> int:
    """(-1)^{(p+1)/2} sum_{r <= (p-1)/2} binom(-1/2, r)^2 lambda^r mod p."""
    _legendre_pre(p, lam)
    total = sum(binom_half(p, r) ** 2 * pow(lam, r, p) for r in range((p - 1) // 2 + 1))
    return (-1) ** ((p + 1) // 2) * total % p


def binom_half(p: int, r: int) -> int:
    """binom(-1/2, r) mod p."""
    num = Fraction(1)
    for i in range(r):
        num *= Fraction(-1, 2) - i
    num /= factorial(r)
    return num.numerator * pow(num.denominator, -1, p) % p


def legendre_terms_agree(p: int) -> bool:
    """binom(-1/2, r)^2 equals (1/2)_r^2 / r!^2 in F_p for r <= (p-1)/2."""
    half = Fraction(1, 2)
    for r in range((p - 1) // 2 + 1):
        poch = Fraction(1)
        for m in range(r):
            poch *= half + m
        val = poch**2 / Fraction(factorial(r)) ** 2
        if binom_half(p, r) ** 2 % p != val.numerator * pow(val.denominator, -1, p) % p:
            return False
    return True


def legendre_count(p: int, lam: int, projective: bool = True) -> int:
    """Points on y^2 = x(x-1)(x-lambda) over F_p (plus the point at infinity if projective)."""
    _check_prime(p)
    squares = [0] * p
    for y in range(p):
        squares[y * y % p] += 1
    n = sum(squares[x * (x - 1) * (x - lam) % p] for x in range(p))
    return n + 1 if projective else n


# ---------------------------------------------------------------------------
# verification against brute force

FAMILIES = ("legendre", "legendre-affine", "zerodim", "dwork3", "dwork4")


def admissible(family: str, p: int, d: int = 3) -> str | None:
    """None if p is admissible for the family, else the reason."""
    if p < 3 or not is_prime(p):
        return "not an odd prime"
    need = {"zerodim": d * (d - 1), "dwork3": 3, "dwork4": 4}.get(family, 1)
    if (p - 1) % need:
        return f"{need} does not divide p-1"
    return None


def _family_of(name: str, lam: int, d: int) -> DeformationFamily:
    if name == "zerodim":
        return DeformationFamily.zero_dim(d, lam)
    return DeformationFamily.dwork(3 if name == "dwork3" else 4, lam)


def verify(family: str, p: int, lam: int, d: int = 3) -> CongruenceReport:
    """Brute-force side against congruence side for one (p, lambda)."""
    if family not in FAMILIES:
        raise PreconditionError(f"unknown family {family!r}")
    if family.startswith("legendre"):
        if family == "legendre":
            lhs = legendre_count(p, lam) % p
            rhs = legendre_congruence(p, lam)
        else:
            lhs = legendre_count(p, lam, projective=False) % p
            rhs = legendre_binomial(p, lam)
        return CongruenceReport(p, family, lam, lhs, rhs, smooth=True)
    fam = _family_of(family, lam, d)
    n_lam = _brute(fam, p)
    n_0 = _brute(fam.with_lambda(0), p)
    lhs = (n_lam - n_0) % p
    if family == "zerodim":
        rhs = shifted_sum_rhs(p, d, lam)
        label = f"zerodim d={d}"
        smooth = (d - 1) ** (d - 1) * pow(lam, d, p) % p != 1
    elif family == "dwork3":
        rhs = dwork3_congruence(p, lam)
        label, smooth = family, pow(lam, 3, p) != 1
    else:
        rhs = dwork4_congruence(p, lam)
        label, smooth = family, pow(lam, 4, p) != 1
    return CongruenceReport(p, label, lam, lhs, rhs, smooth)


def lambda_range(family: str, p: int) -> range:
    """All lambda for which the congruence side is defined."""
    return range(2, p) if family.startswith("legendre") else range(1, p)


def windows_cover_eta_zero(p: int, d: int) -> bool:
    """The union of the windows is exactly {a : eta(a) = 0}, and windows are disjoint."""
    seen: list[int] = []
    for _, _, w in shifted_windows(p, d):
        seen.extend(range(w.lower, w.upper + 1))
    return len(seen) == len(set(seen)) and set(seen) == {a for a in range(p - 1) if eta(p, d, a) == 0}
