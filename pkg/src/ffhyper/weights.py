"""Hypergeometric weight systems gamma = sum gamma_nu [nu].

Everything here is exact: integers and ``fractions.Fraction``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .errors import PreconditionError, VerificationError


def frac(x: Fraction) -> Fraction:
    """Fractional part in [0, 1)."""
    x = Fraction(x)
    return x - math.floor(x)


@dataclass(frozen=True)
class WeightSystem:
    gamma: tuple[tuple[int, int], ...]  # sorted (nu, gamma_nu) pairs, gamma_nu != 0

    def __init__(self, gamma):
        items = dict(gamma).items() if not isinstance(gamma, dict) else gamma.items()
        merged: dict[int, int] = {}
        for nu, g in items:
            if int(nu) < 1:
                raise PreconditionError(f"nu must be >= 1, got {nu}")
            merged[int(nu)] = merged.get(int(nu), 0) + int(g)
        pairs = tuple(sorted((nu, g) for nu, g in merged.items() if g))
        object.__setattr__(self, "gamma", pairs)
        if sum(nu * g for nu, g in pairs) != 0:
            raise PreconditionError(f"sum nu*gamma_nu must vanish for {self}")
        if self.d <= 0:
            raise PreconditionError(f"d(gamma) = -sum gamma_nu must be positive for {self}")

    @classmethod
    def parse(cls, text: str) -> "WeightSystem":
        """Parse the sparse form "3:1,1:-3" (nu:gamma_nu pairs)."""
        pairs = []
        for part in text.replace(" ", "").split(","):
            if not part:
                continue
            try:
                nu, g = part.split(":")
                pairs.append((int(nu), int(g)))
            except ValueError:
                raise PreconditionError(f"bad weight entry {part!r}; expected nu:gamma") from None
        acc: dict[int, int] = {}
        for nu, g in pairs:
            acc[nu] = acc.get(nu, 0) + g
        return cls(acc)

    @classmethod
    def binomial(cls, d: int) -> "WeightSystem":
        """[d] - [1] - [d-1], whose u_n is binomial(dn, n)."""
        return cls({d: 1, 1: -1, d - 1: -1} if d > 2 else {2: 1, 1: -2})

    @classmethod
    def dwork(cls, d: int) -> "WeightSystem":
        """[d] - d[1], whose u_n is (dn)!/n!^d."""
        return cls({d: 1, 1: -d})

    @property
    def d(self) -> int:
        return -sum(g for _, g in self.gamma)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(nu for nu, _ in self.gamma)

    def __str__(self) -> str:
        return " ".join(f"{g:+d}[{nu}]" for nu, g in self.gamma)


def u_coeff(gamma: WeightSystem, n: int) -> Fraction:
    if n < 0:
        raise PreconditionError("n must be non-negative")
    num, den = 1, 1
    for nu, g in gamma.gamma:
        f = math.factorial(nu * n)
        if g > 0:
            num *= f**g
        else:
            den *= f ** (-g)
    return Fraction(num, den)


@dataclass(frozen=True)
class HypParams:
    """alpha, beta as sorted tuples of Fractions in (0, 1]; beta keeps the 1 carrying n!."""

    alpha: tuple[Fraction, ...]
    beta: tuple[Fraction, ...]
    lambda0_inv: Fraction

    @property
    def series_beta(self) -> tuple[Fraction, ...]:
        """beta with one entry 1 removed, for series that supply k! themselves."""
        b = list(self.beta)
        b.remove(Fraction(1))
        return tuple(b)


def _multiset_minus(a: list, b: list) -> tuple[list, list]:
    b = list(b)
    left = []
    for x in a:
        if x in b:
            b.remove(x)
        else:
            left.append(x)
    return left, b


def extract_params(gamma: WeightSystem) -> HypParams:
    """Hypergeometric parameters with u_n = prod (alpha)_n / prod (beta)_n * lambda0_inv^n."""
    num, den = [], []
    for nu, g in gamma.gamma:
        entries = [Fraction(j, nu) for j in range(1, nu + 1)]
        (num if g > 0 else den).extend(entries * abs(g))
    alpha, beta = _multiset_minus(num, den)
    lam = Fraction(1)
    for nu, g in gamma.gamma:
        lam *= Fraction(nu) ** (nu * g)
    return HypParams(tuple(sorted(alpha)), tuple(sorted(beta)), lam)


def pochhammer(a: Fraction, n: int) -> Fraction:
    out = Fraction(1)
    for m in range(n):
        out *= a + m
    return out


def resynthesize(params: HypParams, n: int) -> Fraction:
    """prod (alpha_i)_n / prod (beta_j)_n * lambda0_inv^n."""
    num = reduce(lambda acc, a: acc * pochhammer(a, n), params.alpha, Fraction(1))
    den = reduce(lambda acc, b: acc * pochhammer(b, n), params.beta, Fraction(1))
    return num / den * params.lambda0_inv**n


def landau(gamma: WeightSystem, x) -> int:
    """L(x) = -sum gamma_nu {nu x}."""
    val = -sum(g * frac(nu * Fraction(x)) for nu, g in gamma.gamma)
    if val.denominator != 1:
        raise VerificationError(f"L({x}) = {val} is not an integer")
    return int(val)


def landau_by_counting(gamma: WeightSystem, x) -> int:
    """#{alpha_i <= {x}} - #{beta_j <= {x}} with the parameters j/nu in (0, 1].

    gamma_nu > 0 contributes numerator parameters, gamma_nu < 0 denominator
    ones; there are floor(nu {x}) of them below {x} for each nu.
    """
    y = frac(Fraction(x))
    return sum(g * math.floor(y * nu) for nu, g in gamma.gamma)


def discontinuities(gamma: WeightSystem) -> list[Fraction]:
    """Points in [0, 1) where L jumps."""
    cands = sorted({Fraction(j, nu) for nu in gamma.support for j in range(nu)})
    eps = _epsilon(gamma)
    out = []
    for c in cands:
        left = landau(gamma, c - eps)
        if landau(gamma, c) != left:
            out.append(c)
    return out


def _epsilon(gamma: WeightSystem) -> Fraction:
    return Fraction(1, 2 * math.lcm(*gamma.support))


def landau_criterion(gamma: WeightSystem, spot_check: int = 200) -> bool:
    """Whether L >= 0 on a period; when it is, u_n in Z is also confirmed for n <= spot_check."""
    eps = _epsilon(gamma)
    cands = {Fraction(j, nu) for nu in gamma.support for j in range(nu)}
    ok = min(min(landau(gamma, c), landau(gamma, c + eps)) for c in cands) >= 0
    if ok:
        for n in range(spot_check + 1):
            if u_coeff(gamma, n).denominator != 1:
                raise VerificationError(f"L >= 0 but u_{n} is not integral for {gamma}")
    return ok


def vp(p: int, x: Fraction) -> int:
    x = Fraction(x)
    if x == 0:
        raise PreconditionError("valuation of 0")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def valuation_identity(gamma: WeightSystem, p: int, n: int) -> tuple[int, int]:
    """(v_p(u_n), sum_{k>=1} L(n/p^k)); raises if they differ."""
    lhs = vp(p, u_coeff(gamma, n))
    top = max(gamma.support) * n
    rhs = 0
    pk = p
    while pk <= top:
        rhs += landau(gamma, Fraction(n, pk))
        pk *= p
    if lhs != rhs:
        raise VerificationError(f"v_{p}(u_{n}) = {lhs} but Landau sum = {rhs} for {gamma}")
    return lhs, rhs


@dataclass
class LandauReport:
    jumps_ok: bool
    integral_ok: bool
    symmetry_ok: bool
    bounded_ok: bool
    discontinuities: list

    @property
    def ok(self) -> bool:
        return self.jumps_ok and self.integral_ok and self.symmetry_ok and self.bounded_ok


def landau_properties(gamma: WeightSystem) -> LandauReport:
    """Check the structural properties of L on the grid k/(2 lcm) of one period.

    (i) L agrees with the counting formula and jumps only at parameters,
    (ii) L is integer valued, (iii) L(-x) = d - L(x) off the jumps,
    (iv) L <= d.
    """
    d = gamma.d
    m = 2 * math.lcm(*gamma.support)
    params = {Fraction(j, nu) for nu in gamma.support for j in range(nu)}
    jumps = discontinuities(gamma)
    jumps_ok = set(jumps) <= params
    integral_ok = symmetry_ok = bounded_ok = True
    for k in range(m):
        x = Fraction(k, m)
        try:
            v = landau(gamma, x)
        except VerificationError:
            integral_ok = False
            continue
        if v != landau_by_counting(gamma, x):
            jumps_ok = False
        if x not in params and landau(gamma, -x) != d - v:
            symmetry_ok = False
        if v > d:
            bounded_ok = False
    return LandauReport(jumps_ok, integral_ok, symmetry_ok, bounded_ok, jumps)


def parameters_interlace(params: HypParams) -> bool:
    """Whether alpha and beta (mod 1, in [0,1)) alternate, starting with a beta at 0."""
    a = sorted(frac(x) for x in params.alpha)
    b = sorted(frac(x) for x in params.beta)
    merged = sorted([(x, 1) for x in a] + [(x, 0) for x in b])
    if len(set(x for x, _ in merged)) != len(merged) or abs(len(a) - len(b)) > 1:
        return False
    tags = [t for _, t in merged]
    return all(tags[i] != tags[i + 1] for i in range(len(tags) - 1))


def period_table(gamma: WeightSystem) -> list[tuple[Fraction, Fraction, int]]:
    """L on each interval [c_i, c_{i+1}) between consecutive jump candidates in [0, 1)."""
    cands = sorted({Fraction(j, nu) for nu in gamma.support for j in range(nu)})
    bounds = cands + [Fraction(1)]
    return [(lo, hi, landau(gamma, lo)) for lo, hi in zip(bounds, bounds[1:])]
