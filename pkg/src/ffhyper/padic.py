"""Truncated p-adic integers, Teichmuller lifts and Morita's p-adic gamma function."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import PreconditionError, VerificationError
from .ffield import is_prime


def _check_pk(p: int, k: int):
    if p < 3 or not is_prime(p):
        raise PreconditionError(f"p={p} must be an odd prime")
    if k < 1:
        raise PreconditionError(f"precision k={k} must be >= 1")


@dataclass(frozen=True)
class PadicInt:
    """An element of Z/p^k; mixing precisions keeps the smaller one."""

    p: int
    k: int
    residue: int

    def __post_init__(self):
        object.__setattr__(self, "residue", self.residue % self.p**self.k)

    @classmethod
    def of(cls, p: int, k: int, x) -> "PadicInt":
        if isinstance(x, PadicInt):
            return x.reduce(min(k, x.k))
        if isinstance(x, (Fraction, RationalInZp)):
            return RationalInZp.of(p, x).embed(k)
        return cls(p, k, int(x))

    @property
    def modulus(self) -> int:
        return self.p**self.k

    def reduce(self, k: int) -> "PadicInt":
        if k > self.k:
            raise PreconditionError(f"cannot raise precision from {self.k} to {k}")
        return PadicInt(self.p, k, self.residue)

    def _coerce(self, other) -> tuple["PadicInt", "PadicInt"]:
        if isinstance(other, PadicInt):
            if other.p != self.p:
                raise PreconditionError("mixing different primes")
            k = min(self.k, other.k)
            return self.reduce(k), other.reduce(k)
        return self, PadicInt.of(self.p, self.k, other)

    def __add__(self, other):
        a, b = self._coerce(other)
        return PadicInt(a.p, a.k, a.residue + b.residue)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._coerce(other)
        return PadicInt(a.p, a.k, a.residue - b.residue)

    def __rsub__(self, other):
        a, b = self._coerce(other)
        return PadicInt(a.p, a.k, b.residue - a.residue)

    def __neg__(self):
        return PadicInt(self.p, self.k, -self.residue)

    def __mul__(self, other):
        a, b = self._coerce(other)
        return PadicInt(a.p, a.k, a.residue * b.residue)

    __rmul__ = __mul__

    def is_unit(self) -> bool:
        return self.residue % self.p != 0

    def inverse(self) -> "PadicInt":
        if not self.is_unit():
            raise PreconditionError(f"{self.residue} is not a unit mod {self.p}")
        return PadicInt(self.p, self.k, pow(self.residue, -1, self.modulus))

    def __truediv__(self, other):
        a, b = self._coerce(other)
        return a * b.inverse()

    def __rtruediv__(self, other):
        a, b = self._coerce(other)
        return b * a.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return PadicInt(self.p, self.k, pow(self.residue, e, self.modulus))

    def __eq__(self, other):
        if isinstance(other, PadicInt):
            if other.p != self.p:
                return False
            k = min(self.k, other.k)
            return (self.residue - other.residue) % self.p**k == 0
        if isinstance(other, int):
            return (self.residue - other) % self.modulus == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.k, self.residue))

    def __int__(self):
        return self.residue

    def signed(self) -> int:
        """Representative in (-p^k/2, p^k/2]."""
        r = self.residue
        return r - self.modulus if r > self.modulus // 2 else r

    def __repr__(self):
        return f"PadicInt({self.residue} mod {self.p}^{self.k})"


@dataclass(frozen=True)
class RationalInZp:
    p: int
    value: Fraction

    def __post_init__(self):
        if self.value.denominator % self.p == 0:
            raise PreconditionError(f"{self.value} is not in Z_{self.p}")

    @classmethod
    def of(cls, p: int, x) -> "RationalInZp":
        if isinstance(x, RationalInZp):
            return x
        if isinstance(x, str):
            x = Fraction(x.strip())
        return cls(p, Fraction(x))

    def embed(self, k: int) -> PadicInt:
        m = self.p**k
        return PadicInt(self.p, k, self.value.numerator * pow(self.value.denominator, -1, m))

    def representative(self, k: int) -> int:
        """The integer n with n = x mod p^k and 2 <= n < 2 + p^k."""
        m = self.p**k
        return 2 + (self.embed(k).residue - 2) % m


def teichmuller(p: int, k: int, x: int) -> PadicInt:
    """omega(x) = x^{p^{k-1}} mod p^k."""
    _check_pk(p, k)
    if x % p == 0:
        raise PreconditionError(f"p={p} divides x={x}")
    m = p**k
    return PadicInt(p, k, pow(x, p ** (k - 1), m))


def teichmuller_newton(p: int, k: int, x: int) -> PadicInt:
    """Hensel lift of the root x of T^{p-1} - 1 by Newton steps."""
    _check_pk(p, k)
    if x % p == 0:
        raise PreconditionError(f"p={p} divides x={x}")
    r, prec = x % p, 1
    while prec < k:
        prec = min(2 * prec, k)
        m = p**prec
        f = pow(r, p - 1, m) - 1
        df = (p - 1) * pow(r, p - 2, m)
        r = (r - f * pow(df, -1, m)) % m
    return PadicInt(p, k, r)


@lru_cache(maxsize=64)
def _restricted_factorials(p: int, k: int) -> tuple[int, ...]:
    """t[n] = prod_{1 <= j < n, p does not divide j} j mod p^k, for n < 2 + p^k."""
    m = p**k
    out = [1, 1]
    acc = 1
    for j in range(1, m + 1):
        if j % p:
            acc = acc * j % m
        out.append(acc)
    return tuple(out)


def padic_gamma(p: int, k: int, x) -> PadicInt:
    """Morita's Gamma_p(x) mod p^k for x in Z_(p) (int, Fraction, "a/b" or RationalInZp)."""
    _check_pk(p, k)
    n = RationalInZp.of(p, x).representative(k)
    sign = -1 if n % 2 else 1
    return PadicInt(p, k, sign * _restricted_factorials(p, k)[n])


def _as_rational(p: int, x) -> Fraction:
    return RationalInZp.of(p, x).value


def gamma_shift(p: int, k: int, x) -> PadicInt:
    """Gamma_p(x+1), checked against -x Gamma_p(x) (unit x) or -Gamma_p(x)."""
    xv = _as_rational(p, x)
    nxt = padic_gamma(p, k, xv + 1)
    cur = padic_gamma(p, k, xv)
    if xv.numerator % p:
        expected = -(RationalInZp(p, xv).embed(k) * cur)
    else:
        expected = -cur
    if nxt != expected:
        raise VerificationError(f"Gamma_{p}({xv}+1) shift identity fails mod {p}^{k}")
    return nxt


def R(p: int, y) -> int:
    """Representative of y mod p in {1, ..., p}."""
    r = RationalInZp.of(p, y).embed(1).residue
    return r if r else p


def gamma_reflection(p: int, k: int, x) -> tuple[PadicInt, int]:
    """(Gamma_p(x) Gamma_p(1-x), R(x)); the product must be (-1)^R(x)."""
    xv = _as_rational(p, x)
    prod = padic_gamma(p, k, xv) * padic_gamma(p, k, 1 - xv)
    r = R(p, xv)
    if prod != (-1) ** r:
        raise VerificationError(f"reflection fails at x={xv}, p={p}, k={k}")
    return prod, r


def gauss_multiplication(p: int, k: int, m: int, x) -> tuple[PadicInt, PadicInt]:
    """Both sides of prod_j Gamma_p(x + j/m) = eps_m m^{1-R(mx)} (m^{p-1})^{s(mx)} Gamma_p(mx)."""
    _check_pk(p, k)
    if m < 1 or m % p == 0:
        raise PreconditionError(f"m={m} must be a positive integer prime to p={p}")
    xv = _as_rational(p, x)
    lhs = PadicInt(p, k, 1)
    eps = PadicInt(p, k, 1)
    for j in range(m):
        lhs = lhs * padic_gamma(p, k, xv + Fraction(j, m))
        eps = eps * padic_gamma(p, k, Fraction(j, m))
    y = m * xv
    r = R(p, y)
    # s(y) = (R(y) - y)/p lies in Z_p; m^{p-1} = 1 mod p, so only s mod p^{k-1} matters
    s = RationalInZp(p, (r - y) / p).embed(k).residue
    mm = PadicInt(p, k, m)
    rhs = eps * mm ** (1 - r) * (mm ** (p - 1)) ** s * padic_gamma(p, k, y)
    if lhs != rhs:
        raise VerificationError(f"multiplication formula fails at m={m}, x={xv}, p={p}, k={k}")
    return lhs, rhs


def digit_sum_and_rotations(p: int, f: int, a: int) -> tuple[int, list[int]]:
    """S_p(a) and the f cyclic digit rotations of a (rotation j multiplies by p^j mod p^f - 1)."""
    if not 0 <= a < p**f - 1:
        raise PreconditionError(f"a={a} must lie in [0, {p**f - 1})")
    digits = [(a // p**i) % p for i in range(f)]
    rots = []
    for j in range(f):
        rot = digits[-j:] + digits[:-j] if j else digits
        rots.append(sum(c * p**i for i, c in enumerate(rot)))
    return sum(digits), rots
