"""Prime and extension finite fields with primitive-root and discrete-log tables.

Elements of F_q, q = p^f, are encoded as integers in [0, q): the element
c_0 + c_1 x + ... + c_{f-1} x^{f-1} (mod the defining polynomial) has code
c_0 + c_1 p + ... + c_{f-1} p^{f-1}.  For f = 1 the code is the residue itself.
Every table in this module is indexed by these codes, so the rest of the
package can work with plain ints and numpy int arrays.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import BudgetError, PreconditionError

MAX_FIELD_SIZE = 2**20


def is_prime(n: int) -> bool:
    """Trial division; adequate for the desk-scale primes used here."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    for k in range(3, r + 1, 2):
        if n % k == 0:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    k = 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Dense polynomials over F_p, coefficient lists low -> high.


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def poly_divmod(a: Sequence[int], m: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim([x % p for x in a])
    m = _trim([x % p for x in m])
    if not m:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(m[-1], -1, p)
    quo = [0] * max(len(a) - len(m) + 1, 0)
    while len(a) >= len(m):
        c = a[-1] * inv % p
        shift = len(a) - len(m)
        quo[shift] = c
        for i, y in enumerate(m):
            a[shift + i] = (a[shift + i] - c * y) % p
        _trim(a)
    return _trim(quo), a


def poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    return poly_divmod(a, m, p)[1]


def poly_powmod(a: Sequence[int], e: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = poly_mod(a, m, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), m, p)
        base = poly_mod(poly_mul(base, base, p), m, p)
        e >>= 1
    return result


def poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Irreducibility over F_p: root test for degree <= 3, Rabin-style gcds above."""
    m = _trim([x % p for x in modulus])
    f = len(m) - 1
    if f < 1:
        return False
    if f == 1:
        return True
    if f <= 3:
        for r in range(p):
            if sum(c * pow(r, i, p) for i, c in enumerate(m)) % p == 0:
                return False
        return True
    x = [0, 1]
    xp = x
    for _ in range(1, f // 2 + 1):
        xp = poly_powmod(xp, p, m, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        if len(poly_gcd(m, _trim(diff), p)) > 1:
            return False
    return True


def smallest_irreducible(p: int, f: int) -> tuple[int, ...]:
    """Monic irreducible of degree f whose lower coefficients have the smallest code."""
    for code in range(p**f):
        low = [(code // p**i) % p for i in range(f)]
        cand = low + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise PreconditionError(f"no irreducible polynomial of degree {f} over F_{p}")


# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """Immutable description of F_q plus its exp/log/trace tables.

    ``exp[i]`` is the code of g^i for the stored primitive root g, ``log[c]``
    the discrete log of the element with code c (``log[0] == -1``), and
    ``trace[c]`` the absolute trace to F_p.
    """

    p: int
    f: int
    modulus: tuple[int, ...] | None
    generator: int
    exp: np.ndarray = field(repr=False)
    log: np.ndarray = field(repr=False)
    trace: np.ndarray = field(repr=False)
    _memo: dict = field(default_factory=dict, repr=False)

    @property
    def q(self) -> int:
        return self.p**self.f

    @property
    def order(self) -> int:
        """Size of the multiplicative group, q - 1."""
        return self.p**self.f - 1

    def __repr__(self) -> str:
        if self.f == 1:
            return f"FieldSpec(F_{self.p}, g={self.generator})"
        return f"FieldSpec(F_{self.q}, modulus={self.modulus}, g={self.generator})"

    # -- scalar arithmetic on codes --------------------------------------

    def digits(self, c: int) -> list[int]:
        return [(c // self.p**i) % self.p for i in range(self.f)]

    def from_digits(self, ds: Sequence[int]) -> int:
        return sum((d % self.p) * self.p**i for i, d in enumerate(ds))

    def add(self, a: int, b: int) -> int:
        if self.f == 1:
            return (a + b) % self.p
        return self.from_digits([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        if self.f == 1:
            return (-a) % self.p
        return self.from_digits([-x for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.f == 1:
            return a * b % self.p
        return int(self.exp[(int(self.log[a]) + int(self.log[b])) % self.order])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in a finite field")
        if self.f == 1:
            return pow(a, -1, self.p)
        return int(self.exp[(-int(self.log[a])) % self.order])

    def power(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of 0")
            return 1 if e == 0 else 0
        return int(self.exp[(int(self.log[a]) * e) % self.order])

    def embed(self, n: int) -> int:
        """Image of the integer n under Z -> F_p -> F_q."""
        return n % self.p

    # -- vectorized arithmetic on numpy code arrays ----------------------

    def add_arr(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.f == 1:
            return (a + b) % self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        scale = 1
        for _ in range(self.f):
            out += ((a // scale % self.p + b // scale % self.p) % self.p) * scale
            scale *= self.p
        return out

    def neg_arr(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.f == 1:
            return (-a) % self.p
        out = np.zeros_like(a)
        scale = 1
        for _ in range(self.f):
            out += ((-(a // scale % self.p)) % self.p) * scale
            scale *= self.p
        return out

    def mul_arr(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.f == 1:
            return a * b % self.p
        la = self.log[a]
        lb = self.log[b]
        prod = self.exp[(la + lb) % self.order]
        return np.where((a == 0) | (b == 0), 0, prod)

    def elements(self) -> range:
        return range(self.q)

    def element(self, value) -> "FieldElement":
        return FieldElement(self, to_code(self, value))


def to_code(spec: FieldSpec, value) -> int:
    """Normalize an int, coefficient sequence or FieldElement to a code."""
    if isinstance(value, FieldElement):
        if value.spec is not spec:
            raise PreconditionError("element belongs to a different field")
        return value.code
    if isinstance(value, (int, np.integer)):
        value = int(value)
        if spec.f == 1:
            return value % spec.p
        if not 0 <= value < spec.q:
            raise PreconditionError(f"code {value} outside [0, {spec.q})")
        return value
    coeffs = list(value)
    if len(coeffs) > spec.f:
        raise PreconditionError("too many coefficients for this field")
    return spec.from_digits(coeffs)


class FieldElement:
    """Thin operator wrapper around a code; arithmetic defers to the FieldSpec."""

    __slots__ = ("spec", "code")

    def __init__(self, spec: FieldSpec, code: int):
        self.spec = spec
        self.code = code

    def _other(self, other) -> int:
        return to_code(self.spec, other)

    def __add__(self, other):
        return FieldElement(self.spec, self.spec.add(self.code, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.spec, self.spec.sub(self.code, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.spec, self.spec.sub(self._other(other), self.code))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.code))

    def __mul__(self, other):
        return FieldElement(self.spec, self.spec.mul(self.code, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.spec, self.spec.mul(self.code, self.spec.inv(self._other(other))))

    def __pow__(self, e: int):
        return FieldElement(self.spec, self.spec.power(self.code, e))

    def __eq__(self, other):
        try:
            return self.code == self._other(other)
        except PreconditionError:
            return False

    def __hash__(self):
        return hash((id(self.spec), self.code))

    def __bool__(self):
        return self.code != 0

    def __int__(self):
        return self.code

    def __repr__(self):
        if self.spec.f == 1:
            return f"{self.code} (mod {self.spec.p})"
        return f"{self.spec.digits(self.code)} in F_{self.spec.q}"


# ---------------------------------------------------------------------------


def _is_generator_prime(g: int, p: int, factors: list[int]) -> bool:
    return all(pow(g, (p - 1) // r, p) != 1 for r in factors)


def _build_prime(p: int) -> FieldSpec:
    factors = prime_factors(p - 1)
    g = next(c for c in range(1, p) if _is_generator_prime(c, p, factors)) if p > 2 else 1
    exp = np.empty(p - 1, dtype=np.int64)
    log = np.full(p, -1, dtype=np.int64)
    x = 1
    for i in range(p - 1):
        exp[i] = x
        log[x] = i
        x = x * g % p
    trace = np.arange(p, dtype=np.int64)
    return FieldSpec(p, 1, None, g, exp, log, trace)


def _build_extension(p: int, f: int, modulus: tuple[int, ...]) -> FieldSpec:
    q = p**f
    order = q - 1
    factors = prime_factors(order)
    m = list(modulus)

    def code_to_poly(c):
        return _trim([(c // p**i) % p for i in range(f)])

    def poly_to_code(a):
        return sum(c * p**i for i, c in enumerate(a))

    g = None
    for c in range(2, q):
        poly = code_to_poly(c)
        if all(poly_powmod(poly, order // r, m, p) != [1] for r in factors):
            g = c
            break
    if g is None:  # pragma: no cover - a generator always exists
        raise PreconditionError("no primitive root found")
    gpoly = code_to_poly(g)
    exp = np.empty(order, dtype=np.int64)
    log = np.full(q, -1, dtype=np.int64)
    cur = [1]
    for i in range(order):
        code = poly_to_code(cur)
        if log[code] != -1:
            raise PreconditionError("modulus is not irreducible (generator has short order)")
        exp[i] = code
        log[code] = i
        cur = poly_mod(poly_mul(cur, gpoly, p), m, p)

    # Tr is F_p-linear: tabulate it on the basis 1, x, ..., x^{f-1}.
    basis_tr = []
    for i in range(f):
        xi = [0] * i + [1]
        total = [0] * f
        conj = poly_mod(xi, m, p)
        for _ in range(f):
            for j, cj in enumerate(conj):
                total[j] = (total[j] + cj) % p
            conj = poly_powmod(conj, p, m, p)
        # The trace lies in F_p, i.e. only the constant coefficient survives.
        if any(total[1:]):
            raise PreconditionError("trace computation left F_p; modulus is not irreducible")
        basis_tr.append(total[0])
    codes = np.arange(q, dtype=np.int64)
    trace = np.zeros(q, dtype=np.int64)
    for i in range(f):
        trace = (trace + (codes // p**i % p) * basis_tr[i]) % p
    return FieldSpec(p, f, tuple(modulus), g, exp, log, trace)


def make_field(p: int, f: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Build F_{p^f} with the smallest primitive root in code order.

    ``modulus`` is a monic coefficient list (low -> high) of degree f; when
    omitted for f > 1, the irreducible with the smallest lower-coefficient
    code is used.

    >>> make_field(7).generator
    3
    >>> make_field(3, 2).q
    9
    """
    if not is_prime(p) or p == 2:
        raise PreconditionError(f"p={p} must be an odd prime")
    if f < 1:
        raise PreconditionError("extension degree must be >= 1")
    if p**f > MAX_FIELD_SIZE:
        raise BudgetError(f"q={p}^{f} exceeds the table budget {MAX_FIELD_SIZE}")
    if f == 1:
        if modulus is not None and len(_trim(list(modulus))) != 2:
            raise PreconditionError("a prime field takes a degree-1 modulus or none")
        return _build_prime(p)
    if modulus is None:
        modulus = smallest_irreducible(p, f)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(_trim(list(modulus))) != f + 1 or modulus[-1] != 1:
            raise PreconditionError("modulus must be monic of degree f")
        if not is_irreducible(modulus, p):
            raise PreconditionError(f"modulus {modulus} is reducible over F_{p}")
    return _build_extension(p, f, tuple(modulus))


def dlog(spec: FieldSpec, x) -> int:
    """Discrete log of a nonzero element to the base of ``spec.generator``."""
    c = to_code(spec, x)
    if c == 0:
        raise PreconditionError("discrete log of 0 is undefined")
    return int(spec.log[c])


def trace(spec: FieldSpec, x) -> int:
    """Absolute trace F_q -> F_p as an integer in [0, p)."""
    return int(spec.trace[to_code(spec, x)])


def frobenius(spec: FieldSpec, x) -> int:
    return spec.power(to_code(spec, x), spec.p)


def all_points(spec: FieldSpec, n: int):
    """Iterate code tuples of every point of F_q^n (small n only)."""
    return itertools.product(range(spec.q), repeat=n)
