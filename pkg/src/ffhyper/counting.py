"""Point counts for monomial deformations of diagonal hypersurfaces.

    X_lambda :  x_1^d + ... + x_n^d - d*lambda * x_1^{h_1} ... x_n^{h_n} = 0   in P^{n-1}(F_q)

Three routes are provided and cross-checked: exhaustive projective
enumeration, Weil's character decomposition of the diagonal (lambda = 0)
case, and Koblitz's Gauss-sum formula.  ``class_hyp_check`` compares the
per-class Koblitz sums with Katz hypergeometric values.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .charsums import gauss_table, mult_char
from .errors import BudgetError, PreconditionError, RoundingError
from .ffield import FieldSpec, to_code
from .katz import cancel_common, hyp_fourier

DEFAULT_BUDGET = 10**8
ROUND_TOL = 1e-4
_CHUNK = 1 << 20


@dataclass(frozen=True)
class DeformationFamily:
    d: int
    h: tuple[int, ...]
    lam: int = 0

    def __post_init__(self):
        object.__setattr__(self, "h", tuple(int(x) for x in self.h))
        if self.d < 2 or len(self.h) < 2:
            raise PreconditionError("need d >= 2 and n >= 2")
        if any(x < 0 for x in self.h) or sum(self.h) != self.d:
            raise PreconditionError(f"h={self.h} must be non-negative with sum d={self.d}")
        if math.gcd(self.d, *self.h) != 1:
            raise PreconditionError(f"gcd(d, h) must be 1 for h={self.h}")

    @property
    def n(self) -> int:
        return len(self.h)

    @classmethod
    def dwork(cls, d: int, lam: int = 0) -> "DeformationFamily":
        return cls(d, (1,) * d, lam)

    @classmethod
    def zero_dim(cls, d: int, lam: int = 0) -> "DeformationFamily":
        """Z_lambda: x^d + y^d - d lambda x y^{d-1}."""
        return cls(d, (1, d - 1), lam)

    def with_lambda(self, lam: int) -> "DeformationFamily":
        return DeformationFamily(self.d, self.h, lam)

    def describe(self) -> str:
        return f"d={self.d} h={','.join(map(str, self.h))} lambda={self.lam}"


def field_lambda(spec: FieldSpec, lam: int) -> int:
    """Element of F_q named by the integer lambda.

    For prime fields this is lambda mod p.  For f > 1 integers in [0, q)
    are read as element codes, which agrees with Z -> F_p for lambda < p.
    """
    return to_code(spec, lam)


def _power_table(spec: FieldSpec, e: int) -> np.ndarray:
    codes = np.arange(spec.q)
    out = spec.exp[(spec.log[codes] * e) % spec.order]
    out[0] = 1 if e == 0 else 0
    return out


def projective_size(q: int, n: int) -> int:
    return (q**n - 1) // (q - 1)


def brute_count(family: DeformationFamily, spec: FieldSpec, budget: int = DEFAULT_BUDGET) -> int:
    """Exact number of points of X_lambda in P^{n-1}(F_q).

    Each projective point is visited once, as the vector whose first
    nonzero coordinate is 1.  Within a patch the trailing coordinates are
    evaluated as a numpy grid; the leading ones are looped over.
    """
    q, n, d = spec.q, family.n, family.d
    if projective_size(q, n) > budget:
        raise BudgetError(f"P^{n - 1}(F_{q}) has {projective_size(q, n)} points, budget {budget}")
    Q = spec.order
    powd = _power_table(spec, d)
    logs = spec.log
    coef = spec.mul(spec.embed(d), field_lambda(spec, family.lam))
    neg_coef = spec.neg(coef)
    h = family.h
    total = 0
    for k in range(n):
        free = n - 1 - k
        dead = any(h[i] > 0 for i in range(k))  # monomial vanishes on this patch
        inner = 0
        while inner < free and q ** (inner + 1) <= _CHUNK:
            inner += 1
        outer = free - inner
        # coordinates k+1+outer .. n-1 live on the grid
        grid = np.indices((q,) * inner, dtype=np.int64).reshape(inner, -1) if inner else np.zeros((0, 1), np.int64)
        g_sum = np.zeros(grid.shape[1], dtype=np.int64)
        g_log = np.zeros(grid.shape[1], dtype=np.int64)
        g_zero = np.zeros(grid.shape[1], dtype=bool)
        for j in range(inner):
            hi = h[k + 1 + outer + j]
            g_sum = spec.add_arr(g_sum, powd[grid[j]])
            if hi:
                g_zero |= grid[j] == 0
                g_log = (g_log + hi * np.maximum(logs[grid[j]], 0)) % Q
        for head in itertools.product(range(q), repeat=outer):
            s0 = 1  # x_k = 1
            l0 = 0
            z0 = dead
            for j, c in enumerate(head):
                hi = h[k + 1 + j]
                s0 = spec.add(s0, int(powd[c]))
                if hi:
                    if c == 0:
                        z0 = True
                    else:
                        l0 = (l0 + hi * int(logs[c])) % Q
            if z0:
                vals = spec.add_arr(g_sum, s0)
            else:
                mono = np.where(g_zero, 0, spec.exp[(g_log + l0) % Q])
                vals = spec.add_arr(spec.add_arr(g_sum, s0), spec.mul_arr(mono, neg_coef))
            total += int(np.count_nonzero(vals == 0))
    return total


def rational_singular_points(family: DeformationFamily, spec: FieldSpec) -> list[tuple[int, ...]]:
    """F_q-rational points where every partial derivative vanishes (p must not divide d)."""
    q, n, d = spec.q, family.n, family.d
    if d % spec.p == 0:
        raise PreconditionError("characteristic divides d")
    if projective_size(q, n) > 10**6:
        raise BudgetError("singular-point search is limited to 10^6 points")
    coef = spec.mul(spec.embed(d), field_lambda(spec, family.lam))
    out = []
    for k in range(n):
        for rest in itertools.product(range(q), repeat=n - 1 - k):
            x = (0,) * k + (1,) + rest
            ok = True
            for i in range(n):
                term = spec.mul(spec.embed(d), spec.power(x[i], d - 1))
                if family.h[i]:
                    mono = spec.embed(family.h[i])
                    for j in range(n):
                        e = family.h[j] - (1 if j == i else 0)
                        mono = spec.mul(mono, spec.power(x[j], e))
                    term = spec.sub(term, spec.mul(coef, mono))
                if term:
                    ok = False
                    break
            if ok:
                out.append(x)
    return out


# ---------------------------------------------------------------------------
# Weil / Koblitz


def _check_divides(d: int, spec: FieldSpec):
    if spec.order % d:
        raise PreconditionError(f"d={d} does not divide q-1={spec.order}")


def _check_koblitz(family: DeformationFamily, spec: FieldSpec):
    _check_divides(family.d, spec)
    if 0 in family.h:
        # a variable absent from the monomial breaks the torus bookkeeping behind the formula
        raise PreconditionError(f"Koblitz's formula needs every h_i >= 1, got h={family.h}")


def round_exact(z: complex, what: str = "value") -> int:
    """Nearest integer to z, refusing if z is not within ROUND_TOL of one."""
    r = round(z.real)
    if abs(z - r) >= ROUND_TOL:
        raise RoundingError(f"{what}={z} is not within {ROUND_TOL} of an integer")
    return int(r)


def weil_component(spec: FieldSpec, d: int, n: int, w: Sequence[int]) -> complex:
    """Character component of the diagonal count for chi_w.

    (q^{n-1}-1)/(q-1) for w = 0, g(w_1/d)...g(w_n/d)/q when no w_i is 0
    (that is -J/q with J the Gauss-ratio Jacobi sum, g(0) = -1), else 0.
    """
    _check_divides(d, spec)
    if len(w) != n or sum(w) % d:
        raise PreconditionError(f"{w} is not in W for d={d}, n={n}")
    q = spec.q
    if all(x % d == 0 for x in w):
        return complex((q ** (n - 1) - 1) // (q - 1))
    if any(x % d == 0 for x in w):
        return 0j
    g = gauss_table(spec)
    step = spec.order // d
    val = 1 + 0j
    for x in w:
        val *= g[(x * step) % spec.order]
    return complex(val / q)


def wset_members(d: int, n: int) -> list[tuple[int, ...]]:
    return [w for w in itertools.product(range(d), repeat=n) if sum(w) % d == 0]


def diagonal_count(spec: FieldSpec, d: int, n: int) -> int:
    """Points on x_1^d + ... + x_n^d = 0 from Weil's decomposition."""
    total = sum((weil_component(spec, d, n, w) for w in wset_members(d, n)), 0j)
    return round_exact(total, "diagonal count")


@dataclass(frozen=True)
class WSet:
    d: int
    h: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]
    classes: tuple[tuple[tuple[int, ...], ...], ...]
    representatives: tuple[tuple[int, ...], ...]
    types: dict = field(hash=False, compare=False)

    def class_of(self, w: Sequence[int]) -> int:
        w = tuple(w)
        for i, cls in enumerate(self.classes):
            if w in cls:
                return i
        raise KeyError(w)


def build_wset(d: int, n: int, h: Sequence[int]) -> WSet:
    """W with its h-equivalence classes (w ~ w + k h mod d).

    Classes are listed by their lexicographically smallest member, which
    is also the representative.  ``types`` groups classes that are images
    of each other under a permutation of coordinates (meaningful when h is
    permutation invariant, as for the Dwork family), keyed by a canonical
    signature and mapping to the list of class indices.
    """
    h = tuple(h)
    if len(h) != n:
        raise PreconditionError("len(h) must equal n")
    members = wset_members(d, n)
    seen: set = set()
    classes = []
    for w in members:
        if w in seen:
            continue
        cls = sorted({tuple((wi + k * hi) % d for wi, hi in zip(w, h)) for k in range(d)})
        seen.update(cls)
        classes.append(tuple(cls))
    classes.sort()
    types: dict = {}
    for i, cls in enumerate(classes):
        sig = tuple(sorted(tuple(sorted(m)) for m in cls))
        types.setdefault(sig, []).append(i)
    return WSet(d, h, tuple(members), tuple(classes), tuple(c[0] for c in classes), types)


def koblitz_sum(family: DeformationFamily, spec: FieldSpec) -> complex:
    """(1/(q-1)) sum over s in (d/(q-1))Z/Z and w in W of g((w+sh)/d)/g(s) chi_s(d lambda)."""
    d, h = family.d, family.h
    _check_koblitz(family, spec)
    Q = spec.order
    g = gauss_table(spec)
    dl = spec.mul(spec.embed(d), field_lambda(spec, family.lam))
    if dl == 0:
        raise PreconditionError("Koblitz's formula needs d*lambda != 0")
    step = Q // d
    b = np.arange(step)  # s = d*b/(q-1)
    chis = np.array([mult_char(spec, d * int(x), dl) for x in b])
    total = 0j
    for w in wset_members(d, family.n):
        num = np.ones(step, dtype=complex)
        for wi, hi in zip(w, h):
            num *= g[(wi * step + b * hi) % Q]
        total += np.sum(num / g[(d * b) % Q] * chis)
    return complex(total / Q)


def class_partial(family: DeformationFamily, spec: FieldSpec, w: Sequence[int]) -> complex:
    """Koblitz contribution of the class of w, re-indexed over all s in (1/(q-1))Z/Z.

    (1/(q-1)) sum_s g(h s + w/d) / g(d s) * chi_{ds}(d lambda); any member
    of the class gives the same value.
    """
    d, h = family.d, family.h
    _check_koblitz(family, spec)
    Q = spec.order
    g = gauss_table(spec)
    dl = spec.mul(spec.embed(d), field_lambda(spec, family.lam))
    if dl == 0:
        raise PreconditionError("needs d*lambda != 0")
    s = np.arange(Q)
    step = Q // d
    num = np.ones(Q, dtype=complex)
    for wi, hi in zip(w, h):
        num *= g[(hi * s + wi * step) % Q]
    ldl = int(spec.log[dl])
    chis = np.exp(2j * np.pi * ((d * s * ldl) % Q) / Q)
    return complex(np.sum(num / g[(d * s) % Q] * chis) / Q)


@dataclass
class CountReport:
    family: DeformationFamily
    p: int
    f: int
    n_brute: int | None
    n_koblitz: complex
    n_koblitz_rounded: int
    n_diagonal: int
    class_partials: dict

    def row(self) -> dict:
        """Flat, ordered mapping used for both JSON and CSV output."""
        return {
            "p": self.p,
            "f": self.f,
            "q": self.p**self.f,
            "d": self.family.d,
            "n": self.family.n,
            "h": ",".join(map(str, self.family.h)),
            "lambda": self.family.lam,
            "n_brute": self.n_brute,
            "n_koblitz_re": round(self.n_koblitz.real, 9),
            "n_koblitz_im": round(self.n_koblitz.imag, 9),
            "n_koblitz_rounded": self.n_koblitz_rounded,
            "n_diagonal": self.n_diagonal,
            "match": self.n_brute is None or self.n_brute == self.n_koblitz_rounded,
        }


def koblitz_count(
    family: DeformationFamily, spec: FieldSpec, brute: bool = True, budget: int = DEFAULT_BUDGET
) -> CountReport:
    """N(lambda) from Koblitz's theorem, with the brute-force count alongside.

    lambda = 0 falls back to the diagonal count.  Every h_i must be
    positive.
    """
    _check_koblitz(family, spec)
    n0 = diagonal_count(spec, family.d, family.n)
    lam = field_lambda(spec, family.lam)
    partials = {}
    if lam == 0:
        value = complex(n0)
    else:
        ws = build_wset(family.d, family.n, family.h)
        for rep in ws.representatives:
            partials[rep] = class_partial(family, spec, rep)
        value = n0 + koblitz_sum(family, spec)
    rounded = round_exact(value, "Koblitz count")
    nb = brute_count(family, spec, budget) if brute else None
    return CountReport(family, spec.p, spec.f, nb, value, rounded, n0, partials)


# ---------------------------------------------------------------------------
# hypergeometric decomposition per class


@dataclass
class ClassCheck:
    """Comparison of one class's Koblitz sum with a Katz H value.

    The ``stated_*`` fields evaluate H with numerator {0, 1/d, ...} and
    denominator {1 - (w_i + d j)/(d h_i)} after cancellation at
    prod h_i^{h_i} (-lambda)^d and test |partial|/|H| = q^{(n-2d-1)/2}.
    The ``exact_*`` fields hold the identity that actually holds:
    partial = kappa * (H(alpha; beta | prod h_i^{h_i} lambda^d) + correction),
    where |kappa| = q^{(n-1)/2 - r} with r the number of surviving
    denominator parameters, and the correction collects the r values of s
    at which 1/g(x) = g(-x) chi_x(-1)/q breaks down (x = 0).
    """

    rep: tuple[int, ...]
    partial: complex
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    stated_t: int
    stated_h: complex
    stated_expected_ratio: float
    stated_ratio: float | None
    stated_ok: bool | None
    exact_t: int
    exact_h: complex
    kappa: complex
    correction: complex
    exact_ok: bool
    char_sum: complex | None  # sum_s conj(chi_s)(t) when the parameter lists cancel entirely
    xi: complex | None = None


def _field_prod_pow(spec: FieldSpec, base_pairs) -> int:
    out = 1
    for b, e in base_pairs:
        out = spec.mul(out, spec.power(spec.embed(b), e))
    return out


def class_hyp_check(family: DeformationFamily, spec: FieldSpec, h_threshold: float = 1e-6, rel_tol: float = 1e-5):
    """Per-class report comparing Koblitz partial sums with Katz H values."""
    d, h, n = family.d, family.h, family.n
    Q, q = spec.order, spec.q
    if any(x == 0 for x in h) or Q % (d * math.prod(h)):
        raise PreconditionError(f"need d*h_1*...*h_n | q-1 (d={d}, h={h}, q={q})")
    lam = field_lambda(spec, family.lam)
    if lam == 0:
        raise PreconditionError("lambda must be nonzero")
    g = gauss_table(spec)
    s = np.arange(Q)
    T = spec.mul(_field_prod_pow(spec, [(hi, hi) for hi in h]), spec.power(lam, d))
    stated_t = spec.mul(_field_prod_pow(spec, [(hi, hi) for hi in h]), spec.power(spec.neg(lam), d))
    lT = int(spec.log[T])
    expected = q ** ((n - 2 * d - 1) / 2)
    ws = build_wset(d, n, h)
    reports = []
    for rep in ws.representatives:
        partial = class_partial(family, spec, rep)
        numer = [(wi + d * j) * Q // (d * hi) % Q for wi, hi in zip(rep, h) for j in range(hi)]
        denom = [j * Q // d for j in range(d)]
        b_left, a_left = cancel_common(numer, denom)
        alpha = tuple(sorted((-a) % Q for a in a_left))
        beta = tuple(sorted((-b) % Q for b in b_left))

        # stated modulus relation, taken literally
        stated_h = hyp_fourier(spec, alpha, beta, stated_t)
        if abs(stated_h) > h_threshold:
            ratio = abs(partial) / abs(stated_h)
            stated_ok = abs(ratio - expected) <= rel_tol * expected
        else:
            ratio, stated_ok = None, None

        # exact identity
        K = 1 + 0j
        for j in range(1, d):
            K *= g[j * Q // d]
        for wi, hi in zip(rep, h):
            for j in range(1, hi):
                K /= g[j * Q // hi]
            K *= mult_char(spec, wi * Q // d, spec.embed(hi))
        r = len(a_left)
        sign = (-1) ** (sum(a_left) + sum(b_left))
        kappa = K * q ** (-r) * sign
        true_terms = np.ones(Q, dtype=complex)
        katz_terms = np.ones(Q, dtype=complex)
        for b in b_left:
            true_terms *= g[(s + b) % Q]
            katz_terms *= g[(s + b) % Q]
        for a in a_left:
            true_terms /= g[(s + a) % Q]
            katz_terms *= g[(-s - a) % Q] * np.where((s + a) % 2, -1.0, 1.0) / q
        chis = np.exp(2j * np.pi * ((s * lT) % Q) / Q)
        correction = complex(np.sum((true_terms - katz_terms) * chis) / Q / (q ** (-r) * sign))
        exact_h = hyp_fourier(spec, alpha, beta, T)
        predicted = kappa * (exact_h + correction)
        scale = max(1.0, abs(partial))
        exact_ok = abs(predicted - partial) <= 1e-9 * scale * Q and abs(
            abs(kappa) - q ** ((n - 1) / 2 - r)
        ) <= 1e-9 * q ** ((n - 1) / 2)
        char_sum = complex(exact_h * Q) if not alpha and not beta else None
        xi = None
        if ratio is not None and abs(partial) > h_threshold:
            xi = partial / (expected * stated_h)
        reports.append(
            ClassCheck(
                rep, partial, alpha, beta, stated_t, stated_h, expected, ratio, stated_ok,
                T, exact_h, kappa, correction, exact_ok, char_sum, xi,
            )
        )
    return reports


def fraction_index(spec: FieldSpec, x: Fraction) -> int:
    """Character index of a rational with denominator dividing q-1."""
    v = Fraction(x) * spec.order
    if v.denominator != 1:
        raise PreconditionError(f"{x} is not in (1/(q-1))Z")
    return int(v) % spec.order
