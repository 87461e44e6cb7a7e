"""Multiplicative/additive characters, Gauss sums and Jacobi sums over F_q.

A multiplicative character is named by an integer index ``a`` mod q-1,
standing for s = a/(q-1); chi_a sends the stored primitive root to
exp(2 pi i a/(q-1)) and 0 to 0.  The additive character is
psi(x) = exp(2 pi i Tr(x)/p).  Values are complex doubles.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .errors import PreconditionError
from .ffield import FieldSpec, to_code

TWO_PI_I = 2j * np.pi


def char_index(spec: FieldSpec, s) -> int:
    """Index a = s*(q-1) mod q-1 of a rational s in (1/(q-1))Z/Z."""
    s = Fraction(s)
    a = s * spec.order
    if a.denominator != 1:
        raise PreconditionError(f"{s} is not in (1/{spec.order})Z")
    return int(a) % spec.order


def mult_char(spec: FieldSpec, a: int, x) -> complex:
    c = to_code(spec, x)
    if c == 0:
        return 0j
    Q = spec.order
    return complex(np.exp(TWO_PI_I * ((a % Q) * int(spec.log[c]) % Q) / Q))


def add_char(spec: FieldSpec, x) -> complex:
    return complex(psi_table(spec)[to_code(spec, x)])


def psi_table(spec: FieldSpec) -> np.ndarray:
    """psi evaluated at every code."""
    tab = spec._memo.get("psi")
    if tab is None:
        tab = np.exp(TWO_PI_I * spec.trace / spec.p)
        spec._memo["psi"] = tab
    return tab


def char_table(spec: FieldSpec, a: int) -> np.ndarray:
    """chi_a evaluated at every code (0 at code 0)."""
    Q = spec.order
    logs = spec.log
    vals = np.exp(TWO_PI_I * ((a % Q) * np.where(logs < 0, 0, logs) % Q) / Q)
    vals[0] = 0
    return vals


def gauss_sum_direct(spec: FieldSpec, a: int) -> complex:
    """g(a/(q-1)) by summing chi(x) psi(x) over the field."""
    return complex(np.sum(char_table(spec, a) * psi_table(spec)))


def gauss_table(spec: FieldSpec) -> np.ndarray:
    """All q-1 Gauss sums, memoized on the field.

    Indexing F_q^* by discrete log turns the Gauss sums into a discrete
    Fourier transform of l -> psi(g^l), which numpy evaluates in O(q log q).
    """
    tab = spec._memo.get("gauss")
    if tab is None:
        Q = spec.order
        v = psi_table(spec)[spec.exp]
        tab = np.fft.ifft(v) * Q
        tab.setflags(write=False)
        spec._memo["gauss"] = tab
    return tab


def gauss_sum(spec: FieldSpec, a: int) -> complex:
    return complex(gauss_table(spec)[a % spec.order])


class JacobiSum(NamedTuple):
    value: complex
    form: str  # "ratio" or "direct"


def jacobi_sum_direct(spec: FieldSpec, indices: Sequence[int]) -> complex:
    """Sum of prod chi_{a_i}(x_i) over x_1 + ... + x_r = 1; J(a) = 1 for r = 1."""
    r = len(indices)
    if r == 0:
        raise PreconditionError("Jacobi sum needs at least one character")
    if r == 1:
        return 1 + 0j
    q = spec.q
    tables = [char_table(spec, a) for a in indices]
    grids = np.indices((q,) * (r - 1)).reshape(r - 1, -1)
    total = np.ones(grids.shape[1], dtype=np.int64)
    vals = np.ones(grids.shape[1], dtype=complex)
    for i in range(r - 1):
        vals *= tables[i][grids[i]]
        total = spec.add_arr(total, spec.neg_arr(grids[i]))
    vals *= tables[r - 1][total]
    return complex(np.sum(vals))


def jacobi_sum_ratio(spec: FieldSpec, indices: Sequence[int]) -> complex:
    """g(s_1)...g(s_r)/g(s_1+...+s_r) with g(0) = -1."""
    g = gauss_table(spec)
    Q = spec.order
    num = 1 + 0j
    for a in indices:
        num *= g[a % Q]
    return complex(num / g[sum(indices) % Q])


def jacobi_sum(spec: FieldSpec, indices: Sequence[int]) -> JacobiSum:
    """Jacobi sum via Gauss sums when sum(s_i) is not an integer, else directly.

    The returned ``form`` flags which route was taken.
    """
    if len(indices) == 1:
        return JacobiSum(1 + 0j, "direct")
    if sum(indices) % spec.order != 0:
        return JacobiSum(jacobi_sum_ratio(spec, indices), "ratio")
    return JacobiSum(jacobi_sum_direct(spec, indices), "direct")


def hasse_davenport_product(spec: FieldSpec, d: int, a: int) -> tuple[complex, complex]:
    """Both sides of prod_j g(s + j/d) = chi_{-ds}(d) g(ds) prod_{j>0} g(j/d)."""
    Q = spec.order
    if d <= 0 or Q % d:
        raise PreconditionError(f"d={d} does not divide q-1={Q}")
    g = gauss_table(spec)
    step = Q // d
    lhs = 1 + 0j
    for j in range(d):
        lhs *= g[(a + j * step) % Q]
    rhs = mult_char(spec, -d * a, spec.embed(d)) * g[(d * a) % Q]
    for j in range(1, d):
        rhs *= g[j * step]
    return complex(lhs), complex(rhs)


def reflection_pair(spec: FieldSpec, a: int) -> tuple[complex, complex]:
    """(g(s) g(-s), q chi_s(-1)) for s != 0."""
    g = gauss_table(spec)
    Q = spec.order
    return complex(g[a % Q] * g[-a % Q]), spec.q * mult_char(spec, a, spec.neg(1))
