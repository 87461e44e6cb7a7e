"""Katz's finite-field hypergeometric function H(alpha; beta | t).

Parameters are character indices mod q-1 (see :mod:`ffhyper.charsums`).
``hyp_direct`` enumerates the torus V_t; ``hyp_fourier`` sums Gauss-sum
products over all q-1 characters.  The two are independent routes to the
same number and are cross-checked in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .charsums import TWO_PI_I, gauss_table, psi_table
from .errors import BudgetError, PreconditionError
from .ffield import FieldSpec, to_code

DIRECT_BUDGET = 30**4


@dataclass(frozen=True)
class HypIndexParams:
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    t: int  # code of a nonzero field element

    @classmethod
    def make(cls, spec: FieldSpec, alpha: Sequence[int], beta: Sequence[int], t) -> "HypIndexParams":
        Q = spec.order
        code = to_code(spec, t)
        if code == 0:
            raise PreconditionError("H(alpha; beta | t) needs t != 0")
        return cls(tuple(a % Q for a in alpha), tuple(b % Q for b in beta), code)


def _params(spec, params, beta, t) -> HypIndexParams:
    if isinstance(params, HypIndexParams):
        return params
    return HypIndexParams.make(spec, params, beta, t)


def hyp_direct(
    spec: FieldSpec, params, beta=None, t=None, budget: int = DIRECT_BUDGET, y_sign: int = -1
) -> complex:
    """Sum over x_1...x_n = t y_1...y_m of psi(sum x - sum y) chi_alpha(x) conj(chi_beta)(y).

    The first n+m-1 coordinates range over (F_q^*) and the last one is
    solved from the torus equation, so every point of V_t is visited once.
    ``y_sign=+1`` evaluates the variant with psi(sum x + sum y), which is the
    sum whose Mellin transform is :func:`mellin_sum`.
    """
    hp = _params(spec, params, beta, t)
    n, m = len(hp.alpha), len(hp.beta)
    Q = spec.order
    if n + m == 0:
        return 1 + 0j if hp.t == 1 else 0j
    free = n + m - 1
    if Q**free > budget:
        raise BudgetError(f"V_t has {Q**free} points, budget {budget}")
    logs = np.indices((Q,) * free, dtype=np.int64).reshape(free, -1) if free else np.zeros((0, 1), dtype=np.int64)
    size = logs.shape[1]
    lt = int(spec.log[hp.t])
    # logs of the n x's followed by the m y's; the last coordinate is solved for
    if n:
        xs = [logs[i] for i in range(n - 1)]
        ys = [logs[n - 1 + j] for j in range(m)]
        last = (lt + sum(ys, np.zeros(size, np.int64)) - sum(xs, np.zeros(size, np.int64))) % Q
        xs.append(last)
    else:
        xs = []
        ys = [logs[j] for j in range(m - 1)]
        ys.append((-lt - sum(ys, np.zeros(size, np.int64))) % Q)
    total = np.zeros(size, dtype=np.int64)
    phase = np.zeros(size, dtype=np.int64)
    for a, lx in zip(hp.alpha, xs):
        total = spec.add_arr(total, spec.exp[lx])
        phase = (phase + a * lx) % Q
    for b, ly in zip(hp.beta, ys):
        y = spec.exp[ly]
        total = spec.add_arr(total, spec.neg_arr(y) if y_sign < 0 else y)
        phase = (phase - b * ly) % Q
    vals = psi_table(spec)[total] * np.exp(TWO_PI_I * phase / Q)
    return complex(np.sum(vals))


def mellin_sum(spec: FieldSpec, params, beta=None, t=None) -> complex:
    """(1/(q-1)) sum_s prod g(s+alpha_i) prod g(-s-beta_j) conj(chi_s)(t).

    All Gauss sums here are taken against psi itself.  This is the Mellin
    inversion of ``hyp_direct(..., y_sign=+1)``; it differs from H by the
    sign chi_{-s-beta_j}(-1) per denominator parameter.
    """
    return _fourier(spec, _params(spec, params, beta, t), signed=False)


def hyp_fourier(spec: FieldSpec, params, beta=None, t=None) -> complex:
    """H(alpha; beta | t) from its Gauss-sum expansion.

    The y-coordinates enter H through psi(-y), so their Gauss sums are
    against conj(psi): g_conj(c) = chi_c(-1) g(c).  Hence

        H = (1/(q-1)) sum_s prod g(s+alpha_i) prod chi_{s+beta_j}(-1) g(-s-beta_j) conj(chi_s)(t).
    """
    return _fourier(spec, _params(spec, params, beta, t), signed=True)


def _fourier(spec: FieldSpec, hp: HypIndexParams, signed: bool) -> complex:
    Q = spec.order
    g = gauss_table(spec)
    s = np.arange(Q)
    terms = np.ones(Q, dtype=complex)
    for a in hp.alpha:
        terms *= g[(s + a) % Q]
    for b in hp.beta:
        terms *= g[(-s - b) % Q]
        if signed:
            # chi_c(-1) = (-1)^c because -1 = g^{(q-1)/2}
            terms *= np.where((s + b) % 2, -1.0, 1.0)
    lt = int(spec.log[hp.t])
    terms *= np.exp(-TWO_PI_I * (s * lt % Q) / Q)
    return complex(np.sum(terms) / Q)


def cancel_common(alpha: Sequence[int], beta: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Remove index pairs shared by alpha and beta (as multisets)."""
    beta_left = list(beta)
    alpha_left = []
    for a in alpha:
        if a in beta_left:
            beta_left.remove(a)
        else:
            alpha_left.append(a)
    return tuple(alpha_left), tuple(beta_left)
