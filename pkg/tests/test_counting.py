import itertools
import math

import pytest

from ffhyper.counting import (
    DeformationFamily,
    brute_count,
    build_wset,
    class_partial,
    diagonal_count,
    koblitz_count,
    rational_singular_points,
    round_exact,
    class_hyp_check,
    weil_component,
)
from ffhyper.errors import BudgetError, PreconditionError, RoundingError
from ffhyper.ffield import make_field


def naive_count(family, spec):
    """Point count straight from the definition, one scalar at a time."""
    coef = spec.mul(spec.embed(family.d), spec.embed(family.lam) if spec.f == 1 else family.lam)
    total = 0
    for x in itertools.product(range(spec.q), repeat=family.n):
        first = next((v for v in x if v), None)
        if first != 1:
            continue
        s = 0
        for v in x:
            s = spec.add(s, spec.power(v, family.d))
        m = 1
        for v, h in zip(x, family.h):
            m = spec.mul(m, spec.power(v, h))
        total += spec.sub(s, spec.mul(coef, m)) == 0
    return total


@pytest.mark.parametrize(
    "p,f,family",
    [
        (7, 1, DeformationFamily.dwork(3, 2)),
        (13, 1, DeformationFamily.dwork(4, 2)),
        (5, 2, DeformationFamily.dwork(3, 7)),
        (3, 2, DeformationFamily(4, (1, 3, 0), 5)),
        (7, 1, DeformationFamily(5, (2, 3, 0, 0), 3)),
        (11, 1, DeformationFamily.zero_dim(5, 4)),
        (7, 1, DeformationFamily.dwork(3, 0)),
    ],
)
def test_brute_count_matches_naive_enumeration(p, f, family):
    spec = make_field(p, f)
    assert brute_count(family, spec) == naive_count(family, spec)


def test_brute_count_examples():
    f7 = make_field(7)
    assert brute_count(DeformationFamily.zero_dim(3, 0), f7) == 3
    assert brute_count(DeformationFamily.dwork(3, 2), f7) == 21
    assert brute_count(DeformationFamily.dwork(4, 2), make_field(13)) == 320
    assert brute_count(DeformationFamily.dwork(3, 0), f7) == diagonal_count(f7, 3, 3) == 9


def test_brute_count_budget():
    with pytest.raises(BudgetError):
        brute_count(DeformationFamily.dwork(4, 2), make_field(13), budget=1000)


def test_family_validation():
    with pytest.raises(PreconditionError):
        DeformationFamily(3, (1, 1))
    with pytest.raises(PreconditionError):
        DeformationFamily(4, (2, 2))
    with pytest.raises(PreconditionError):
        DeformationFamily(3, (4, -1))
    assert DeformationFamily.zero_dim(3).h == (1, 2)
    assert DeformationFamily.dwork(4).n == 4


def test_weil_component_examples():
    f7 = make_field(7)
    assert weil_component(f7, 3, 3, (0, 0, 0)) == 8
    assert weil_component(f7, 3, 3, (1, 2, 0)) == 0
    assert abs(abs(weil_component(f7, 3, 3, (1, 1, 1))) - math.sqrt(7)) < 1e-9
    with pytest.raises(PreconditionError):
        weil_component(f7, 4, 3, (0, 0, 0))
    with pytest.raises(PreconditionError):
        weil_component(f7, 3, 3, (1, 0, 0))


def test_diagonal_count_examples():
    assert diagonal_count(make_field(7), 3, 2) == 3
    assert diagonal_count(make_field(5), 2, 2) == 2


@pytest.mark.parametrize("p,f,d,n", [(7, 1, 3, 3), (13, 1, 3, 3), (13, 1, 4, 4), (5, 2, 3, 3), (5, 2, 2, 2), (13, 1, 6, 2), (7, 1, 2, 4)])
def test_diagonal_count_matches_brute(p, f, d, n):
    spec = make_field(p, f)
    h = (1,) * d if n == d else ((1, d - 1) if n == 2 else (1, 1) + (0,) * (n - 2))
    assert diagonal_count(spec, d, n) == brute_count(DeformationFamily(d, h, 0), spec)


def test_round_exact():
    assert round_exact(5.00001 + 0j) == 5
    with pytest.raises(RoundingError):
        round_exact(5.2 + 0j)
    with pytest.raises(RoundingError):
        round_exact(5 + 0.01j)


def test_wset_examples():
    ws = build_wset(3, 2, (1, 2))
    assert set(ws.members) == {(0, 0), (1, 2), (2, 1)}
    assert len(ws.classes) == 1

    ws = build_wset(3, 3, (1, 1, 1))
    assert len(ws.members) == 9
    assert ws.representatives == ((0, 0, 0), (0, 1, 2), (0, 2, 1))
    assert ws.class_of((1, 2, 0)) == 1 and ws.class_of((2, 1, 0)) == 2

    ws = build_wset(4, 4, (1, 1, 1, 1))
    assert len(ws.members) == 64
    assert len(ws.classes) == 16
    assert len(ws.types) == 3


@pytest.mark.parametrize("d,h", [(3, (1, 2)), (3, (1, 1, 1)), (4, (1, 1, 1, 1)), (5, (1, 4)), (5, (2, 3)), (4, (1, 3, 0))])
def test_wset_partition(d, h):
    ws = build_wset(d, len(h), h)
    flat = [w for cls in ws.classes for w in cls]
    assert sorted(flat) == sorted(ws.members)
    assert all(len(cls) == d for cls in ws.classes)
    assert all(rep == min(cls) for rep, cls in zip(ws.representatives, ws.classes))


@pytest.mark.parametrize(
    "p,f,family",
    [
        (7, 1, DeformationFamily.dwork(3, 3)),
        (7, 1, DeformationFamily.zero_dim(3, 2)),
        (13, 1, DeformationFamily.dwork(4, 2)),
        (5, 2, DeformationFamily.dwork(2, 7)),
        (13, 1, DeformationFamily(4, (2, 1, 1), 6)),
    ],
)
def test_koblitz_matches_brute(p, f, family):
    rep = koblitz_count(family, make_field(p, f))
    assert rep.n_brute == rep.n_koblitz_rounded
    assert abs(rep.n_koblitz - rep.n_koblitz_rounded) < 1e-4
    row = rep.row()
    assert row["match"] and row["q"] == p**f


def test_koblitz_rejects_zero_exponents():
    # with an absent variable the formula is off: q=13, h=(1,3,0), lambda=6 has 14 points
    family = DeformationFamily(4, (1, 3, 0), 6)
    assert brute_count(family, make_field(13)) == 14
    with pytest.raises(PreconditionError):
        koblitz_count(family, make_field(13))


def test_koblitz_at_zero_is_diagonal():
    rep = koblitz_count(DeformationFamily.dwork(3, 0), make_field(7))
    assert rep.n_koblitz_rounded == rep.n_diagonal == rep.n_brute


@pytest.mark.parametrize("p,family", [(7, DeformationFamily.dwork(3, 3)), (13, DeformationFamily.dwork(4, 5)), (13, DeformationFamily.zero_dim(3, 2))])
def test_class_partials_sum_and_are_representative_free(p, family):
    spec = make_field(p)
    ws = build_wset(family.d, family.n, family.h)
    for cls in ws.classes:
        base = class_partial(family, spec, cls[0])
        for w in cls[1:]:
            assert abs(class_partial(family, spec, w) - base) < 1e-9
    rep = koblitz_count(family, spec, brute=False)
    assert abs(sum(rep.class_partials.values()) - (rep.n_koblitz - rep.n_diagonal)) < 1e-8


@pytest.mark.parametrize("p,family", [(7, DeformationFamily.zero_dim(3, 0)), (13, DeformationFamily.zero_dim(3, 0)), (7, DeformationFamily.dwork(3, 0)), (19, DeformationFamily.zero_dim(3, 0))])
def test_decomposition_into_hypergeometric_values_is_exact(p, family):
    spec = make_field(p)
    for lam in range(1, p):
        for c in class_hyp_check(family.with_lambda(lam), spec):
            assert c.exact_ok
            assert len(c.alpha) == len(c.beta)


def test_dwork_cubic_degenerate_classes():
    spec = make_field(7)
    for lam in range(1, 7):
        checks = class_hyp_check(DeformationFamily.dwork(3, lam), spec)
        singular = pow(lam, 3, 7) == 1
        for c in checks[1:]:
            assert c.alpha == () and c.beta == ()
            assert abs(c.char_sum - (6 if singular else 0)) < 1e-9
            assert abs(c.partial - (7 if singular else 0)) < 1e-9


def test_class_check_preconditions():
    with pytest.raises(PreconditionError):
        class_hyp_check(DeformationFamily.zero_dim(3, 0), make_field(7))
    with pytest.raises(PreconditionError):
        class_hyp_check(DeformationFamily.dwork(4, 2), make_field(7))


@pytest.mark.parametrize("p,d", [(7, 3), (13, 3), (13, 4)])
def test_dwork_rational_singular_points_only_on_roots_of_unity(p, d):
    spec = make_field(p)
    for lam in range(p):
        sing = rational_singular_points(DeformationFamily.dwork(d, lam), spec)
        assert bool(sing) == (lam != 0 and pow(lam, d, p) == 1)
