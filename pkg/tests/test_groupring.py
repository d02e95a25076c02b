"""Group-ring arithmetic for F_p[G], G finite abelian p-group."""

import itertools
import random

import pytest

from relk2.groupring import (
    GroupSpec,
    RingElement,
    augmentation,
    gtilde,
    gtilde_factorization_check,
    parse_element,
    x_element,
)


def naive_mul(spec, m, a, b):
    # exponentwise product, no shared tables: c[g+h mod q] += a[g] * b[h]
    orders = spec.orders
    out = [0] * spec.order
    for i, ai in enumerate(a):
        if not ai:
            continue
        ei = spec.monomial_exps(i)
        for j, bj in enumerate(b):
            if not bj:
                continue
            ej = spec.monomial_exps(j)
            k = spec.monomial_index(
                [(x + y) % q for x, y, q in zip(ei, ej, orders)]
            )
            out[k] += ai * bj
    return tuple(c % m for c in out)


@pytest.mark.parametrize(
    "spec", [GroupSpec(2, (1, 1)), GroupSpec(3, (1,)), GroupSpec(2, (2, 1)), GroupSpec(5, (1,))]
)
def test_ring_element_mul_matches_naive(spec):
    rng = random.Random(spec.order)
    m = spec.p
    for _ in range(30):
        a = tuple(rng.randrange(m) for _ in range(spec.order))
        b = tuple(rng.randrange(m) for _ in range(spec.order))
        got = (RingElement(spec, m, a) * RingElement(spec, m, b)).coeffs
        assert tuple(got) == naive_mul(spec, m, a, b)


def test_monomial_indexing_round_trip():
    spec = GroupSpec(2, (2, 1, 1))
    for idx in range(spec.order):
        exps = spec.monomial_exps(idx)
        assert spec.monomial_index(exps) == idx
    # negative exponents wrap
    assert spec.monomial_index((-1, 0, 0)) == spec.monomial_index((3, 0, 0))


def test_monomial_text():
    spec = GroupSpec(2, (2, 1))
    assert spec.monomial_text(0) == "1"
    assert spec.monomial_text(spec.monomial_index((2, 1))) == "g1^2*g2"


def test_gtilde_is_the_group_sum():
    spec = GroupSpec(3, (1, 1))
    assert gtilde(spec, 3).coeffs == (1,) * 9


def test_x_element_definition():
    spec = GroupSpec(5, (1,))
    x = x_element(spec, 5, 1)
    # g - 1: constant coefficient -1 mod 5, generator coefficient 1
    assert x.coeffs == (4, 1, 0, 0, 0)


def test_gtilde_factorization_c2xc2_by_hand():
    # (1+g1)(1+g2) = 1 + g1 + g2 + g1 g2 over F_2: every group element once
    spec = GroupSpec(2, (1, 1))
    x1, x2 = x_element(spec, 2, 1), x_element(spec, 2, 2)
    assert (x1 * x2).coeffs == (1, 1, 1, 1)
    assert gtilde_factorization_check(spec)


def test_gtilde_factorization_c4_by_hand():
    # (g-1)^3 = g^3 - 3g^2 + 3g - 1 = g^3 + g^2 + g + 1 over F_2
    spec = GroupSpec(2, (2,))
    x = x_element(spec, 2, 1)
    assert (x ** 3).coeffs == (1, 1, 1, 1)
    assert gtilde_factorization_check(spec)


def test_gtilde_annihilates_augmentation_ideal():
    # x_i * G~ = (g_i - 1) G~ = G~ - G~ = 0: the square-zero mechanism
    for spec in (GroupSpec(2, (1, 2)), GroupSpec(3, (1, 1)), GroupSpec(5, (1,))):
        gt = gtilde(spec, spec.p)
        for i in range(1, spec.rank + 1):
            prod = x_element(spec, spec.p, i) * gt
            assert not any(prod.coeffs)
        assert not any((gt * gt).coeffs) or spec.order % spec.p


def test_gtilde_squares_to_order_times_itself():
    # G~ * G~ = |G| * G~, which dies mod p exactly because p | |G|
    spec = GroupSpec(2, (1, 1))
    gt = gtilde(spec, 8)  # work mod 8 to see the factor 4
    assert (gt * gt).coeffs == tuple(4 for _ in range(4))


def test_augmentation_is_a_ring_map():
    spec = GroupSpec(3, (1,))
    rng = random.Random(0)
    for _ in range(20):
        a = RingElement(spec, 3, tuple(rng.randrange(3) for _ in range(3)))
        b = RingElement(spec, 3, tuple(rng.randrange(3) for _ in range(3)))
        assert augmentation(a * b) == (augmentation(a) * augmentation(b)) % 3
        assert augmentation(a + b) == (augmentation(a) + augmentation(b)) % 3


def test_parse_element_round_trip():
    spec = GroupSpec(2, (2, 1))
    el = parse_element(spec, 2, "1 + g1^2*g2 + g2")
    assert el.coeffs[0] == 1
    assert parse_element(spec, 2, el.text()).coeffs == el.coeffs


def test_parse_element_rejects_garbage():
    spec = GroupSpec(2, (1,))
    with pytest.raises(ValueError):
        parse_element(spec, 2, "1 + h3")


def test_group_spec_validation():
    with pytest.raises(ValueError):
        GroupSpec(4, (1,))
    with pytest.raises(ValueError):
        GroupSpec(2, ())
    with pytest.raises(ValueError):
        GroupSpec(2, (0,))


def test_group_spec_derived_quantities():
    spec = GroupSpec(2, (1, 2))
    assert spec.orders == (2, 4)
    assert spec.order == 8
    assert spec.rank == 2


def test_pow_matches_repeated_mul():
    spec = GroupSpec(2, (2,))
    x = x_element(spec, 2, 1)
    acc = RingElement(spec, 2, (1, 0, 0, 0))
    for k in range(1, 6):
        acc = acc * x
        assert (x ** k).coeffs == acc.coeffs


def test_sweep_factorization_all_specs():
    # the identity prod x_j^(q_j - 1) = G~ across the whole supported sweep
    for p in (2, 3, 5):
        for r in (1, 2, 3):
            for exps in itertools.combinations_with_replacement(range(1, 7), r):
                if p ** sum(exps) > 125:
                    continue
                assert gtilde_factorization_check(GroupSpec(p, exps))
