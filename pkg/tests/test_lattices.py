"""Integral ideal lattices in Z[G] and their finite quotient rings.

The r = 1 case is fully hand-checkable in character coordinates
(a + b g -> (a+b, a-b)): J is the pullback of 2*Gamma, i.e. the span of
(1+g, 2g), and I = J n 2Z[G] turns out to be exactly 2Z[G] — so
Z[C_2]/I *is* F_2[C_2] and Z[C_2]/J is F_2.  The frozen r = 2 values
below were computed once from the same definitions and cross-checked
against the additive structure of the materialized rings.
"""

import random

import pytest

from relk2.errors import ScopeError, SizeBudgetError
from relk2.groupring import GroupSpec
from relk2.lattices import (
    build_lattices,
    quotient_additive,
    quotient_coeff_hnf,
    quotient_ring,
    quotient_size,
    relation_checks,
    relation_details,
)


def z_group_ring_mul(spec, a, b):
    # integer-coefficient group-ring product straight from the exponent
    # arithmetic; no reduction, so it is independent of the lattice code
    out = [0] * spec.order
    for i, ca in enumerate(a):
        if not ca:
            continue
        ei = spec.monomial_exps(i)
        for j, cb in enumerate(b):
            if not cb:
                continue
            ej = spec.monomial_exps(j)
            k = spec.monomial_index(
                tuple((x + y) % q for x, y, q in zip(ei, ej, spec.orders))
            )
            out[k] += ca * cb
    return out


@pytest.mark.parametrize("r", [1, 2, 3])
def test_character_matrix_is_orthogonal(r):
    lat = build_lattices(GroupSpec(2, (1,) * r))
    M, n = lat.char_matrix, lat.n
    for i in range(n):
        for j in range(n):
            dot = sum(M[i][k] * M[j][k] for k in range(n))
            assert dot == (n if i == j else 0)


def test_rank_one_lattices_by_hand():
    lat = build_lattices(GroupSpec(2, (1,)))
    assert lat.zg_rows == [[1, 1], [1, -1]]
    assert lat.zg_hnf == [[1, 1], [0, 2]]
    assert lat.j_rows == [[2, 0], [0, 2]]
    assert lat.i_rows == [[2, 2], [0, 4]]
    assert lat.index_in_gamma() == 2
    assert lat.gtilde_char == [2, 0]
    # in coefficient coordinates: I = 2Z[G], J = span(1+g, 2g)
    assert quotient_coeff_hnf(lat, "I") == [[2, 0], [0, 2]]
    assert quotient_coeff_hnf(lat, "J") == [[1, 1], [0, 2]]


def test_rank_two_frozen_values():
    lat = build_lattices(GroupSpec(2, (1, 1)))
    assert lat.index_in_gamma() == 16  # n^(n/2) for n = 4
    assert lat.gtilde_char == [4, 0, 0, 0]
    assert quotient_size(lat, "I") == 32
    assert quotient_size(lat, "J") == 16
    assert quotient_additive(lat, "I").invariant_factors == (2, 2, 2, 4)
    assert quotient_additive(lat, "J").invariant_factors == (2, 2, 4)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_ideal_lattice_relations(r):
    lat = build_lattices(GroupSpec(2, (1,) * r))
    details = relation_details(lat)
    assert details == {
        "j_is_i_plus_gtilde": True,
        "p_gtilde_in_i": True,
        "j_squared_in_i": True,
    }
    assert relation_checks(lat)


@pytest.mark.parametrize("which", ["I", "J"])
@pytest.mark.parametrize("r", [1, 2])
def test_quotient_ring_materialization(r, which):
    lat = build_lattices(GroupSpec(2, (1,) * r))
    ring = quotient_ring(lat, which)
    assert ring.size == quotient_size(lat, which)
    assert ring.additive == quotient_additive(lat, which)
    assert ring.verify_ring_axioms()
    assert all(ring.index_of(ring.reps[i]) == i for i in range(ring.size))


def test_multiplication_against_integer_group_ring():
    spec = GroupSpec(2, (1, 1))
    lat = build_lattices(spec)
    ring = quotient_ring(lat, "I")
    rng = random.Random(17)
    for _ in range(60):
        i = rng.randrange(ring.size)
        j = rng.randrange(ring.size)
        prod = z_group_ring_mul(spec, ring.reps[i], ring.reps[j])
        assert ring.mul_index(i, j) == ring.index_of(prod)
        s = [a + b for a, b in zip(ring.reps[i], ring.reps[j])]
        assert ring.add_index(i, j) == ring.index_of(s)
        assert ring.neg_index(i) == ring.index_of([-c for c in ring.reps[i]])


def test_rank_one_i_quotient_is_the_mod_two_group_ring():
    # I = 2Z[G] exactly, so Z[C_2]/I carries F_2[C_2] arithmetic
    lat = build_lattices(GroupSpec(2, (1,)))
    ring = quotient_ring(lat, "I")
    assert ring.size == 4
    assert ring.additive_exponent_divides(2)
    gt = ring.gtilde_index
    assert ring.index_of([1, 1]) == gt  # 1 + g == G~ mod I
    assert ring.mul_index(gt, gt) == 0  # (1+g)^2 = 0 in char 2
    assert ring.ideal_class_indices() == (0, gt)


def test_rank_one_j_quotient_is_f2():
    lat = build_lattices(GroupSpec(2, (1,)))
    ring = quotient_ring(lat, "J")
    assert ring.size == 2
    assert ring.additive.invariant_factors == (2,)
    one = ring.one_index
    assert ring.mul_index(one, one) == one


def test_rank_two_additive_exponent():
    ring = quotient_ring(build_lattices(GroupSpec(2, (1, 1))), "I")
    assert ring.additive_exponent_divides(4)
    assert not ring.additive_exponent_divides(2)
    # J/I inside Z[G]/I is the pair {0, G~}
    assert ring.ideal_class_indices() == (0, ring.gtilde_index)


def test_scope_and_size_limits():
    for bad in (GroupSpec(3, (1,)), GroupSpec(2, (2,)), GroupSpec(2, (1, 1, 2))):
        with pytest.raises(ScopeError):
            build_lattices(bad)
    with pytest.raises(ScopeError):
        build_lattices(GroupSpec(2, (1,) * 5))
    # rank 4 lattices build, but the 2^33-element ring does not materialize
    lat4 = build_lattices(GroupSpec(2, (1, 1, 1, 1)))
    assert quotient_size(lat4, "I") == 2 ** 33
    with pytest.raises(SizeBudgetError):
        quotient_ring(lat4, "I")
    # rank 3 materializes but is too big for n^2 operation tables
    ring3 = quotient_ring(build_lattices(GroupSpec(2, (1, 1, 1))), "I")
    assert ring3.size == 8192
    with pytest.raises(SizeBudgetError):
        ring3.tables()


def test_json_shapes():
    lat = build_lattices(GroupSpec(2, (1,)))
    assert sorted(lat.to_json().keys()) == [
        "exponents", "i_hnf", "index_in_gamma", "j_hnf", "p", "zg_hnf",
    ]
    ring = quotient_ring(lat, "I")
    assert sorted(ring.to_json().keys()) == [
        "additive", "gtilde", "hnf_diag", "size", "which",
    ]
