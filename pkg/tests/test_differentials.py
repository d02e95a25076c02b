"""Kahler differentials: derivation rules, freeness, conormal exactness."""

import random

import pytest

from relk2.differentials import (
    DiffForm,
    PresentedAlgebra,
    conormal_check,
    d,
    omega,
    omega_group_ring,
    omega_of_quotient,
)
from relk2.algebras import FiniteAlgebra, ideal_closure, quotient_algebra
from relk2.groupring import GroupSpec, RingElement, gtilde, x_element
from relk2.linalg import AbelianGroupStructure


def rand_element(spec, rng):
    return RingElement(
        spec, spec.p, tuple(rng.randrange(spec.p) for _ in range(spec.order))
    )


@pytest.mark.parametrize(
    "spec",
    [GroupSpec(2, (1, 1)), GroupSpec(3, (1,)), GroupSpec(2, (2,)), GroupSpec(5, (1,))],
)
def test_leibniz_rule(spec):
    rng = random.Random(41)
    for _ in range(30):
        a = rand_element(spec, rng)
        b = rand_element(spec, rng)
        lhs = d(a * b)
        rhs = d(a).scale(b.coeffs) + d(b).scale(a.coeffs)
        assert lhs == rhs


def test_d_is_additive_and_kills_constants():
    spec = GroupSpec(3, (1, 1))
    rng = random.Random(42)
    one = RingElement(spec, 3, (1,) + (0,) * 8)
    assert not d(one)
    assert not d(one + one)
    for _ in range(20):
        a = rand_element(spec, rng)
        b = rand_element(spec, rng)
        assert d(a + b) == d(a) + d(b)


def test_d_on_generators_and_powers():
    # d(g) = dg with unit coefficient; d(g^2) = 2 g dg
    spec = GroupSpec(3, (1,))
    g = x_element(spec, 3, 1) + RingElement(spec, 3, (1, 0, 0))  # g = 1 + x
    form = d(g)
    assert form.coeffs == ((1, 0, 0),)
    gsq = g * g
    expected = d(g).scale(g.coeffs) + d(g).scale(g.coeffs)
    assert d(gsq) == expected


def test_d_rejects_non_prime_coefficients():
    from relk2.errors import SpecMismatchError

    spec = GroupSpec(2, (1,))
    el = RingElement(spec, 4, (1, 2))
    with pytest.raises(SpecMismatchError):
        d(el)


@pytest.mark.parametrize(
    "spec",
    [
        GroupSpec(2, (1,)),
        GroupSpec(2, (1, 1)),
        GroupSpec(2, (2, 1)),
        GroupSpec(3, (1, 1, 1)),
        GroupSpec(5, (1,)),
    ],
)
def test_omega_group_ring_is_free_of_rank_r(spec):
    dm = omega_group_ring(spec)
    assert dm.is_free
    assert dm.rank == spec.rank
    assert dm.structure() == AbelianGroupStructure(
        (spec.p,) * (spec.rank * spec.order)
    )
    assert dm.labels == tuple(f"dg{i}" for i in range(1, spec.rank + 1))


def test_omega_contrast_x_cubed_minus_one():
    # over F_2, d(x^3 - 1) = x^2 dx and x^2 is a unit (x * x^2 = 1), so
    # Omega dies entirely; over F_3 the same relation has zero derivative
    # and Omega is free of rank 1 (this is F_3[C_3] in disguise)
    contrast = PresentedAlgebra(2, ["x"], [(3, 1)])
    dm = omega(contrast)
    assert not dm.is_free
    assert dm.rank is None
    assert dm.structure().is_trivial

    sibling = omega(PresentedAlgebra(3, ["x"], [(3, 1)]))
    assert sibling.is_free
    assert sibling.structure() == AbelianGroupStructure((3, 3, 3))


def test_presented_algebra_validation():
    with pytest.raises(ValueError):
        PresentedAlgebra(4, ["x"], [(2, 1)])
    with pytest.raises(ValueError):
        PresentedAlgebra(2, [], [])
    with pytest.raises(ValueError):
        PresentedAlgebra(2, ["x"], [(2, 3)])
    with pytest.raises(ValueError):
        PresentedAlgebra(2, ["x", "y"], [(2, 1)])


def test_conormal_exactness():
    assert conormal_check(PresentedAlgebra.group_ring(GroupSpec(2, (1, 1))))
    assert conormal_check(PresentedAlgebra.group_ring(GroupSpec(3, (1,))))
    assert conormal_check(PresentedAlgebra(2, ["x"], [(3, 1)]))
    # nilpotent variable: d(x^2) = 2x dx = 0 over F_2, free quotient
    assert conormal_check(PresentedAlgebra(2, ["x"], [(2, 0)]))
    # split relation set: treat one relation as defining S
    two = PresentedAlgebra(2, ["g1", "g2"], [(2, 1), (2, 1)])
    assert conormal_check(two, ideal_indices=[1])


def test_omega_of_quotient_by_gtilde():
    spec = GroupSpec(2, (1, 1))
    alg = FiniteAlgebra.from_group_ring(spec)
    gt = tuple(gtilde(spec, 2).coeffs)
    quot = quotient_algebra(alg, ideal_closure(alg, [gt]))
    quot_mod, dmap = omega_of_quotient(spec, quot, [gt])
    # d(G~) = (1 + g2) dg1 + (1 + g1) dg2 is one relation on a rank-2 free
    # module over the 3-dimensional quotient
    assert quot_mod.dim == 2 * quot.algebra.dim - 1
    # dmap factors through the quotient: shifting the lift by G~ changes
    # nothing
    rng = random.Random(43)
    for _ in range(20):
        v = [rng.randrange(2) for _ in range(4)]
        shifted = [(c + g) % 2 for c, g in zip(v, gt)]
        assert dmap(tuple(v)) == dmap(tuple(shifted))
    # and it is additive
    for _ in range(10):
        v = tuple(rng.randrange(2) for _ in range(4))
        w = tuple(rng.randrange(2) for _ in range(4))
        s = tuple((a + b) % 2 for a, b in zip(v, w))
        assert dmap(s) == tuple(
            (a + b) % 2 for a, b in zip(dmap(v), dmap(w))
        )


def test_diff_form_api():
    palg = PresentedAlgebra.group_ring(GroupSpec(2, (1, 1)))
    alg = palg.finite_algebra()
    form = DiffForm(palg, [alg.one(), alg.zero()])
    assert bool(form)
    assert not DiffForm(palg, [alg.zero(), alg.zero()])
    assert form.serialize() == [("dg1", "1"), ("dg2", "0")]
    with pytest.raises(ValueError):
        DiffForm(palg, [alg.one()])
    doubled = form + form
    assert not doubled  # characteristic 2
