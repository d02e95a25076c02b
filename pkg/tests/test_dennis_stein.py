"""Dennis-Stein symbol presentations.

The Z/m tables at the top are the external anchor: D(Z/4, (2)) = Z/2 on
<2,2> and the trivial odd/deeper cases are classical values computed by
hand from the three symbol relations, independent of everything in the
package except the table enumerator.
"""

import random

import pytest

from relk2.algebras import (
    FiniteAlgebra,
    ideal_closure,
    module_over_quotient,
    quotient_algebra,
    tensor_over_algebra,
)
from relk2.dennis_stein import (
    RhoMap,
    SquareZeroContext,
    SymbolExpr,
    TablePresentation,
    build_presentation,
    check_square_zero,
    is_unit,
    parse_algebra_element,
    psi_triviality_check,
    scholium_expand,
)
from relk2.differentials import omega_of_quotient
from relk2.errors import HypothesisError, SizeBudgetError
from relk2.groupring import (
    GroupSpec,
    RingElement,
    augmentation,
    gtilde,
    x_element,
)
from relk2.k2 import default_factor_blocks


def zmod_tables(n):
    mul = [(a * b) % n for a in range(n) for b in range(n)]
    add = [(a + b) % n for a in range(n) for b in range(n)]
    neg = [(-a) % n for a in range(n)]
    return mul, add, neg


def table_presentation(n, gen, budget_pairs=None):
    mul, add, neg = zmod_tables(n)
    ideal = sorted({(gen * k) % n for k in range(n)})
    return TablePresentation(n, mul, add, neg, ideal, budget_pairs=budget_pairs)


def make_context(spec, factors=None):
    alg = FiniteAlgebra.from_group_ring(spec)
    gt = tuple(gtilde(spec, spec.p).coeffs)
    ideal = ideal_closure(alg, [gt])
    return alg, gt, ideal, SquareZeroContext(alg, ideal, factors=factors)


# --- table-presentation anchors -------------------------------------------


def test_z4_relative_symbols():
    tp = table_presentation(4, 2)
    assert tp.structure.invariant_factors == (2,)
    # the class of <2,2> generates; <1,2> dies; 2<2,2> = 0
    assert tp.symbol_coords(2, 2) == (1,)
    assert tp.symbol_coords(3, 2) == (1,)
    assert tp.symbol_coords(1, 2) == tp.zero
    assert tp.symbol_coords(2, 2, sign=2) == tp.zero
    # flip: <2,1> = -<1,2> = 0
    assert tp.symbol_coords(2, 1) == tp.zero
    labels = [label for _, label in tp.surviving_generators()]
    assert labels == ["<2|2>", "<3|2>"]


@pytest.mark.parametrize("n,gen", [(9, 3), (25, 5), (8, 4), (16, 4)])
def test_trivial_zmod_cases(n, gen):
    assert table_presentation(n, gen).structure.is_trivial


def test_table_presentation_budget():
    with pytest.raises(SizeBudgetError):
        table_presentation(25, 5, budget_pairs=10)


def test_symbol_needs_ideal_component():
    tp = table_presentation(4, 2)
    with pytest.raises(ValueError):
        tp.symbol_coords(1, 3)


# --- contexts --------------------------------------------------------------


def test_check_square_zero():
    spec = GroupSpec(2, (1, 1))
    alg, gt, ideal, _ = make_context(spec)
    assert check_square_zero(alg, ideal)
    x1 = tuple(x_element(spec, 2, 1).coeffs)
    x2 = tuple(x_element(spec, 2, 2).coeffs)
    aug = ideal_closure(alg, [x1, x2])
    assert not check_square_zero(alg, aug)
    with pytest.raises(HypothesisError):
        SquareZeroContext(alg, aug)


def test_factor_validation():
    spec = GroupSpec(2, (1, 1))
    alg, gt, ideal, _ = make_context(spec)
    x1 = tuple(x_element(spec, 2, 1).coeffs)
    x2 = tuple(x_element(spec, 2, 2).coeffs)
    ctx = SquareZeroContext(alg, ideal, factors=[x1, x2])
    assert ctx.r == 2
    assert tuple(ctx.factor_product()) == gt
    # a unit cannot annihilate the ideal
    with pytest.raises(HypothesisError):
        SquareZeroContext(alg, ideal, factors=[alg.one(), x2])
    with pytest.raises(HypothesisError):
        SquareZeroContext(alg, ideal).factor_product()


# --- presentations: frozen shapes and full/reduced agreement ---------------


def test_c2xc2_full_presentation_frozen():
    spec = GroupSpec(2, (1, 1))
    *_, ctx = make_context(spec)
    pres = build_presentation(ctx, mode="full")
    assert pres.mode == "full"
    assert pres.ngens == 32
    assert len(pres.raw_rows) == 528
    assert pres.structure.invariant_factors == (2, 2)


def test_c2xc2_reduced_matches_full():
    spec = GroupSpec(2, (1, 1))
    *_, ctx = make_context(spec, factors=default_factor_blocks(spec))
    pres = build_presentation(ctx, mode="reduced")
    assert pres.ngens == 4
    assert len(pres.raw_rows) == 22
    assert pres.structure.invariant_factors == (2, 2)


@pytest.mark.parametrize(
    "spec,want",
    [
        (GroupSpec(2, (1,)), ()),
        (GroupSpec(3, (1,)), (3,)),
        (GroupSpec(2, (2,)), (2,)),
        (GroupSpec(2, (1, 2)), (2, 2)),
    ],
)
def test_full_vs_reduced_structures(spec, want):
    *_, ctx_full = make_context(spec)
    full = build_presentation(ctx_full, mode="full")
    assert full.structure.invariant_factors == want
    if spec.order > 2:
        *_, ctx_red = make_context(spec, factors=default_factor_blocks(spec))
        reduced = build_presentation(ctx_red, mode="reduced")
        assert reduced.structure.invariant_factors == want


def test_build_presentation_budget():
    *_, ctx = make_context(GroupSpec(3, (1,)))
    with pytest.raises(SizeBudgetError):
        build_presentation(ctx, mode="full", budget_pairs=5)


# --- relation identities through the presentation lattice ------------------


def add_coords(pres, *coord_tuples):
    mods = pres.structure.invariant_factors
    out = [0] * len(mods)
    for c in coord_tuples:
        for i, (v, m) in enumerate(zip(c, mods)):
            out[i] = (out[i] + v) % m
    return tuple(out)


CASES = [GroupSpec(3, (1,)), GroupSpec(2, (1, 1))]


@pytest.mark.parametrize("spec", CASES)
def test_ds1_antisymmetry_inside_ideal(spec):
    alg, gt, ideal, ctx = make_context(spec)
    pres = build_presentation(ctx, mode="full")
    p = spec.p
    for s in range(1, p):
        u = alg.scale(s, gt)
        for t in range(1, p):
            v = alg.scale(t, gt)
            assert pres.symbol_coords(u, v) == pres.symbol_coords(v, u, sign=-1)


@pytest.mark.parametrize("spec", CASES)
def test_ds2_with_correction_term(spec):
    # <u, b><u, c> = <u, b + c - ubc> for u in the ideal: the correction
    # term is live here because only one slot sits in I
    alg, gt, ideal, ctx = make_context(spec)
    pres = build_presentation(ctx, mode="full")
    rng = random.Random(91)
    p, dim = spec.p, alg.dim
    for _ in range(40):
        u = alg.scale(rng.randrange(1, p), gt)
        b = tuple(rng.randrange(p) for _ in range(dim))
        c = tuple(rng.randrange(p) for _ in range(dim))
        rhs_el = alg.sub(alg.add(b, c), alg.mul(alg.mul(u, b), c))
        lhs = add_coords(pres, pres.symbol_coords(u, b), pres.symbol_coords(u, c))
        assert lhs == pres.symbol_coords(u, rhs_el)


@pytest.mark.parametrize("spec", CASES)
def test_ds2_additivity_in_ideal_slot(spec):
    # both arguments in I: I^2 = 0 kills the correction term
    alg, gt, ideal, ctx = make_context(spec)
    pres = build_presentation(ctx, mode="full")
    rng = random.Random(92)
    p, dim = spec.p, alg.dim
    for _ in range(40):
        a = tuple(rng.randrange(p) for _ in range(dim))
        y = alg.scale(rng.randrange(1, p), gt)
        z = alg.scale(rng.randrange(1, p), gt)
        lhs = add_coords(pres, pres.symbol_coords(a, y), pres.symbol_coords(a, z))
        assert lhs == pres.symbol_coords(a, alg.add(y, z))


@pytest.mark.parametrize("spec", CASES)
def test_ds3_product_splitting(spec):
    # <u, bc> = <ub, c><uc, b> with u in I, b, c arbitrary
    alg, gt, ideal, ctx = make_context(spec)
    pres = build_presentation(ctx, mode="full")
    rng = random.Random(93)
    p, dim = spec.p, alg.dim
    for _ in range(40):
        u = alg.scale(rng.randrange(1, p), gt)
        b = tuple(rng.randrange(p) for _ in range(dim))
        c = tuple(rng.randrange(p) for _ in range(dim))
        lhs = pres.symbol_coords(u, alg.mul(b, c))
        rhs = add_coords(
            pres,
            pres.symbol_coords(alg.mul(u, b), c),
            pres.symbol_coords(alg.mul(u, c), b),
        )
        assert lhs == rhs


# --- expressions ------------------------------------------------------------


def test_symbol_expr_round_trip():
    spec = GroupSpec(3, (1,))
    alg, gt, ideal, ctx = make_context(spec)
    x1 = tuple(x_element(spec, 3, 1).coeffs)
    e = SymbolExpr.symbol(ctx, x1, gt)
    assert e.text() == "<2 + g1|1 + g1 + g1^2>"
    assert SymbolExpr.parse(ctx, e.text()).factors == e.factors
    inv = e.inverse()
    assert inv.text().endswith("^-1")
    assert SymbolExpr.parse(ctx, inv.text()).factors == inv.factors
    pres = build_presentation(ctx, mode="full")
    assert add_coords(pres, pres.normalize(e), pres.normalize(inv)) == pres.zero


def test_symbol_expr_requires_ideal_component():
    spec = GroupSpec(3, (1,))
    alg, gt, ideal, ctx = make_context(spec)
    x1 = tuple(x_element(spec, 3, 1).coeffs)
    with pytest.raises(ValueError):
        SymbolExpr.symbol(ctx, x1, x1)


def test_scholium_random_products_normalize_to_one():
    spec = GroupSpec(2, (1, 1))
    alg, gt, ideal, ctx = make_context(spec)
    pres = build_presentation(ctx, mode="full")
    rng = random.Random(94)
    for _ in range(30):
        length = rng.randint(2, 4)
        in_ideal = rng.sample(range(length), 2)
        alphas = []
        for i in range(length):
            if i in in_ideal:
                alphas.append(gt)
            else:
                alphas.append(tuple(rng.randrange(2) for _ in range(4)))
        expr = scholium_expand(ctx, alphas)
        assert pres.normalize(expr) == pres.zero


def test_scholium_rejects_non_unit_complement():
    spec = GroupSpec(3, (1,))
    *_, ctx = make_context(spec)
    alg = ctx.algebra
    with pytest.raises(ValueError):
        scholium_expand(ctx, [alg.one(), alg.one()])


def test_psi_triviality():
    for spec in (GroupSpec(2, (1, 1)), GroupSpec(2, (1, 2))):
        *_, ctx = make_context(spec, factors=default_factor_blocks(spec))
        assert psi_triviality_check(ctx)


# --- rho ---------------------------------------------------------------------


def rho_setup(spec):
    alg, gt, ideal, ctx = make_context(spec)
    quot = quotient_algebra(alg, ideal)
    omega_j, dmap = omega_of_quotient(spec, quot, [gt])
    jmod = module_over_quotient(quot, ideal)
    tens = tensor_over_algebra(jmod, omega_j)
    return alg, gt, ideal, ctx, dmap, tens, RhoMap(ctx, ideal.coords, dmap, tens)


def test_rho_defining_formula():
    spec = GroupSpec(3, (1,))
    alg, gt, ideal, ctx, dmap, tens, rho = rho_setup(spec)
    x1 = tuple(x_element(spec, 3, 1).coeffs)
    # first component in the ideal: u (x) db
    assert rho.factor(gt, x1) == tens.pure(ideal.coords(gt), dmap(x1))
    # second component in the ideal: -b (x) da
    assert rho.factor(x1, gt) == tens.pure(
        ideal.coords(alg.neg(gt)), dmap(x1)
    )
    e = SymbolExpr.symbol(ctx, gt, x1)
    assert rho.expr(e) == rho.factor(gt, x1)


def test_rho_vanishes_on_relations():
    spec = GroupSpec(3, (1,))
    *setup, rho = rho_setup(spec)
    ctx = setup[3]
    pres = build_presentation(ctx, mode="full")
    assert rho.vanishes_on_rows(pres)


# --- element helpers ---------------------------------------------------------


@pytest.mark.parametrize("spec", [GroupSpec(2, (1, 1)), GroupSpec(3, (1,))])
def test_is_unit_matches_augmentation(spec):
    # F_p[G] is local for a p-group: units are exactly the elements with
    # nonzero augmentation
    alg = FiniteAlgebra.from_group_ring(spec)
    for v in alg.elements():
        el = RingElement(spec, spec.p, tuple(v))
        assert is_unit(alg, tuple(v)) == (augmentation(el) != 0)


def test_parse_algebra_element_round_trip():
    spec = GroupSpec(2, (1, 2))
    alg = FiniteAlgebra.from_group_ring(spec)
    rng = random.Random(95)
    for _ in range(25):
        v = tuple(rng.randrange(2) for _ in range(alg.dim))
        assert parse_algebra_element(alg, alg.element_text(v)) == v
    with pytest.raises(ValueError):
        parse_algebra_element(alg, "1 + h3")
