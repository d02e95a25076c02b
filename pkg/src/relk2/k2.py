"""Relative K2 of group rings: structure reports and instance checks.

The headline computation is K2(F_p[G], (G~)) for a finite abelian p-group
G with |G| > 2.  Two independent routes are wired here:

  tensor -- (G~) (x)_A Omega_A over A = F_p[G], with the claimed basis
            {G~ (x) dg_i} certified by the rho symbol formula;
  oracle -- the Dennis-Stein presentation D(A, (G~)), full or reduced mode.

``route="both"`` cross-checks them.  theorem1_check replays the general
isomorphism K2(A/I, J/I) ~ J/I (x)_{A/I} Omega_{A/I} on a given instance,
including the intermediate (x)_{A/J} step, the psi-image collapse, and the
delta-star vanishing that glues the two tensor descriptions together.
excision_check compares against D(Z[G]/I, J/I) built from honest ideal
lattices in the integral group ring (p = 2, elementary abelian scope).
"""

import time
from dataclasses import dataclass

from . import dennis_stein as ds
from . import groupring, lattices
from .algebras import (
    FiniteAlgebra,
    RealizedModule,
    bilinear_map_trivial,
    ideal_closure,
    module_over_quotient,
    quotient_algebra,
    tensor_over_algebra,
)
from .differentials import d_coeffs, group_ring_presentation, omega_of_quotient
from .errors import HypothesisError, SizeBudgetError
from .linalg import rank_mod


@dataclass
class K2Report:
    spec: object
    structure: object
    basis_symbols: tuple
    route: str
    agreement: object  # bool when route compares two answers, else None
    warnings: tuple
    ms: int

    def to_json(self):
        return {
            "p": self.spec.p,
            "exponents": list(self.spec.exponents),
            "invariant_factors": [int(d) for d in self.structure.invariant_factors],
            "basis": list(self.basis_symbols),
            "route": self.route,
            "agreement": self.agreement,
            "warnings": list(self.warnings),
            "ms": int(self.ms),
        }


def _group_algebra(spec):
    alg = FiniteAlgebra.from_group_ring(spec)
    gt = tuple(groupring.gtilde(spec, spec.p).coeffs)
    ideal = ideal_closure(alg, [gt])
    return alg, gt, ideal


def _omega_flattener(spec):
    """dmap into the free Omega_A coordinates (t, a) -> t*dim + a."""
    palg = group_ring_presentation(spec)

    def dmap(avec):
        out = []
        for cvec in d_coeffs(palg, tuple(avec)):
            out.extend(cvec)
        return tuple(out)

    return dmap


def lemma_basis_texts(spec, alg, gt):
    """Symbol texts <x_i | G~> of the claimed basis (empty for |G| <= 2)."""
    if spec.order <= 2:
        return ()
    out = []
    for i in range(1, spec.rank + 1):
        xi = tuple(groupring.x_element(spec, spec.p, i).coeffs)
        out.append(f"<{alg.element_text(xi)}|{alg.element_text(gt)}>")
    return tuple(out)


def tensor_route_structure(spec):
    """((G~) (x)_A Omega_A structure, basis bijectivity flag).

    The second component certifies that the rho values of the claimed
    basis symbols <x_i, G~> span the tensor module: rho<x_i, G~> =
    -G~ (x) dx_i = -G~ (x) dg_i, evaluated as pure tensors.
    """
    if spec.order <= 2:
        raise HypothesisError("the tensor description needs |G| > 2")
    alg, gt, ideal = _group_algebra(spec)
    jmod = RealizedModule.from_ideal(ideal, labels=["G~"])
    omega = RealizedModule.free(
        alg, [f"dg{i}" for i in range(1, spec.rank + 1)]
    )
    tens = tensor_over_algebra(jmod, omega)
    dmap = _omega_flattener(spec)
    p = spec.p
    gcoords = ideal.coords(gt)
    vecs = []
    for i in range(1, spec.rank + 1):
        xi = tuple(groupring.x_element(spec, p, i).coeffs)
        v = tens.pure(gcoords, dmap(xi))
        vecs.append([-c % p for c in v])
    bijective = (
        len(tens.labels) == spec.rank
        and rank_mod(vecs, len(tens.labels), p) == spec.rank
    )
    return tens.structure, bijective


def oracle_route(spec, mode="full", budget_pairs=None):
    """(structure, presentation) from the Dennis-Stein presentation."""
    alg, gt, ideal = _group_algebra(spec)
    ctx = ds.SquareZeroContext(alg, ideal)
    pres = ds.build_presentation(ctx, mode=mode, budget_pairs=budget_pairs)
    return pres.structure, pres


def k2_relative_structure(spec, route="both", mode="full", budget_pairs=None):
    t0 = time.monotonic()
    warnings = []
    agreement = None
    if route not in ("tensor", "oracle", "both"):
        raise ValueError(f"unknown route {route!r}")

    tensor_structure = None
    bijective = None
    if route in ("tensor", "both"):
        tensor_structure, bijective = tensor_route_structure(spec)
        if not bijective:
            warnings.append("claimed basis symbols do not span the tensor module")

    oracle_structure = None
    pres = None
    if route in ("oracle", "both"):
        oracle_structure, pres = oracle_route(spec, mode, budget_pairs)

    alg, gt, _ideal = _group_algebra(spec)
    basis = lemma_basis_texts(spec, alg, gt)

    if route == "both":
        agreement = (
            tensor_structure.invariant_factors
            == oracle_structure.invariant_factors
        ) and bool(bijective)
        if agreement and basis:
            coords = []
            for i in range(1, spec.rank + 1):
                xi = tuple(groupring.x_element(spec, spec.p, i).coeffs)
                coords.append(list(pres.symbol_coords(xi, gt)))
            k = len(oracle_structure.invariant_factors)
            agreement = rank_mod(coords, k, spec.p) == spec.rank == k
        if not agreement:
            warnings.append(
                f"tensor gave {tensor_structure}, oracle gave {oracle_structure}"
            )
    structure = oracle_structure if oracle_structure is not None else tensor_structure
    ms = int((time.monotonic() - t0) * 1000)
    return K2Report(
        spec=spec,
        structure=structure,
        basis_symbols=basis,
        route=route,
        agreement=agreement,
        warnings=tuple(warnings),
        ms=ms,
    )


class _ChainQuotient:
    """Composition of quotient projections, duck-typed for omega_of_quotient."""

    __slots__ = ("algebra", "_steps")

    def __init__(self, steps):
        self.algebra = steps[-1].algebra
        self._steps = steps

    def project(self, vec):
        for q in self._steps:
            vec = q.project(vec)
        return tuple(vec)


def default_factor_blocks(spec):
    """One block per generator: b_j = x_j^(q_j - 1), multiplying to G~.

    A rank-1 group contributes a single block, so for |G| > 2 it is split
    as x * x^(q-2) to reach r > 1; any split works because x G~ = 0.
    """
    p = spec.p
    out = []
    for j, q in enumerate(spec.orders, start=1):
        b = groupring.x_element(spec, p, j) ** (q - 1)
        out.append(tuple(b.coeffs))
    if len(out) == 1 and spec.order > 2:
        x = groupring.x_element(spec, p, 1)
        q = spec.orders[0]
        out = [tuple(x.coeffs), tuple((x ** (q - 2)).coeffs)]
    return out


def theorem1_check(spec, i_gens=(), b=None, budget_pairs=None):
    """Replay K2(A/I, J/I) ~ J/I (x)_{A/I} Omega_{A/I} on one instance.

    A = F_p[G]; I is given by generators (default the zero ideal); J =
    (b_1...b_r)A + I for the factor list b (default: one block per group
    generator).  Verifies the hypotheses, computes the Dennis-Stein oracle
    (degrading full -> reduced -> absent on budget), both tensor sides, the
    psi collapse, and the delta-star vanishing.
    """
    t0 = time.monotonic()
    alg = FiniteAlgebra.from_group_ring(spec)
    if b is None:
        b = default_factor_blocks(spec)
    b = [tuple(v) for v in b]
    r = len(b)
    if r <= 1:
        raise HypothesisError("need r > 1 factor elements")

    prod = alg.one()
    for v in b:
        prod = alg.mul(prod, v)
    ideal_i = ideal_closure(alg, [tuple(v) for v in i_gens])
    ideal_j = ideal_closure(alg, [tuple(v) for v in i_gens] + [prod])
    for v in b:
        for w in ideal_j.rows:
            if not ideal_i.contains(alg.mul(v, w)):
                raise HypothesisError(
                    f"factor {alg.element_text(v)} does not carry J into I"
                )

    quot = quotient_algebra(alg, ideal_i)
    bbar = [quot.project(v) for v in b]
    prod_bar = quot.project(prod)
    ideal_bar = ideal_closure(quot.algebra, [prod_bar])
    ctx = ds.SquareZeroContext(quot.algebra, ideal_bar, factors=bbar)

    warnings = []
    oracle_structure = None
    oracle_mode = None
    pres = None
    for mode in ("full", "reduced"):
        try:
            pres = ds.build_presentation(ctx, mode=mode, budget_pairs=budget_pairs)
        except SizeBudgetError:
            continue
        oracle_structure = pres.structure
        oracle_mode = mode
        break
    if oracle_structure is None:
        warnings.append("oracle skipped: presentation budget exceeded")

    # main tensor side, over A/I
    omega_i, dmap_i = omega_of_quotient(spec, quot, [tuple(v) for v in i_gens])
    jmod = RealizedModule.from_ideal(ideal_bar)
    t_main = tensor_over_algebra(jmod, omega_i)

    # intermediate side, over A/J = (A/I)/(J/I)
    quot_j = quotient_algebra(quot.algebra, ideal_bar)
    chain = _ChainQuotient([quot, quot_j])
    omega_j, _dmap_j = omega_of_quotient(
        spec, chain, [tuple(v) for v in i_gens] + [prod]
    )
    jmod_over_aj = module_over_quotient(quot_j, ideal_bar)
    t_mid = tensor_over_algebra(jmod_over_aj, omega_j)

    psi_ok = ds.psi_triviality_check(ctx, presentation=pres)

    def delta_star(u, v):
        return t_main.pure(ideal_bar.coords(v), dmap_i(quot.lift(u)))

    delta_ok = bilinear_map_trivial(delta_star, ideal_bar.rows, ideal_bar.rows)

    structures = [t_main.structure.invariant_factors,
                  t_mid.structure.invariant_factors]
    if oracle_structure is not None:
        structures.append(oracle_structure.invariant_factors)
    agree = all(s == structures[0] for s in structures)

    ms = int((time.monotonic() - t0) * 1000)
    return {
        "p": spec.p,
        "exponents": list(spec.exponents),
        "r": r,
        "factors": [alg.element_text(v) for v in b],
        "oracle_mode": oracle_mode,
        "oracle": _inv(oracle_structure),
        "tensor_main": _inv(t_main.structure),
        "tensor_intermediate": _inv(t_mid.structure),
        "psi_trivial": psi_ok,
        "delta_star_trivial": delta_ok,
        "agree": agree and psi_ok and delta_ok,
        "warnings": warnings,
        "ms": ms,
    }


def _inv(structure):
    if structure is None:
        return None
    return [int(d) for d in structure.invariant_factors]


def rho_welldefined_check(spec, budget_pairs=None):
    """rho kills every enumerated full-mode DS relation row for F_p[G], (G~).

    rho lands in (G~) (x)_{A/J} Omega_{A/J} with J = (G~): the map of the
    exact symbol sequence, built here over the honest quotient.
    """
    alg, gt, ideal = _group_algebra(spec)
    ctx = ds.SquareZeroContext(alg, ideal)
    pres = ds.build_presentation(ctx, mode="full", budget_pairs=budget_pairs)
    quot_j = quotient_algebra(alg, ideal)
    omega_j, dmap_j = omega_of_quotient(spec, quot_j, [gt])
    jmod = module_over_quotient(quot_j, ideal)
    tens = tensor_over_algebra(jmod, omega_j)
    rho = ds.RhoMap(ctx, ideal.coords, dmap_j, tens)
    return rho.vanishes_on_rows(pres), pres, rho


def excision_check(spec, budget_pairs=None):
    """Compare D(Z[G]/I, J/I) with D(F_2[G], (G~)) for elementary abelian G.

    The natural reduction Z[G]/I -> F_2[G] carries J/I onto (G~); the check
    reports both structures, whether they agree, and whether the induced
    map on surviving symbol generators is a certified isomorphism
    (surjective between groups of equal order).
    """
    t0 = time.monotonic()
    lat = lattices.build_lattices(spec)  # ScopeError outside p=2 exponent-1
    rels = lattices.relation_details(lat)
    ring = lattices.quotient_ring(lat, "I")
    mul, add, neg = ring.tables()
    ideal_idx = ring.ideal_class_indices()
    source = ds.TablePresentation(
        ring.size, mul, add, neg, ideal_idx,
        element_text=ring.element_text, budget_pairs=budget_pairs,
    )

    alg, gt, ideal = _group_algebra(spec)
    ctx = ds.SquareZeroContext(alg, ideal)
    target = ds.build_presentation(ctx, mode="full", budget_pairs=budget_pairs)

    src_inv = source.structure.invariant_factors
    tgt_inv = target.structure.invariant_factors
    agree = src_inv == tgt_inv

    # generator-level images under reduction mod 2
    p = spec.p
    images = []
    for gen_x, gen_y in source.surviving_pairs():
        avec = tuple(c % p for c in ring.reps[gen_x])
        bvec = tuple(c % p for c in ring.reps[gen_y])
        images.append(list(target.symbol_coords(avec, bvec)))
    k = len(tgt_inv)
    surjective = rank_mod(images, k, p) == k if k else True
    certified = (
        surjective and source.structure.order() == target.structure.order()
    )

    ms = int((time.monotonic() - t0) * 1000)
    return {
        "p": spec.p,
        "exponents": list(spec.exponents),
        "relation_checks": rels,
        "source_ring_size": ring.size,
        "source": [int(d) for d in src_inv],
        "target": [int(d) for d in tgt_inv],
        "agree": agree,
        "surjection_certified": certified,
        "ok": agree and certified and all(rels.values()),
        "ms": ms,
    }


def cartesian_square(spec):
    """The four corners Z[G]/I, Z[G]/J, F_p[G], F_p[G]/(G~), verified.

    Concrete everywhere for elementary abelian 2-groups within the lattice
    scope; otherwise the F_p corners are concrete and the Z corners are
    reported symbolically.
    """
    t0 = time.monotonic()
    alg, gt, ideal = _group_algebra(spec)
    quot = quotient_algebra(alg, ideal)
    corners = {
        "fp_group_ring": {"description": f"F_{spec.p}[G]", "dim": alg.dim},
        "fp_mod_gtilde": {
            "description": f"F_{spec.p}[G]/(G~)",
            "dim": quot.algebra.dim,
        },
    }
    concrete = spec.p == 2 and all(e == 1 for e in spec.exponents)
    commutes = None
    pullback = None
    if concrete:
        lat = lattices.build_lattices(spec)
        for key, which in (("z_mod_i", "I"), ("z_mod_j", "J")):
            corners[key] = {
                "description": f"Z[G]/{which}",
                "size": lattices.quotient_size(lat, which),
                "additive": lattices.quotient_additive(lat, which).to_json(),
            }
        try:
            ring_i = lattices.quotient_ring(lat, "I")
            ring_j = lattices.quotient_ring(lat, "J")
        except SizeBudgetError:
            ring_i = ring_j = None
        if ring_i is not None:
            commutes, pullback = _square_maps_check(
                spec, ring_i, ring_j, alg, quot
            )
    else:
        note = "maximal order needs cyclotomic integers outside p=2 exponent 1"
        corners["z_mod_i"] = {"description": "Z[G]/I", "symbolic": note}
        corners["z_mod_j"] = {"description": "Z[G]/J", "symbolic": note}
    ms = int((time.monotonic() - t0) * 1000)
    return {
        "p": spec.p,
        "exponents": list(spec.exponents),
        "concrete": concrete,
        "corners": corners,
        "commutes": commutes,
        "pullback": pullback,
        "ms": ms,
    }


def _square_maps_check(spec, ring_i, ring_j, alg, quot):
    """Elementwise commutativity and the fiber-product property."""
    p = spec.p

    def to_fp(rep):
        return tuple(c % p for c in rep)

    commutes = True
    for rep in ring_i.reps:
        via_j = ring_j.index_of(list(rep))
        right_path = quot.project(to_fp(ring_j.reps[via_j]))
        down_path = quot.project(to_fp(rep))
        if right_path != down_path:
            commutes = False
            break

    # Z[G]/I -> Z[G]/J x F_p[G] must be injective with image exactly the
    # pairs agreeing in F_p[G]/(G~) -- |matching pairs| == |Z[G]/I| settles it
    seen = set()
    for rep in ring_i.reps:
        pair = (ring_j.index_of(list(rep)), to_fp(rep))
        if pair in seen:
            return commutes, False
        seen.add(pair)
    corner_count = {}
    for v in alg.elements():
        key = quot.project(v)
        corner_count[key] = corner_count.get(key, 0) + 1
    matching = sum(
        corner_count.get(quot.project(to_fp(ring_j.reps[jx])), 0)
        for jx in range(ring_j.size)
    )
    pullback = commutes and matching == ring_i.size
    return commutes, pullback
